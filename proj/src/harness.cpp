#include "lambdalin/harness.hpp"

#include "lambdalin/parser.hpp"
#include "lambdalin/stdlib.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace lambdalin {

std::vector<Scalar> GenConfig::default_pool() {
    return {Scalar::zero(),          Scalar::one(),    Scalar(-1), Scalar(Rational(1, 2)),
            Scalar(Rational(0), Rational(1, 2), Rational(0), Rational(0)),  // sqrt2/2
            Scalar::imag_unit(),     Scalar::omega8()};
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class Generator {
public:
    Generator(const GenConfig& cfg) : cfg_(cfg), rng_(splitmix64(cfg.seed)) {
        pool_ = cfg.scalar_pool.empty() ? GenConfig::default_pool() : cfg.scalar_pool;
    }

    TermPtr gen(int depth) {
        if (depth <= 1) return leaf();
        switch (pick_kind()) {
            case TermKind::Variable:
                return var_or_leaf();
            case TermKind::Lambda: {
                binders_.push_back("x" + std::to_string(next_binder_++));
                TermPtr body = gen(depth - 1);
                TermPtr out = lambda(binders_.back(), std::move(body));
                binders_.pop_back();
                return out;
            }
            case TermKind::Apply: {
                TermPtr f = gen(depth - 1);
                TermPtr a = gen(depth - 1);
                // Direct self-application is the one pattern that routinely
                // makes random terms loop; keep it rare so most samples
                // normalize.
                if (f->kind() == TermKind::Variable && syntactic_equal(f, a) && coin(0.9))
                    a = leaf();
                return apply(std::move(f), std::move(a));
            }
            case TermKind::Zero:
                return zero_vector();
            case TermKind::Scaled:
                return scaled(pool_[rng_() % pool_.size()], gen(depth - 1));
            case TermKind::Sum: {
                const int n = 2 + static_cast<int>(rng_() % 2);
                std::vector<TermPtr> kids;
                for (int k = 0; k < n; ++k) kids.push_back(gen(depth - 1));
                return sum(std::move(kids));
            }
        }
        return leaf();
    }

private:
    const GenConfig& cfg_;
    std::mt19937_64 rng_;
    std::vector<Scalar> pool_;
    std::vector<std::string> binders_;
    int next_binder_ = 0;

    bool coin(double p) { return std::uniform_real_distribution<double>(0, 1)(rng_) < p; }

    TermKind pick_kind() {
        const double weights[] = {cfg_.w_zero,   cfg_.w_variable, cfg_.w_lambda,
                                  cfg_.w_apply,  cfg_.w_scaled,   cfg_.w_sum};
        const TermKind kinds[] = {TermKind::Zero,   TermKind::Variable, TermKind::Lambda,
                                  TermKind::Apply,  TermKind::Scaled,   TermKind::Sum};
        double total = 0;
        for (double w : weights) total += w;
        double roll = std::uniform_real_distribution<double>(0, total)(rng_);
        for (int k = 0; k < 6; ++k) {
            roll -= weights[k];
            if (roll <= 0) return kinds[k];
        }
        return TermKind::Zero;
    }

    TermPtr var_or_leaf() {
        if (!binders_.empty()) return variable(binders_[rng_() % binders_.size()]);
        if (!cfg_.closed_only) return variable(std::string(1, 'a' + rng_() % 3));
        return leaf_closed();
    }

    TermPtr leaf() {
        if (!binders_.empty() && coin(0.5)) return variable(binders_[rng_() % binders_.size()]);
        if (!cfg_.closed_only && coin(0.3)) return variable(std::string(1, 'a' + rng_() % 3));
        return leaf_closed();
    }

    TermPtr leaf_closed() {
        switch (rng_() % 3) {
            case 0: return zero_vector();
            case 1: return prelude::bool_true();
            default: {
                const std::string n = "x" + std::to_string(next_binder_++);
                return lambda(n, variable(n));
            }
        }
    }
};

}  // namespace

TermPtr generate_term(const GenConfig& cfg) {
    if (cfg.max_depth < 1) throw std::invalid_argument("max_depth must be at least 1");
    const double weights[] = {cfg.w_variable, cfg.w_lambda, cfg.w_apply,
                              cfg.w_zero,     cfg.w_scaled, cfg.w_sum};
    for (double w : weights)
        if (!(w > 0)) throw std::invalid_argument("constructor weights must be positive");
    return Generator(cfg).gen(cfg.max_depth);
}

namespace {

struct RunResults {
    std::vector<NormalizeOutcome> outcomes;
    bool disagree = false;
};

RunResults run_all(const TermPtr& t, const ConfluenceConfig& cfg) {
    RunResults r;
    for (std::uint64_t seed : cfg.seeds)
        r.outcomes.push_back(
            normalize_with_strategy(t, cfg.fuel, Strategy::random_seeded(seed), cfg.max_size));
    const TermPtr* first_normal = nullptr;
    for (const auto& o : r.outcomes) {
        if (o.status != NormalizeStatus::Normal) continue;
        if (!first_normal) {
            first_normal = &o.term;
        } else if (!alpha_ac_equal(*first_normal, o.term)) {
            r.disagree = true;
        }
    }
    return r;
}

}  // namespace

TermPtr shrink_counterexample(TermPtr t, const std::function<bool(const TermPtr&)>& failing) {
    bool progress = true;
    while (progress) {
        progress = false;
        std::vector<TermPtr> candidates(t->children().begin(), t->children().end());
        if (t->kind() == TermKind::Sum && t->addends().size() > 2) {
            for (std::size_t skip = 0; skip < t->addends().size(); ++skip) {
                std::vector<TermPtr> rest;
                for (std::size_t k = 0; k < t->addends().size(); ++k)
                    if (k != skip) rest.push_back(t->addends()[k]);
                candidates.push_back(sum(std::move(rest)));
            }
        }
        for (const auto& c : candidates) {
            if (failing(c)) {
                t = c;
                progress = true;
                break;
            }
        }
    }
    return t;
}

ConfluenceReport check_confluence_sample(const ConfluenceConfig& cfg) {
    if (cfg.seeds.size() < 2)
        throw std::invalid_argument("confluence sampling needs at least two seeds");
    ConfluenceReport report;
    for (long id = 0; id < cfg.samples; ++id) {
        GenConfig g = cfg.gen;
        g.seed = splitmix64(cfg.gen.seed) ^ splitmix64(static_cast<std::uint64_t>(id) + 1);
        TermPtr term = generate_term(g);
        RunResults runs = run_all(term, cfg);

        ConfluenceSample sample;
        sample.id = id;
        sample.term = term;
        sample.all_normal = true;
        for (const auto& o : runs.outcomes) {
            sample.statuses.push_back(o.status);
            sample.steps.push_back(o.steps);
            if (o.status == NormalizeStatus::Normal) {
                sample.any_normal = true;
                if (cfg.check_shape && o.term->closed() && !matches_closed_normal_shape(o.term))
                    sample.shape_ok = false;
            } else {
                sample.all_normal = false;
            }
        }
        sample.agreed = !runs.disagree;

        ++report.total;
        if (sample.any_normal) ++report.normalized;
        if (sample.all_normal) ++report.jointly_normal;
        if (!sample.shape_ok) ++report.shape_violations;
        if (runs.disagree) {
            ++report.disagreed;
            auto still_failing = [&](const TermPtr& cand) { return run_all(cand, cfg).disagree; };
            TermPtr minimized = shrink_counterexample(term, still_failing);
            ConfluenceFailure failure{id, minimized, term, {}};
            for (const auto& o : run_all(minimized, cfg).outcomes)
                if (o.status == NormalizeStatus::Normal)
                    failure.normal_forms.push_back(print_term(o.term));
            report.failures.push_back(std::move(failure));
        } else {
            ++report.agreed;
        }
        if (cfg.keep_samples) report.samples.push_back(std::move(sample));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Critical-pair joinability cases.
// ---------------------------------------------------------------------------

namespace {

TermPtr sc(const Scalar& a, const TermPtr& t) { return scaled(a, t); }
TermPtr sum2(const TermPtr& a, const TermPtr& b) { return sum({a, b}); }
TermPtr sum3(const TermPtr& a, const TermPtr& b, const TermPtr& c) { return sum({a, b, c}); }

}  // namespace

std::vector<PairCase> critical_pair_cases() {
    const TermPtr u = prelude::identity();
    const TermPtr v = prelude::bool_true();
    const TermPtr w = prelude::bool_false();
    const TermPtr s = prelude::bool_false();  // spectator addend
    const TermPtr k3 = lambda("a", lambda("b", lambda("c", variable("a"))));
    const TermPtr zv = zero_vector();
    const Scalar al(Rational(1, 2));
    const Scalar be(Rational(0), Rational(1, 2), Rational(0), Rational(0));  // sqrt2/2
    const Scalar ga = Scalar::imag_unit();
    const Scalar one = Scalar::one();
    const Scalar two = one + one;
    const TermPtr usum = sum2(v, u);     // closed normal two-element sum
    const TermPtr wsum = sum2(w, k3);    // a second one

    std::vector<PairCase> cases;
    auto add = [&](const char* name, TermPtr anc, TermPtr left, TermPtr right) {
        cases.push_back({name, std::move(anc), std::move(left), std::move(right)});
    };

    // Factoring against the elementary rules and against itself.
    add("F-Pair-1", sum2(zv, zv), sc(two, zv), zv);
    add("F-Pair-2", sc(al, sum2(sc(be, u), sc(ga, u))),
        sum2(sc(al, sc(be, u)), sc(al, sc(ga, u))), sc(al, sc(be + ga, u)));
    add("F-Pair-3", sc(al, sum3(sc(be, u), sc(ga, u), s)),
        sum3(sc(al, sc(be, u)), sc(al, sc(ga, u)), sc(al, s)),
        sc(al, sum2(sc(be + ga, u), s)));
    add("F-Pair-5", sc(al, sum2(sc(be, u), u)), sum2(sc(al, sc(be, u)), sc(al, u)),
        sc(al, sc(be + one, u)));
    add("F-Pair-9", sc(al, sum2(u, u)), sum2(sc(al, u), sc(al, u)), sc(al, sc(two, u)));
    add("F-Pair-10", sc(al, sum3(u, u, s)), sum3(sc(al, u), sc(al, u), sc(al, s)),
        sc(al, sum2(sc(two, u), s)));
    add("F-Pair-12", sum2(sc(al, u), sc(al, u)), sc(al + al, u), sc(two, sc(al, u)));
    add("F-Pair-13", sum3(sc(al, u), sc(al, u), s), sum2(sc(al + al, u), s),
        sum2(sc(two, sc(al, u)), s));
    add("F-Pair-14", sum3(sc(al, u), sc(be, u), sc(ga, u)), sum2(sc(al + be, u), sc(ga, u)),
        sum2(sc(al + ga, u), sc(be, u)));
    add("F-Pair-16", sum3(sc(al, u), sc(be, u), u), sum2(sc(al + be, u), u),
        sum2(sc(al + one, u), sc(be, u)));
    add("F-Pair-18", sum3(sc(al, u), sc(al, u), sc(be, u)),
        sum2(sc(two, sc(al, u)), sc(be, u)), sum2(sc(al + be, u), sc(al, u)));
    add("F-Pair-20", sum3(sc(al, u), sc(al, u), u), sum2(sc(two, sc(al, u)), u),
        sum2(sc(al + one, u), sc(al, u)));
    add("F-Pair-22", sum3(sc(al, u), u, u), sum2(sc(al + one, u), u),
        sum2(sc(two, u), sc(al, u)));
    add("F-Pair-24", sum2(sc(Scalar::zero(), u), sc(al, u)), sum2(zv, sc(al, u)),
        sc(Scalar::zero() + al, u));
    add("F-Pair-26", sum2(sc(Scalar::zero(), u), u), sum2(zv, u), sc(one, u));
    add("F-Pair-28", sum2(sc(al, u), sc(one, u)), sum2(sc(al, u), u), sc(al + one, u));
    add("F-Pair-30", sum2(sc(one, u), u), sum2(u, u), sc(two, u));
    add("F-Pair-32", sum2(zv, sc(al, zv)), sum2(zv, zv), sc(one + al, zv));
    add("F-Pair-34", sum2(sc(al, zv), sc(be, zv)), sum2(zv, sc(be, zv)), sc(al + be, zv));
    add("F-Pair-36", sum2(sc(al, sc(ga, u)), sc(be, sc(ga, u))),
        sum2(sc(al * ga, u), sc(be, sc(ga, u))), sc(al + be, sc(ga, u)));
    add("F-Pair-38", sum2(sc(be, u), sc(al, sc(be, u))), sum2(sc(be, u), sc(al * be, u)),
        sc(one + al, sc(be, u)));
    add("F-Pair-40", sum2(sc(al, usum), sc(be, usum)),
        sum3(sc(al, v), sc(al, u), sc(be, usum)), sc(al + be, usum));
    add("F-Pair-42", sum3(v, u, sc(al, usum)), sum({v, u, sc(al, v), sc(al, u)}),
        sc(al + one, usum));

    // Application rules against elementary/factoring rules and one another.
    add("A-Pair-1", apply(sc(Scalar::zero(), u), v), apply(zv, v),
        sc(Scalar::zero(), apply(u, v)));
    add("A-Pair-2", apply(sc(one, u), v), apply(u, v), sc(one, apply(u, v)));
    add("A-Pair-3", apply(sc(al, zv), v), apply(zv, v), sc(al, apply(zv, v)));
    add("A-Pair-4", apply(sc(al, sc(be, u)), v), apply(sc(al * be, u), v),
        sc(al, apply(sc(be, u), v)));
    add("A-Pair-5", apply(sc(al, usum), w), apply(sum2(sc(al, v), sc(al, u)), w),
        sc(al, apply(usum, w)));
    add("A-Pair-6", apply(w, sc(al, sc(be, u))), apply(w, sc(al * be, u)),
        sc(al, apply(w, sc(be, u))));
    add("A-Pair-7", apply(w, sc(al, usum)), apply(w, sum2(sc(al, v), sc(al, u))),
        sc(al, apply(w, usum)));
    add("A-Pair-11", apply(usum, wsum), sum2(apply(v, wsum), apply(u, wsum)),
        sum2(apply(usum, w), apply(usum, k3)));
    add("A-Pair-12", apply(usum, sc(al, w)), sum2(apply(v, sc(al, w)), apply(u, sc(al, w))),
        sc(al, apply(usum, w)));
    add("A-Pair-13", apply(usum, zv), zv, sum2(apply(v, zv), apply(u, zv)));
    add("A-Pair-14", apply(sc(al, u), usum), sc(al, apply(u, usum)),
        sum2(apply(sc(al, u), v), apply(sc(al, u), u)));
    add("A-Pair-15", apply(sc(al, u), sc(be, v)), sc(al, apply(u, sc(be, v))),
        sc(be, apply(sc(al, u), v)));
    add("A-Pair-16", apply(sc(al, u), zv), sc(al, apply(u, zv)), zv);
    add("A-Pair-17", apply(zv, usum), zv, sum2(apply(zv, v), apply(zv, u)));
    add("A-Pair-18", apply(zv, sc(al, u)), zv, sc(al, apply(zv, u)));
    add("A-Pair-19", apply(zv, zv), zv, zv);  // both routes coincide
    return cases;
}

SuiteReport critical_pair_suite(long fuel) {
    SuiteReport report;
    for (const PairCase& c : critical_pair_cases()) {
        const bool coincident = alpha_ac_equal(c.left, c.right);
        const bool vacuous = coincident && c.name != std::string("A-Pair-19");
        NormalizeOutcome lo = normalize(c.left, fuel);
        NormalizeOutcome ro = normalize(c.right, fuel);
        const bool joined = lo.status == NormalizeStatus::Normal &&
                            ro.status == NormalizeStatus::Normal &&
                            alpha_ac_equal(lo.term, ro.term);
        const bool pass = joined && !vacuous;
        report.lines.push_back(c.name + "\t" + (pass ? "pass" : "FAIL") + "\tjoint=" +
                               (joined ? print_term(lo.term) : "<none>"));
        pass ? ++report.passed : ++report.failed;
    }
    return report;
}

// ---------------------------------------------------------------------------
// Restriction suite: the reductions the side conditions must forbid.
// ---------------------------------------------------------------------------

namespace {

bool has_rule_at(const std::vector<Redex>& redexes, RuleGroup group, const std::vector<int>& path) {
    return std::any_of(redexes.begin(), redexes.end(), [&](const Redex& r) {
        return rule_group(r.rule) == group && r.path == path;
    });
}

bool has_rule(const std::vector<Redex>& redexes, RuleId id, const std::vector<int>& path) {
    return std::any_of(redexes.begin(), redexes.end(),
                       [&](const Redex& r) { return r.rule == id && r.path == path; });
}

SuiteReport restriction_suite_impl(long fuel, int seeds, bool unrestricted) {
    auto enumerate = unrestricted ? unrestricted_factoring::enumerate_redexes : enumerate_redexes;
    auto run = unrestricted ? unrestricted_factoring::normalize_with_strategy
                            : normalize_with_strategy;

    SuiteReport report;
    auto check = [&](const std::string& name, bool pass, const std::string& detail) {
        report.lines.push_back(name + "\t" + (pass ? "pass" : "FAIL") + "\t" + detail);
        pass ? ++report.passed : ++report.failed;
    };

    const TermPtr b = prelude::bool_true();
    const TermPtr yb = apply(prelude::y_combinator(), b);
    const TermPtr fls = prelude::bool_false();
    const Scalar al(Rational(1, 2));

    // Factoring a difference of non-normalizing copies.
    const TermPtr ydiff = sum2(yb, sc(Scalar(-1), yb));
    const TermPtr ydiff1 = sum2(sc(Scalar::one(), yb), sc(Scalar(-1), yb));
    check("no-factor-on-reducible", !has_rule_at(enumerate(ydiff), RuleGroup::F, {}),
          print_term(ydiff));
    check("no-factor-on-reducible-weighted", !has_rule_at(enumerate(ydiff1), RuleGroup::F, {}),
          print_term(ydiff1));
    bool reached_zero = false;
    long max_steps = 0;
    for (int s = 1; s <= seeds; ++s) {
        NormalizeOutcome o = run(ydiff, fuel, Strategy::random_seeded(s), 0);
        max_steps = std::max(max_steps, o.steps);
        if (alpha_ac_equal(o.term, zero_vector())) reached_zero = true;
    }
    check("difference-of-divergent-never-null", !reached_zero,
          "steps<=" + std::to_string(max_steps));

    // Beta needs a base argument.
    const TermPtr dup = lambda("x", apply(variable("x"), variable("x")));
    const TermPtr beta_sum = apply(dup, sum2(prelude::bool_true(), fls));
    check("no-beta-on-superposition", !has_rule(enumerate(beta_sum), RuleId::BBeta, {}),
          print_term(beta_sum));
    check("superposition-distributes-instead",
          has_rule(enumerate(beta_sum), RuleId::ADistAppRight, {}), print_term(beta_sum));

    // Factoring needs a closed shared term.
    const TermPtr open_diff =
        lambda("x", sum2(apply(variable("x"), fls), sc(Scalar(-1), apply(variable("x"), fls))));
    check("no-factor-on-open", !has_rule_at(enumerate(open_diff->body()), RuleGroup::F, {}),
          print_term(open_diff->body()));
    const TermPtr hidden = apply(open_diff, lambda("y", yb));
    reached_zero = false;
    for (int s = 1; s <= seeds; ++s) {
        NormalizeOutcome o = run(hidden, fuel, Strategy::random_seeded(s), 0);
        if (alpha_ac_equal(o.term, zero_vector())) reached_zero = true;
    }
    check("hidden-divergent-difference-never-null", !reached_zero, print_term(hidden));

    // Application distributes only over closed normal sums.
    const TermPtr open_sum_app = apply(sum2(variable("a"), variable("b")), fls);
    check("no-dist-over-open-sum", !has_rule(enumerate(open_sum_app), RuleId::ADistAppLeft, {}),
          print_term(open_sum_app));
    const TermPtr xf = lambda("x", apply(variable("x"), fls));
    const TermPtr reducible_sum_app = apply(sum2(xf, sc(Scalar(-1), xf)), lambda("y", yb));
    check("no-dist-over-reducible-sum",
          !has_rule(enumerate(reducible_sum_app), RuleId::ADistAppLeft, {}),
          print_term(reducible_sum_app));

    // Weights move out of an application only around closed normal terms.
    const TermPtr open_scaled_fun = apply(sc(al, variable("a")), fls);
    check("no-pull-weight-from-open-fun",
          !has_rule(enumerate(open_scaled_fun), RuleId::AScaleAppLeft, {}),
          print_term(open_scaled_fun));
    const TermPtr open_scaled_arg = apply(fls, sc(al, variable("a")));
    check("no-pull-weight-from-open-arg",
          !has_rule(enumerate(open_scaled_arg), RuleId::AScaleAppRight, {}),
          print_term(open_scaled_arg));
    const TermPtr reducible_scaled = apply(sc(al, yb), fls);
    check("no-pull-weight-from-reducible",
          !has_rule(enumerate(reducible_scaled), RuleId::AScaleAppLeft, {}),
          print_term(reducible_scaled));

    return report;
}

}  // namespace

SuiteReport restriction_suite(long fuel, int seeds) {
    return restriction_suite_impl(fuel, seeds, false);
}

SuiteReport restriction_suite_unrestricted(long fuel, int seeds) {
    return restriction_suite_impl(fuel, seeds, true);
}

}  // namespace lambdalin
