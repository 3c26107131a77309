#include "lambdalin/rewrite.hpp"

#include <algorithm>
#include <array>
#include <random>

namespace lambdalin {

namespace {

struct EngineOptions {
    bool unrestricted_factoring = false;
    bool use_cache = true;
};

constexpr EngineOptions kDefault{};
constexpr EngineOptions kUnrestricted{.unrestricted_factoring = true, .use_cache = false};

const TermPtr& strip_weight(const TermPtr& t) {
    return t->kind() == TermKind::Scaled ? t->body() : t;
}

bool is_normal_impl(const TermPtr& t, const EngineOptions& opts);

// Side condition shared by the factoring rules and the application rules:
// the designated subterm must be closed and itself normal.
bool closed_normal(const TermPtr& t, const EngineOptions& opts) {
    return t->closed() && is_normal_impl(t, opts);
}

// True iff some rule matches at this node (children are not inspected for
// their own redexes here). Conditions look only at strict subterms, so the
// mutual recursion with is_normal_impl is well-founded.
bool redex_at_node(const TermPtr& t, const EngineOptions& opts) {
    switch (t->kind()) {
        case TermKind::Sum: {
            const auto& kids = t->addends();
            // A plain 0v addend sorts first.
            if (kids.front()->kind() == TermKind::Zero) return true;
            // Addends with alpha-equal underlying terms are adjacent.
            for (std::size_t i = 0; i + 1 < kids.size(); ++i) {
                if (!alpha_ac_equal(strip_weight(kids[i]), strip_weight(kids[i + 1]))) continue;
                if (opts.unrestricted_factoring || closed_normal(strip_weight(kids[i]), opts))
                    return true;
            }
            return false;
        }
        case TermKind::Scaled: {
            if (t->factor().is_zero() || t->factor().is_one()) return true;
            const TermKind bk = t->body()->kind();
            return bk == TermKind::Zero || bk == TermKind::Scaled || bk == TermKind::Sum;
        }
        case TermKind::Apply: {
            const TermPtr& f = t->fun();
            const TermPtr& a = t->arg();
            if (f->kind() == TermKind::Zero || a->kind() == TermKind::Zero) return true;
            if (f->kind() == TermKind::Sum && closed_normal(f, opts)) return true;
            if (a->kind() == TermKind::Sum && closed_normal(a, opts)) return true;
            if (f->kind() == TermKind::Scaled && closed_normal(f->body(), opts)) return true;
            if (a->kind() == TermKind::Scaled && closed_normal(a->body(), opts)) return true;
            if (f->kind() == TermKind::Lambda && is_base(a)) return true;
            return false;
        }
        default:
            return false;
    }
}

bool is_normal_impl(const TermPtr& t, const EngineOptions& opts) {
    if (opts.use_cache) {
        const int cached = t->normal_flag();
        if (cached >= 0) return cached == 1;
    }
    bool normal = true;
    for (const auto& kid : t->children()) {
        if (!is_normal_impl(kid, opts)) {
            normal = false;
            break;
        }
    }
    if (normal) normal = !redex_at_node(t, opts);
    if (opts.use_cache) t->set_normal_flag(normal);
    return normal;
}

void collect_redexes(const TermPtr& t, const EngineOptions& opts, std::vector<int>& path,
                     std::vector<Redex>& out) {
    switch (t->kind()) {
        case TermKind::Sum: {
            const auto& kids = t->addends();
            for (std::size_t i = 0; i < kids.size(); ++i) {
                if (kids[i]->kind() == TermKind::Zero) {
                    out.push_back({path, RuleId::EPlus0});
                    break;
                }
            }
            // Factoring pairs. Addends with alpha-equal underlying terms sit
            // in contiguous runs, which covers every pattern except a weight
            // stack a.(b.u) factoring against its own b.u occurrence; those
            // are picked up by the cross-run scan below. Patterns overlap: a
            // pair of equal weighted addends is both a two-weight instance
            // and a plain duplicate.
            auto factor_ok = [&](const TermPtr& u) {
                return opts.unrestricted_factoring || closed_normal(u, opts);
            };
            std::size_t lo = 0;
            while (lo < kids.size()) {
                std::size_t hi = lo + 1;
                while (hi < kids.size() &&
                       alpha_ac_equal(strip_weight(kids[lo]), strip_weight(kids[hi])))
                    ++hi;
                if (hi - lo >= 2) {
                    const bool shared_ok = factor_ok(strip_weight(kids[lo]));
                    for (std::size_t i = lo; i < hi; ++i) {
                        for (std::size_t j = i + 1; j < hi; ++j) {
                            const bool si = kids[i]->kind() == TermKind::Scaled;
                            const bool sj = kids[j]->kind() == TermKind::Scaled;
                            const int ia = static_cast<int>(i);
                            const int ib = static_cast<int>(j);
                            if (si && sj) {
                                if (shared_ok)
                                    out.push_back({path, RuleId::FFactorBoth, ia, ib});
                                if (alpha_ac_equal(kids[i], kids[j]) && factor_ok(kids[i]))
                                    out.push_back({path, RuleId::FFactorNone, ia, ib});
                            } else if (si != sj) {
                                if (shared_ok) out.push_back({path, RuleId::FFactorOne, ia, ib});
                            } else if (shared_ok) {
                                out.push_back({path, RuleId::FFactorNone, ia, ib});
                            }
                        }
                    }
                }
                lo = hi;
            }
            for (std::size_t i = 0; i < kids.size(); ++i) {
                if (kids[i]->kind() != TermKind::Scaled ||
                    kids[i]->body()->kind() != TermKind::Scaled)
                    continue;
                for (std::size_t j = 0; j < kids.size(); ++j) {
                    if (j == i || !alpha_ac_equal(kids[j], kids[i]->body())) continue;
                    if (!factor_ok(kids[j])) continue;
                    out.push_back({path, RuleId::FFactorOne, static_cast<int>(std::min(i, j)),
                                   static_cast<int>(std::max(i, j))});
                }
            }
            for (std::size_t i = 0; i < kids.size(); ++i) {
                path.push_back(static_cast<int>(i));
                collect_redexes(kids[i], opts, path, out);
                path.pop_back();
            }
            return;
        }
        case TermKind::Scaled: {
            if (t->factor().is_zero()) out.push_back({path, RuleId::EScale0});
            if (t->factor().is_one()) out.push_back({path, RuleId::EScale1});
            switch (t->body()->kind()) {
                case TermKind::Zero: out.push_back({path, RuleId::EScaleZeroVec}); break;
                case TermKind::Scaled: out.push_back({path, RuleId::EScaleScale}); break;
                case TermKind::Sum: out.push_back({path, RuleId::EScaleSum}); break;
                default: break;
            }
            path.push_back(0);
            collect_redexes(t->body(), opts, path, out);
            path.pop_back();
            return;
        }
        case TermKind::Apply: {
            const TermPtr& f = t->fun();
            const TermPtr& a = t->arg();
            if (f->kind() == TermKind::Zero) out.push_back({path, RuleId::AZeroAppLeft});
            if (a->kind() == TermKind::Zero) out.push_back({path, RuleId::AZeroAppRight});
            if (f->kind() == TermKind::Sum && closed_normal(f, opts))
                out.push_back({path, RuleId::ADistAppLeft});
            if (a->kind() == TermKind::Sum && closed_normal(a, opts))
                out.push_back({path, RuleId::ADistAppRight});
            if (f->kind() == TermKind::Scaled && closed_normal(f->body(), opts))
                out.push_back({path, RuleId::AScaleAppLeft});
            if (a->kind() == TermKind::Scaled && closed_normal(a->body(), opts))
                out.push_back({path, RuleId::AScaleAppRight});
            if (f->kind() == TermKind::Lambda && is_base(a)) out.push_back({path, RuleId::BBeta});
            path.push_back(0);
            collect_redexes(f, opts, path, out);
            path.pop_back();
            path.push_back(1);
            collect_redexes(a, opts, path, out);
            path.pop_back();
            return;
        }
        case TermKind::Lambda: {
            path.push_back(0);
            collect_redexes(t->body(), opts, path, out);
            path.pop_back();
            return;
        }
        default:
            return;
    }
}

// Pre-order on positions (leftmost-outermost), then E < F < A < B at the
// same position. Deterministic normalization always contracts the front of
// this list; an outermost pick is what keeps fixpoint applications growing
// as a visible series of addends instead of digging below the binder.
bool redex_order(const Redex& x, const Redex& y) {
    if (x.path != y.path) return x.path < y.path;
    const auto gx = static_cast<int>(rule_group(x.rule));
    const auto gy = static_cast<int>(rule_group(y.rule));
    if (gx != gy) return gx < gy;
    if (x.rule != y.rule) return x.rule < y.rule;
    if (x.addend_a != y.addend_a) return x.addend_a < y.addend_a;
    return x.addend_b < y.addend_b;
}

std::vector<Redex> enumerate_impl(const TermPtr& t, const EngineOptions& opts) {
    std::vector<Redex> out;
    std::vector<int> path;
    collect_redexes(t, opts, path, out);
    std::sort(out.begin(), out.end(), redex_order);
    return out;
}

[[noreturn]] void mismatch(const char* what) {
    throw RedexMismatch(std::string("redex does not match term: ") + what);
}

TermPtr contract(const TermPtr& t, const Redex& r) {
    switch (r.rule) {
        case RuleId::EPlus0: {
            if (t->kind() != TermKind::Sum) mismatch("sum expected");
            std::vector<TermPtr> kids;
            bool dropped = false;
            for (const auto& kid : t->addends()) {
                if (!dropped && kid->kind() == TermKind::Zero) {
                    dropped = true;
                    continue;
                }
                kids.push_back(kid);
            }
            if (!dropped) mismatch("no null-vector addend");
            return sum(std::move(kids));
        }
        case RuleId::EScale0:
            if (t->kind() != TermKind::Scaled || !t->factor().is_zero()) mismatch("0-weight");
            return zero_vector();
        case RuleId::EScale1:
            if (t->kind() != TermKind::Scaled || !t->factor().is_one()) mismatch("1-weight");
            return t->body();
        case RuleId::EScaleZeroVec:
            if (t->kind() != TermKind::Scaled || t->body()->kind() != TermKind::Zero)
                mismatch("weighted null vector");
            return zero_vector();
        case RuleId::EScaleScale:
            if (t->kind() != TermKind::Scaled || t->body()->kind() != TermKind::Scaled)
                mismatch("nested weight");
            return scaled(t->factor() * t->body()->factor(), t->body()->body());
        case RuleId::EScaleSum: {
            if (t->kind() != TermKind::Scaled || t->body()->kind() != TermKind::Sum)
                mismatch("weighted sum");
            std::vector<TermPtr> kids;
            kids.reserve(t->body()->addends().size());
            for (const auto& kid : t->body()->addends()) kids.push_back(scaled(t->factor(), kid));
            return sum(std::move(kids));
        }
        case RuleId::FFactorBoth:
        case RuleId::FFactorOne:
        case RuleId::FFactorNone: {
            if (t->kind() != TermKind::Sum) mismatch("sum expected");
            const auto& kids = t->addends();
            const std::size_t ia = static_cast<std::size_t>(r.addend_a);
            const std::size_t ib = static_cast<std::size_t>(r.addend_b);
            if (r.addend_a < 0 || ib <= ia || ib >= kids.size()) mismatch("addend pair");
            const TermPtr& pa = kids[ia];
            const TermPtr& pb = kids[ib];
            const bool sa = pa->kind() == TermKind::Scaled;
            const bool sb = pb->kind() == TermKind::Scaled;
            Scalar weight;
            TermPtr shared;
            if (r.rule == RuleId::FFactorBoth) {
                if (!sa || !sb || !alpha_ac_equal(pa->body(), pb->body()))
                    mismatch("two weights on one term expected");
                weight = pa->factor() + pb->factor();
                shared = pa->body();
            } else if (r.rule == RuleId::FFactorOne) {
                if (sa && alpha_ac_equal(pa->body(), pb)) {
                    weight = pa->factor() + Scalar::one();
                    shared = pb;
                } else if (sb && alpha_ac_equal(pb->body(), pa)) {
                    weight = pb->factor() + Scalar::one();
                    shared = pa;
                } else {
                    mismatch("weighted/unweighted occurrence pair expected");
                }
            } else {
                if (!alpha_ac_equal(pa, pb)) mismatch("duplicate addends expected");
                weight = Scalar::one() + Scalar::one();
                shared = pa;
            }
            std::vector<TermPtr> rest;
            rest.reserve(kids.size() - 1);
            for (std::size_t k = 0; k < kids.size(); ++k)
                if (k != ia && k != ib) rest.push_back(kids[k]);
            rest.push_back(scaled(std::move(weight), shared));
            return sum(std::move(rest));
        }
        case RuleId::ADistAppLeft: {
            if (t->kind() != TermKind::Apply || t->fun()->kind() != TermKind::Sum)
                mismatch("sum in function position");
            std::vector<TermPtr> kids;
            for (const auto& u : t->fun()->addends()) kids.push_back(apply(u, t->arg()));
            return sum(std::move(kids));
        }
        case RuleId::ADistAppRight: {
            if (t->kind() != TermKind::Apply || t->arg()->kind() != TermKind::Sum)
                mismatch("sum in argument position");
            std::vector<TermPtr> kids;
            for (const auto& u : t->arg()->addends()) kids.push_back(apply(t->fun(), u));
            return sum(std::move(kids));
        }
        case RuleId::AScaleAppLeft:
            if (t->kind() != TermKind::Apply || t->fun()->kind() != TermKind::Scaled)
                mismatch("weight in function position");
            return scaled(t->fun()->factor(), apply(t->fun()->body(), t->arg()));
        case RuleId::AScaleAppRight:
            if (t->kind() != TermKind::Apply || t->arg()->kind() != TermKind::Scaled)
                mismatch("weight in argument position");
            return scaled(t->arg()->factor(), apply(t->fun(), t->arg()->body()));
        case RuleId::AZeroAppLeft:
            if (t->kind() != TermKind::Apply || t->fun()->kind() != TermKind::Zero)
                mismatch("null vector in function position");
            return zero_vector();
        case RuleId::AZeroAppRight:
            if (t->kind() != TermKind::Apply || t->arg()->kind() != TermKind::Zero)
                mismatch("null vector in argument position");
            return zero_vector();
        case RuleId::BBeta:
            if (t->kind() != TermKind::Apply || t->fun()->kind() != TermKind::Lambda ||
                !is_base(t->arg()))
                mismatch("beta redex");
            return substitute(t->fun()->body(), t->fun()->name(), t->arg());
    }
    mismatch("unknown rule");
}

TermPtr apply_at(const TermPtr& t, const Redex& r, std::size_t depth) {
    if (depth == r.path.size()) return contract(t, r);
    const int idx = r.path[depth];
    switch (t->kind()) {
        case TermKind::Lambda:
            if (idx != 0) mismatch("path into binder");
            return lambda(t->name(), apply_at(t->body(), r, depth + 1));
        case TermKind::Scaled:
            if (idx != 0) mismatch("path into weight");
            return scaled(t->factor(), apply_at(t->body(), r, depth + 1));
        case TermKind::Apply:
            if (idx == 0) return apply(apply_at(t->fun(), r, depth + 1), t->arg());
            if (idx == 1) return apply(t->fun(), apply_at(t->arg(), r, depth + 1));
            mismatch("path into application");
        case TermKind::Sum: {
            if (idx < 0 || static_cast<std::size_t>(idx) >= t->addends().size())
                mismatch("path into sum");
            std::vector<TermPtr> kids = t->addends();
            kids[idx] = apply_at(kids[idx], r, depth + 1);
            return sum(std::move(kids));
        }
        default:
            mismatch("path into leaf");
    }
}

NormalizeOutcome run(const TermPtr& t, long fuel, Strategy strategy, std::size_t max_size,
                     const EngineOptions& opts, Trace* trace_out) {
    TermPtr current = t;
    long steps = 0;
    std::mt19937_64 rng(strategy.seed);
    while (true) {
        if (max_size != 0 && current->size() > max_size)
            return {NormalizeStatus::FuelExhausted, current, steps};
        std::vector<Redex> redexes = enumerate_impl(current, opts);
        if (redexes.empty()) return {NormalizeStatus::Normal, current, steps};
        if (steps >= fuel) return {NormalizeStatus::FuelExhausted, current, steps};
        const Redex& chosen =
            strategy.kind == Strategy::Kind::Deterministic
                ? redexes.front()
                : redexes[std::uniform_int_distribution<std::size_t>(0, redexes.size() - 1)(rng)];
        TermPtr next = apply_at(current, chosen, 0);
        ++steps;
        if (trace_out)
            trace_out->steps.push_back({steps, chosen.rule, chosen.path, current, next});
        current = std::move(next);
    }
}

}  // namespace

RuleGroup rule_group(RuleId id) {
    switch (id) {
        case RuleId::EPlus0:
        case RuleId::EScale0:
        case RuleId::EScale1:
        case RuleId::EScaleZeroVec:
        case RuleId::EScaleScale:
        case RuleId::EScaleSum:
            return RuleGroup::E;
        case RuleId::FFactorBoth:
        case RuleId::FFactorOne:
        case RuleId::FFactorNone:
            return RuleGroup::F;
        case RuleId::BBeta:
            return RuleGroup::B;
        default:
            return RuleGroup::A;
    }
}

namespace {
constexpr std::array<std::pair<RuleId, std::string_view>, 16> kRuleNames{{
    {RuleId::EPlus0, "E-Plus0"},
    {RuleId::EScale0, "E-Scale0"},
    {RuleId::EScale1, "E-Scale1"},
    {RuleId::EScaleZeroVec, "E-ScaleZeroVec"},
    {RuleId::EScaleScale, "E-ScaleScale"},
    {RuleId::EScaleSum, "E-ScaleSum"},
    {RuleId::FFactorBoth, "F-FactorBoth"},
    {RuleId::FFactorOne, "F-FactorOne"},
    {RuleId::FFactorNone, "F-FactorNone"},
    {RuleId::ADistAppLeft, "A-DistAppLeft"},
    {RuleId::ADistAppRight, "A-DistAppRight"},
    {RuleId::AScaleAppLeft, "A-ScaleAppLeft"},
    {RuleId::AScaleAppRight, "A-ScaleAppRight"},
    {RuleId::AZeroAppLeft, "A-ZeroAppLeft"},
    {RuleId::AZeroAppRight, "A-ZeroAppRight"},
    {RuleId::BBeta, "B-Beta"},
}};
}  // namespace

std::string_view rule_name(RuleId id) {
    for (const auto& [rid, name] : kRuleNames)
        if (rid == id) return name;
    return "?";
}

std::optional<RuleId> rule_from_name(std::string_view name) {
    for (const auto& [rid, n] : kRuleNames)
        if (n == name) return rid;
    return std::nullopt;
}

std::vector<Redex> enumerate_redexes(const TermPtr& t) { return enumerate_impl(t, kDefault); }

TermPtr apply_redex(const TermPtr& t, const Redex& r) { return apply_at(t, r, 0); }

bool is_normal(const TermPtr& t) { return is_normal_impl(t, kDefault); }

NormalizeOutcome normalize(const TermPtr& t, long fuel) {
    return run(t, fuel, Strategy::deterministic(), 0, kDefault, nullptr);
}

NormalizeOutcome normalize_with_strategy(const TermPtr& t, long fuel, Strategy strategy,
                                         std::size_t max_size) {
    return run(t, fuel, strategy, max_size, kDefault, nullptr);
}

Trace trace(const TermPtr& t, long fuel, Strategy strategy) {
    Trace result;
    result.outcome = run(t, fuel, strategy, 0, kDefault, &result);
    return result;
}

bool matches_closed_normal_shape(const TermPtr& t) {
    if (t->kind() == TermKind::Zero) return true;
    auto atom_ok = [](const TermPtr& a) {
        if (a->kind() == TermKind::Lambda) return true;
        return a->kind() == TermKind::Scaled && a->body()->kind() == TermKind::Lambda &&
               !a->factor().is_zero() && !a->factor().is_one();
    };
    if (t->kind() != TermKind::Sum) return atom_ok(t);
    const auto& kids = t->addends();
    for (const auto& kid : kids)
        if (!atom_ok(kid)) return false;
    for (std::size_t i = 0; i + 1 < kids.size(); ++i)
        if (alpha_ac_equal(strip_weight(kids[i]), strip_weight(kids[i + 1]))) return false;
    return true;
}

std::string format_trace_step(const TraceStep& s, const Bindings* names) {
    std::string path;
    if (s.path.empty()) {
        path = "-";
    } else {
        for (std::size_t i = 0; i < s.path.size(); ++i) {
            if (i) path += '.';
            path += std::to_string(s.path[i]);
        }
    }
    return std::to_string(s.index) + "\t" + std::string(rule_name(s.rule)) + "\t" + path + "\t" +
           print_term(s.after, names);
}

namespace unrestricted_factoring {

std::vector<Redex> enumerate_redexes(const TermPtr& t) { return enumerate_impl(t, kUnrestricted); }

NormalizeOutcome normalize_with_strategy(const TermPtr& t, long fuel, Strategy strategy,
                                         std::size_t max_size) {
    return run(t, fuel, strategy, max_size, kUnrestricted, nullptr);
}

}  // namespace unrestricted_factoring

}  // namespace lambdalin
