#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lambdalin/harness.hpp"
#include "lambdalin/parser.hpp"
#include "lambdalin/rewrite.hpp"
#include "lambdalin/stdlib.hpp"

#include <algorithm>

using namespace lambdalin;

namespace {

TermPtr v(const char* n) { return variable(n); }
const Scalar kHalf(Rational(1, 2));
const Scalar kHalfSqrt2(Rational(0), Rational(1, 2), Rational(0), Rational(0));

TermPtr parse_p(const char* src) { return parse_term(src, &prelude::bindings()); }

bool has_redex(const TermPtr& t, RuleId id, const std::vector<int>& path) {
    auto redexes = enumerate_redexes(t);
    return std::any_of(redexes.begin(), redexes.end(),
                       [&](const Redex& r) { return r.rule == id && r.path == path; });
}

const Redex& find_redex(const std::vector<Redex>& redexes, RuleId id) {
    for (const Redex& r : redexes)
        if (r.rule == id) return r;
    throw std::runtime_error("redex not found");
}

}  // namespace

TEST_CASE("rule names round trip") {
    for (int k = 0; k < 16; ++k) {
        RuleId id = static_cast<RuleId>(k);
        CHECK(rule_from_name(rule_name(id)) == id);
    }
    CHECK(rule_name(RuleId::FFactorBoth) == "F-FactorBoth");
    CHECK(rule_name(RuleId::BBeta) == "B-Beta");
}

TEST_CASE("a superposed argument distributes and never beta-reduces") {
    TermPtr t = apply(lambda("x", apply(v("x"), v("x"))),
                      sum({prelude::bool_true(), prelude::bool_false()}));
    CHECK(has_redex(t, RuleId::ADistAppRight, {}));
    CHECK_FALSE(has_redex(t, RuleId::BBeta, {}));
}

TEST_CASE("no factoring across a reducible shared term") {
    TermPtr yb = apply(prelude::y_combinator(), prelude::bool_true());
    TermPtr t = sum({scaled(Scalar::one(), yb), scaled(Scalar(-1), yb)});
    auto redexes = enumerate_redexes(t);
    CHECK(std::none_of(redexes.begin(), redexes.end(),
                       [](const Redex& r) { return rule_group(r.rule) == RuleGroup::F; }));
}

TEST_CASE("a closed normal form has no redexes") {
    TermPtr t = sum({scaled(kHalfSqrt2, prelude::bool_false()),
                     scaled(kHalfSqrt2, prelude::bool_true())});
    CHECK(enumerate_redexes(t).empty());
    CHECK(is_normal(t));
}

TEST_CASE("weight-combination step") {
    const Scalar a(Rational(1, 2)), b = Scalar::imag_unit();
    TermPtr t = scaled(a, scaled(b, prelude::identity()));
    auto redexes = enumerate_redexes(t);
    TermPtr r = apply_redex(t, find_redex(redexes, RuleId::EScaleScale));
    CHECK(alpha_ac_equal(r, scaled(a * b, prelude::identity())));
}

TEST_CASE("beta step on a base argument") {
    TermPtr t = apply(prelude::bool_true(), prelude::bool_true());
    TermPtr r = apply_redex(t, find_redex(enumerate_redexes(t), RuleId::BBeta));
    CHECK(alpha_ac_equal(r, lambda("y", prelude::bool_true())));
}

TEST_CASE("duplicate addends factor to a doubled weight") {
    TermPtr u = prelude::identity();
    TermPtr t = sum({u, u});
    TermPtr r = apply_redex(t, find_redex(enumerate_redexes(t), RuleId::FFactorNone));
    CHECK(alpha_ac_equal(r, scaled(Scalar(2), u)));
}

TEST_CASE("factoring on a pair inside a larger multiset only touches that pair") {
    TermPtr u = prelude::identity();
    TermPtr t = sum({scaled(kHalf, u), scaled(Scalar::imag_unit(), u), prelude::bool_true()});
    auto redexes = enumerate_redexes(t);
    const Redex& r = find_redex(redexes, RuleId::FFactorBoth);
    TermPtr after = apply_redex(t, r);
    CHECK(alpha_ac_equal(
        after, sum({scaled(kHalf + Scalar::imag_unit(), u), prelude::bool_true()})));
}

TEST_CASE("nested parenthesization still exposes duplicate addends") {
    // ((a + b) + a) + c flattens, so the two copies of a factor even though
    // no written subterm pairs them up.
    TermPtr a = prelude::bool_true();
    TermPtr b = prelude::identity();
    TermPtr c = prelude::bool_false();
    TermPtr t = sum({sum({sum({a, b}), a}), c});
    REQUIRE(t->kind() == TermKind::Sum);
    CHECK(t->addends().size() == 4);
    auto redexes = enumerate_redexes(t);
    const Redex& r = find_redex(redexes, RuleId::FFactorNone);
    CHECK(alpha_ac_equal(apply_redex(t, r), sum({scaled(Scalar(2), a), b, c})));
}

TEST_CASE("a weight stack factors against its own unweighted occurrence") {
    TermPtr u = prelude::identity();
    TermPtr bu = scaled(kHalfSqrt2, u);
    TermPtr t = sum({bu, scaled(kHalf, bu)});
    auto redexes = enumerate_redexes(t);
    const Redex& r = find_redex(redexes, RuleId::FFactorOne);
    CHECK(alpha_ac_equal(apply_redex(t, r), scaled(kHalf + Scalar::one(), bu)));
}

TEST_CASE("equal weighted addends admit both factoring views") {
    TermPtr u = prelude::identity();
    TermPtr t = sum({scaled(kHalf, u), scaled(kHalf, u)});
    auto redexes = enumerate_redexes(t);
    TermPtr both = apply_redex(t, find_redex(redexes, RuleId::FFactorBoth));
    TermPtr none = apply_redex(t, find_redex(redexes, RuleId::FFactorNone));
    CHECK(alpha_ac_equal(both, scaled(Scalar::one(), u)));
    CHECK(alpha_ac_equal(none, scaled(Scalar(2), scaled(kHalf, u))));
    CHECK(alpha_ac_equal(normalize(both, 100).term, normalize(none, 100).term));
}

TEST_CASE("mismatched redexes are rejected") {
    TermPtr t = apply(prelude::bool_true(), prelude::bool_true());
    Redex bogus{{0, 0, 1}, RuleId::EScale1};
    CHECK_THROWS_AS(apply_redex(t, bogus), RedexMismatch);
    Redex wrong_rule{{}, RuleId::FFactorNone, 0, 1};
    CHECK_THROWS_AS(apply_redex(t, wrong_rule), RedexMismatch);
}

TEST_CASE("normality fixtures") {
    CHECK(is_normal(prelude::bool_true()));
    CHECK_FALSE(is_normal(scaled(Scalar::one(), v("u"))));
    CHECK_FALSE(is_normal(scaled(Scalar::zero(), prelude::identity())));
    CHECK(is_normal(sum({v("x"), v("y")})));
    // open duplicates cannot factor
    CHECK(is_normal(sum({v("x"), v("x")})));
    CHECK(is_normal(scaled(Scalar(2), prelude::identity())));
}

TEST_CASE("is_normal agrees with redex enumeration on random terms") {
    GenConfig cfg;
    cfg.closed_only = false;
    for (int k = 0; k < 1500; ++k) {
        cfg.seed = 52000 + k;
        TermPtr t = generate_term(cfg);
        CHECK(is_normal(t) == enumerate_redexes(t).empty());
    }
}

TEST_CASE("deterministic normalization is a function of the term") {
    TermPtr t = parse_p("H (H true)");
    NormalizeOutcome a = normalize(t, 10000);
    NormalizeOutcome b = normalize(parse_p("H (H true)"), 10000);
    CHECK(a.steps == b.steps);
    CHECK(alpha_ac_equal(a.term, b.term));
}

TEST_CASE("phase gate reductions") {
    NormalizeOutcome t = normalize(parse_p("Phase true"), 10000);
    REQUIRE(t.status == NormalizeStatus::Normal);
    CHECK(alpha_ac_equal(t.term, scaled(Scalar::omega8(), prelude::bool_true())));
    NormalizeOutcome f = normalize(parse_p("Phase false"), 10000);
    REQUIRE(f.status == NormalizeStatus::Normal);
    CHECK(alpha_ac_equal(f.term, prelude::bool_false()));
}

TEST_CASE("fixpoint application keeps growing") {
    TermPtr yb = parse_p("Y true");
    NormalizeOutcome o = normalize(yb, 100);
    CHECK(o.status == NormalizeStatus::FuelExhausted);
    CHECK(o.steps == 100);
    // the last term carries the base as an addend, possibly weighted n.b
    REQUIRE(o.term->kind() == TermKind::Sum);
    CHECK(std::any_of(o.term->addends().begin(), o.term->addends().end(), [](const TermPtr& a) {
        const TermPtr& body = a->kind() == TermKind::Scaled ? a->body() : a;
        return alpha_ac_equal(body, prelude::bool_true());
    }));
}

TEST_CASE("two seeds agree on copying a superposition") {
    TermPtr t = parse_p("(\\x.(tensor x x)) (false + true)");
    NormalizeOutcome a = normalize_with_strategy(t, 10000, Strategy::random_seeded(1));
    NormalizeOutcome b = normalize_with_strategy(t, 10000, Strategy::random_seeded(2));
    REQUIRE(a.status == NormalizeStatus::Normal);
    REQUIRE(b.status == NormalizeStatus::Normal);
    CHECK(alpha_ac_equal(a.term, b.term));
    TermPtr expected = normalize(parse_p("(tensor false false) + (tensor true true)"), 10000).term;
    CHECK(alpha_ac_equal(a.term, expected));
}

TEST_CASE("seeds agree on the hadamard involution") {
    TermPtr t = parse_p("H (H true)");
    for (std::uint64_t seed : {1ULL, 2ULL}) {
        NormalizeOutcome o = normalize_with_strategy(t, 10000, Strategy::random_seeded(seed));
        REQUIRE(o.status == NormalizeStatus::Normal);
        CHECK(alpha_ac_equal(o.term, prelude::bool_true()));
    }
}

TEST_CASE("normalizing a normal form costs zero steps") {
    TermPtr t = prelude::bool_true();
    NormalizeOutcome o = normalize_with_strategy(t, 0, Strategy::random_seeded(9));
    CHECK(o.status == NormalizeStatus::Normal);
    CHECK(o.steps == 0);
}

TEST_CASE("step counts never exceed fuel") {
    GenConfig cfg;
    for (int k = 0; k < 200; ++k) {
        cfg.seed = 61000 + k;
        TermPtr t = generate_term(cfg);
        const long fuel = k % 17;
        NormalizeOutcome o = normalize_with_strategy(t, fuel, Strategy::random_seeded(k), 400);
        CHECK(o.steps <= fuel);
        if (o.status == NormalizeStatus::Normal) CHECK(is_normal(o.term));
    }
}

TEST_CASE("traces chain and replay the outcome") {
    TermPtr t = parse_p("Not true");
    Trace tr = trace(t, 10000);
    REQUIRE(tr.outcome.status == NormalizeStatus::Normal);
    CHECK(alpha_ac_equal(tr.outcome.term, prelude::bool_false()));
    CHECK(tr.steps.size() <= 10);
    CHECK(tr.steps.size() == static_cast<std::size_t>(tr.outcome.steps));
    for (std::size_t k = 0; k + 1 < tr.steps.size(); ++k)
        CHECK(syntactic_equal(tr.steps[k].after, tr.steps[k + 1].before));
    CHECK(syntactic_equal(tr.steps.back().after, tr.outcome.term));
    NormalizeOutcome direct = normalize(t, 10000);
    CHECK(alpha_ac_equal(direct.term, tr.outcome.term));
}

TEST_CASE("unquoting a quoted term is a single beta step") {
    TermPtr t = prelude::unquote(prelude::quote(prelude::bool_true()));
    Trace tr = trace(t, 10);
    REQUIRE(tr.steps.size() == 1);
    CHECK(tr.steps[0].rule == RuleId::BBeta);
    CHECK(alpha_ac_equal(tr.outcome.term, prelude::bool_true()));
}

TEST_CASE("trace of a normal form is empty") {
    CHECK(trace(prelude::bool_true(), 100).steps.empty());
}

TEST_CASE("restrictions survive substitution of a base term") {
    GenConfig cfg;
    cfg.closed_only = false;
    TermPtr base = prelude::bool_false();
    int exercised = 0;
    for (int k = 0; k < 400 && exercised < 60; ++k) {
        cfg.seed = 71000 + k;
        TermPtr t = generate_term(cfg);
        if (!free_vars(t).count("a")) continue;
        auto before = enumerate_redexes(t);
        TermPtr substituted = substitute(t, "a", base);
        auto after = enumerate_redexes(substituted);
        for (const Redex& r : before) {
            if (rule_group(r.rule) != RuleGroup::F && rule_group(r.rule) != RuleGroup::A) continue;
            ++exercised;
            CHECK(std::any_of(after.begin(), after.end(),
                              [&](const Redex& s) { return s.rule == r.rule; }));
        }
    }
    CHECK(exercised > 0);
}

TEST_CASE("one non-beta step commutes with one beta step at the normal form") {
    GenConfig cfg;
    int exercised = 0;
    for (int k = 0; k < 600 && exercised < 80; ++k) {
        cfg.seed = 81000 + k;
        TermPtr t = generate_term(cfg);
        auto redexes = enumerate_redexes(t);
        const Redex* non_beta = nullptr;
        const Redex* beta = nullptr;
        for (const Redex& r : redexes) {
            if (r.rule == RuleId::BBeta && !beta) beta = &r;
            if (r.rule != RuleId::BBeta && !non_beta) non_beta = &r;
        }
        if (!beta || !non_beta) continue;
        NormalizeOutcome via_r = normalize_with_strategy(apply_redex(t, *non_beta), 2000,
                                                         Strategy::deterministic(), 2000);
        NormalizeOutcome via_b = normalize_with_strategy(apply_redex(t, *beta), 2000,
                                                         Strategy::deterministic(), 2000);
        if (via_r.status != NormalizeStatus::Normal || via_b.status != NormalizeStatus::Normal)
            continue;
        ++exercised;
        CHECK(alpha_ac_equal(via_r.term, via_b.term));
    }
    CHECK(exercised > 0);
}

namespace {

// Interpretation under which every non-beta rule is strictly decreasing
// (application multiplies, sums and weights pad additively).
BigInt measure(const TermPtr& t) {
    switch (t->kind()) {
        case TermKind::Zero:
        case TermKind::Variable:
            return 0;
        case TermKind::Lambda:
            return measure(t->body());
        case TermKind::Apply:
            return (3 * measure(t->fun()) + 2) * (3 * measure(t->arg()) + 2);
        case TermKind::Scaled:
            return 1 + 2 * measure(t->body());
        case TermKind::Sum: {
            BigInt m = 2 * (BigInt(t->addends().size()) - 1);
            for (const auto& kid : t->addends()) m += measure(kid);
            return m;
        }
    }
    return 0;
}

}  // namespace

TEST_CASE("every non-beta step strictly decreases the termination measure") {
    GenConfig cfg;
    cfg.closed_only = false;
    long checked = 0;
    for (int k = 0; k < 800; ++k) {
        cfg.seed = 210000 + k;
        TermPtr t = generate_term(cfg);
        const BigInt before = measure(t);
        for (const Redex& r : enumerate_redexes(t)) {
            TermPtr after = apply_redex(t, r);  // also: no enumerated redex may fail to apply
            if (r.rule == RuleId::BBeta) continue;
            ++checked;
            CHECK(measure(after) < before);
        }
    }
    CHECK(checked > 500);
}

TEST_CASE("closed normal shapes") {
    CHECK(matches_closed_normal_shape(zero_vector()));
    CHECK(matches_closed_normal_shape(prelude::bool_true()));
    CHECK(matches_closed_normal_shape(scaled(Scalar(2), prelude::identity())));
    CHECK(matches_closed_normal_shape(
        sum({scaled(kHalfSqrt2, prelude::bool_false()), scaled(kHalfSqrt2, prelude::bool_true())})));
    CHECK_FALSE(matches_closed_normal_shape(scaled(Scalar::one(), prelude::identity())));
    CHECK_FALSE(matches_closed_normal_shape(sum({prelude::identity(), prelude::identity()})));
    CHECK_FALSE(matches_closed_normal_shape(apply(v("x"), v("y"))));
}

TEST_CASE("trace line format") {
    TermPtr t = scaled(Scalar::one(), prelude::identity());
    Trace tr = trace(t, 10);
    REQUIRE(tr.steps.size() == 1);
    CHECK(format_trace_step(tr.steps[0]) == "1\tE-Scale1\t-\t\\x.x");
}
