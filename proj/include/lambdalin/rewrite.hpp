#pragma once

#include "lambdalin/parser.hpp"
#include "lambdalin/term.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace lambdalin {

/// The sixteen rules of the conditional system: elementary scalar/vector
/// cleanups (E), factorisation of like addends (F), linearity of application
/// (A), and beta reduction restricted to base arguments (B).
enum class RuleId : std::uint8_t {
    EPlus0,         // u + 0v -> u
    EScale0,        // 0.u -> 0v
    EScale1,        // 1.u -> u
    EScaleZeroVec,  // a.0v -> 0v
    EScaleScale,    // a.(b.u) -> (a*b).u
    EScaleSum,      // a.(u + v) -> a.u + a.v
    FFactorBoth,    // a.u + b.u -> (a+b).u      [u closed normal]
    FFactorOne,     // a.u + u -> (a+1).u        [u closed normal]
    FFactorNone,    // u + u -> (1+1).u          [u closed normal]
    ADistAppLeft,   // (u + v) w -> u w + v w    [u + v closed normal]
    ADistAppRight,  // w (u + v) -> w u + w v    [u + v closed normal]
    AScaleAppLeft,  // (a.u) v -> a.(u v)        [u closed normal]
    AScaleAppRight, // v (a.u) -> a.(v u)        [u closed normal]
    AZeroAppLeft,   // 0v u -> 0v
    AZeroAppRight,  // u 0v -> 0v
    BBeta,          // (\x.t) b -> t[b/x]        [b an abstraction or variable]
};

enum class RuleGroup : std::uint8_t { E, F, A, B };

RuleGroup rule_group(RuleId id);
std::string_view rule_name(RuleId id);
std::optional<RuleId> rule_from_name(std::string_view name);

/// A rule instance at a location: path of child selectors from the root
/// (sum children addressed by their sorted index) plus, for factorisation,
/// the selected pair of addends.
struct Redex {
    std::vector<int> path;
    RuleId rule;
    int addend_a = -1;
    int addend_b = -1;  // set iff rule is in group F, with addend_a < addend_b
};

/// apply_redex received a redex that does not match the term.
class RedexMismatch : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

enum class NormalizeStatus : std::uint8_t { Normal, FuelExhausted };

struct NormalizeOutcome {
    NormalizeStatus status;
    TermPtr term;
    long steps = 0;
};

struct Strategy {
    enum class Kind : std::uint8_t { Deterministic, RandomSeeded };
    Kind kind = Kind::Deterministic;
    std::uint64_t seed = 0;

    static Strategy deterministic() { return {}; }
    static Strategy random_seeded(std::uint64_t seed) {
        return {Kind::RandomSeeded, seed};
    }
};

struct TraceStep {
    long index;
    RuleId rule;
    std::vector<int> path;
    TermPtr before;
    TermPtr after;
};

struct Trace {
    std::vector<TraceStep> steps;
    NormalizeOutcome outcome;
};

/// Every rule instance whose pattern matches modulo AC and whose side
/// condition holds, in pre-order on positions (outer before inner, left to
/// right), then E < F < A < B at the same position.
std::vector<Redex> enumerate_redexes(const TermPtr& t);

TermPtr apply_redex(const TermPtr& t, const Redex& r);

/// No rule applies at any position. Equivalent to
/// enumerate_redexes(t).empty() but computed structurally and cached per
/// node.
bool is_normal(const TermPtr& t);

/// Repeatedly contracts the first redex in enumeration order.
NormalizeOutcome normalize(const TermPtr& t, long fuel);

/// RandomSeeded picks uniformly among the enumerated redexes, reproducibly
/// for a fixed seed. `max_size` (0 = unlimited) aborts with FuelExhausted
/// once the term grows past that many nodes, which keeps runaway
/// fixpoint-style growth from eating the whole step budget.
NormalizeOutcome normalize_with_strategy(const TermPtr& t, long fuel, Strategy strategy,
                                         std::size_t max_size = 0);

Trace trace(const TermPtr& t, long fuel, Strategy strategy = Strategy::deterministic());

/// Shape of closed normal forms: the null vector, or a combination of
/// abstractions where every weight is outside {0, 1} and no two addends
/// share the same underlying abstraction.
bool matches_closed_normal_shape(const TermPtr& t);

/// Text form "k<TAB>rule<TAB>path<TAB>term-after"; the root path prints "-".
std::string format_trace_step(const TraceStep& s, const Bindings* names = nullptr);

/// Engine with the factoring side condition removed; exists so the test
/// suites can demonstrate the counterexamples the condition prevents.
/// Results are not cached.
namespace unrestricted_factoring {
std::vector<Redex> enumerate_redexes(const TermPtr& t);
NormalizeOutcome normalize_with_strategy(const TermPtr& t, long fuel, Strategy strategy,
                                         std::size_t max_size = 0);
}  // namespace unrestricted_factoring

}  // namespace lambdalin
