#pragma once

#include "lambdalin/scalar.hpp"

#include <atomic>
#include <cstdint>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace lambdalin {

enum class TermKind : std::uint8_t { Zero, Variable, Lambda, Apply, Scaled, Sum };

class Term;
using TermPtr = std::shared_ptr<const Term>;

/// Immutable term node. Sums are kept flattened (no Sum directly inside a
/// Sum) with at least two addends, sorted by a fixed total order that is
/// stable under alpha-renaming, so structurally-built terms are already
/// AC-canonical. Use the factory functions below; they maintain the
/// invariants.
class Term {
public:
    TermKind kind() const { return kind_; }

    // Variable name or Lambda binder.
    const std::string& name() const { return name_; }
    // Lambda or Scaled body.
    const TermPtr& body() const { return kids_[0]; }
    const TermPtr& fun() const { return kids_[0]; }
    const TermPtr& arg() const { return kids_[1]; }
    const Scalar& factor() const { return factor_; }
    const std::vector<TermPtr>& addends() const { return kids_; }
    std::span<const TermPtr> children() const { return kids_; }

    /// Free variables, sorted and deduplicated.
    const std::vector<std::string>& free_vars() const { return free_; }
    bool closed() const { return free_.empty(); }
    std::size_t size() const { return size_; }  // node count

    // Normality cache for the rewrite layer (valid for the default rule set
    // only): -1 unknown, 0 no, 1 yes. Recomputation is idempotent, so the
    // relaxed race is benign.
    int normal_flag() const { return normal_flag_.load(std::memory_order_relaxed); }
    void set_normal_flag(bool v) const { normal_flag_.store(v ? 1 : 0, std::memory_order_relaxed); }

    Term(TermKind k, std::string name, Scalar factor, std::vector<TermPtr> kids);

private:
    TermKind kind_;
    std::string name_;
    Scalar factor_;
    std::vector<TermPtr> kids_;
    std::vector<std::string> free_;
    std::size_t size_ = 1;
    mutable std::atomic<int> normal_flag_{-1};
};

// Factories (the only way to build well-formed terms).
TermPtr variable(std::string name);
TermPtr lambda(std::string binder, TermPtr body);
TermPtr apply(TermPtr fun, TermPtr arg);
TermPtr zero_vector();
TermPtr scaled(Scalar factor, TermPtr body);
/// Flattens nested sums, collapses empty/singleton lists, sorts addends.
TermPtr sum(std::vector<TermPtr> addends);

bool is_base(const TermPtr& t);    // abstraction or variable
bool is_closed(const TermPtr& t);
std::set<std::string> free_vars(const TermPtr& t);

/// Total order. Primary key ignores binder names (locally nameless);
/// syntactic tie-break on names keeps printing deterministic.
int compare(const TermPtr& a, const TermPtr& b);

/// Equality modulo alpha-renaming and sum-multiset reordering.
bool alpha_ac_equal(const TermPtr& a, const TermPtr& b);

/// Capture-avoiding substitution of `replacement` for free `name` in `t`.
TermPtr substitute(const TermPtr& t, const std::string& name, const TermPtr& replacement);

/// Deterministic representative: binders renamed to v0, v1, ... in traversal
/// order (skipping free names), sums re-sorted. alpha_ac_equal(t, u) iff the
/// canonical forms are syntactically identical.
TermPtr canonicalize(const TermPtr& t);

bool syntactic_equal(const TermPtr& a, const TermPtr& b);

}  // namespace lambdalin
