#pragma once

#include "lambdalin/rewrite.hpp"
#include "lambdalin/term.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace lambdalin {

struct GenConfig {
    int max_depth = 6;
    std::vector<Scalar> scalar_pool;  // empty -> default pool
    // Constructor weights, must be positive.
    double w_variable = 2.0;
    double w_lambda = 3.0;
    double w_apply = 3.0;
    double w_zero = 0.5;
    double w_scaled = 1.5;
    double w_sum = 1.5;
    bool closed_only = true;
    std::uint64_t seed = 0;

    static std::vector<Scalar> default_pool();
};

/// Reproducible random term; closed when closed_only (variables are only
/// drawn from binders in scope).
TermPtr generate_term(const GenConfig& cfg);

struct ConfluenceSample {
    long id = 0;
    TermPtr term;
    std::vector<NormalizeStatus> statuses;
    std::vector<long> steps;
    bool agreed = true;        // among the runs that reached a normal form
    bool any_normal = false;
    bool all_normal = false;
    bool shape_ok = true;      // closed normal results match the normal-form shape
};

struct ConfluenceFailure {
    long sample_id;
    TermPtr term;        // minimized
    TermPtr original;
    std::vector<std::string> normal_forms;
};

struct ConfluenceReport {
    long total = 0;
    long agreed = 0;
    long disagreed = 0;
    long normalized = 0;  // samples where at least one run reached a normal form
    long jointly_normal = 0;
    long shape_violations = 0;
    std::vector<ConfluenceFailure> failures;
    std::vector<ConfluenceSample> samples;  // only kept when keep_samples

    bool ok() const { return disagreed == 0 && shape_violations == 0; }
};

struct ConfluenceConfig {
    GenConfig gen;
    long samples = 1000;
    long fuel = 10000;
    std::vector<std::uint64_t> seeds = {1, 2, 3};
    std::size_t max_size = 800;  // growth abort per run; 0 = unlimited
    bool keep_samples = false;
    bool check_shape = true;
};

ConfluenceReport check_confluence_sample(const ConfluenceConfig& cfg);

/// Greedy structural shrinking: repeatedly replaces the term by any
/// child/reduced variant that still satisfies `failing`.
TermPtr shrink_counterexample(TermPtr t, const std::function<bool(const TermPtr&)>& failing);

/// One overlap instance: an ancestor with two one-step reducts that must
/// reach alpha-AC-equal normal forms.
struct PairCase {
    std::string name;
    TermPtr ancestor;
    TermPtr left;
    TermPtr right;
};

std::vector<PairCase> critical_pair_cases();

struct SuiteReport {
    long passed = 0;
    long failed = 0;
    std::vector<std::string> lines;  // one machine-readable line per check
    bool ok() const { return failed == 0; }
};

/// Joinability of every PairCase within the given fuel.
SuiteReport critical_pair_suite(long fuel = 1000);

/// The reductions the side conditions must forbid: factoring a
/// non-normalizing difference to the null vector, beta on a superposed
/// argument, distributing over an open or reducible sum, pulling a weight
/// out of an open term.
SuiteReport restriction_suite(long fuel = 1000, int seeds = 5);

/// restriction_suite run against the engine with the factoring condition
/// removed; expected to FAIL (used to check the suite can detect the bug).
SuiteReport restriction_suite_unrestricted(long fuel = 1000, int seeds = 5);

}  // namespace lambdalin
