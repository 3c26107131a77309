// Acceptance suite: runs every top-level requirement and prints one
// pass/fail line per criterion.

#include "lambdalin/harness.hpp"
#include "lambdalin/parser.hpp"
#include "lambdalin/rewrite.hpp"
#include "lambdalin/stdlib.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace lambdalin;
using namespace lambdalin::prelude;

namespace {

const Scalar kHalf(Rational(1, 2));
const Scalar kHalfSqrt2(Rational(0), Rational(1, 2), Rational(0), Rational(0));

struct Check {
    int id;
    std::string name;
    std::function<bool(std::string&)> run;
};

TermPtr nf_or_null(const TermPtr& t, long fuel = 10000) {
    NormalizeOutcome o = normalize(t, fuel);
    return o.status == NormalizeStatus::Normal ? o.term : nullptr;
}

bool reduces_to(const TermPtr& t, const TermPtr& expected_nf, std::string& why, long fuel = 10000) {
    TermPtr r = nf_or_null(t, fuel);
    if (!r) {
        why = "no normal form within fuel for " + print_term(t, &bindings());
        return false;
    }
    if (!alpha_ac_equal(r, expected_nf)) {
        why = print_term(t, &bindings()) + " reduced to " + print_term(r, &bindings()) +
              ", expected " + print_term(expected_nf, &bindings());
        return false;
    }
    return true;
}

TermPtr column(unsigned n) {  // false^{(x)n} (x) true, nested to the right
    TermPtr t = bool_true();
    for (unsigned k = 0; k < n; ++k) t = tensor(bool_false(), t);
    return t;
}

bool criterion1(std::string& why) {
    if (!reduces_to(apply(not_gate(), bool_true()), bool_false(), why)) return false;
    if (!reduces_to(apply(not_gate(), bool_false()), bool_true(), why)) return false;
    if (!reduces_to(apply(phase_gate(), bool_true()), scaled(Scalar::omega8(), bool_true()), why))
        return false;
    if (!reduces_to(apply(phase_gate(), bool_false()), bool_false(), why)) return false;
    const TermPtr payloads[] = {bool_true(), bool_false(),
                                sum({scaled(kHalf, bool_true()), scaled(kHalf, bool_false())})};
    for (const TermPtr& t : payloads)
        if (!reduces_to(unquote(quote(t)), t, why)) return false;
    return true;
}

bool criterion2(std::string& why) {
    if (!reduces_to(apply(hadamard(), apply(hadamard(), bool_true())), bool_true(), why))
        return false;
    return reduces_to(apply(hadamard(), apply(hadamard(), bool_false())), bool_false(), why);
}

bool criterion3(std::string& why) {
    TermPtr cand = lambda("x", tensor(variable("x"), variable("x")));
    TermPtr expected = nf_or_null(sum({tensor(bool_false(), bool_false()),
                                       tensor(bool_true(), bool_true())}));
    if (!reduces_to(apply(cand, sum({bool_false(), bool_true()})), expected, why)) return false;
    TermPtr s = sum({scaled(kHalfSqrt2, bool_true()), scaled(kHalfSqrt2, bool_false())});
    TermPtr copied = nf_or_null(apply(cand, s));
    TermPtr cloned = nf_or_null(tensor(s, s));
    if (!copied || !cloned) {
        why = "copy/clone candidates did not normalize";
        return false;
    }
    if (alpha_ac_equal(copied, cloned)) {
        why = "copying a superposition agreed with the tensor square";
        return false;
    }
    return true;
}

bool criterion4(std::string& why) {
    TermPtr iter = lambda("y", tensor(bool_false(), variable("y")));
    for (unsigned n = 0; n <= 3; ++n) {
        TermPtr built = apply(apply(church(n), bool_true()), iter);
        if (!reduces_to(built, nf_or_null(column(n)), why)) {
            why = "column at n=" + std::to_string(n) + ": " + why;
            return false;
        }
    }
    TermPtr hiter = lambda("y", big_tensor_of(hadamard(), variable("y")));
    TermPtr built = apply(apply(church(1), hadamard()), hiter);
    return reduces_to(built, nf_or_null(hadamard2()), why);
}

bool criterion5(std::string& why) {
    if (!reduces_to(apply(deutsch1(), identity()), nf_or_null(tensor(bool_false(), bool_true())),
                    why))
        return false;
    return reduces_to(apply(deutsch1(), cnot_gate()), nf_or_null(tensor(bool_true(), bool_true())),
                      why);
}

bool criterion6(std::string& why) {
    SuiteReport report = restriction_suite(1000, 5);
    if (!report.ok()) {
        for (const auto& line : report.lines)
            if (line.find("FAIL") != std::string::npos) why += line + "; ";
        return false;
    }
    return true;
}

bool criterion7(std::string& why) {
    SuiteReport report = critical_pair_suite(1000);
    if (report.passed < 25) {
        why = "only " + std::to_string(report.passed) + " pair cases";
        return false;
    }
    if (!report.ok()) {
        for (const auto& line : report.lines)
            if (line.find("FAIL") != std::string::npos) why += line + "; ";
        return false;
    }
    return true;
}

ConfluenceReport big_report;  // shared between criteria 8 and 9

bool criterion8(std::string& why) {
    ConfluenceConfig cfg;
    cfg.samples = 10000;
    cfg.fuel = 10000;
    cfg.seeds = {1, 2, 3};
    cfg.max_size = 800;
    cfg.gen.seed = 20240501;
    cfg.gen.max_depth = 9;
    big_report = check_confluence_sample(cfg);
    if (big_report.disagreed != 0) {
        why = std::to_string(big_report.disagreed) + " disagreements; first minimized: " +
              (big_report.failures.empty() ? "?" : print_term(big_report.failures[0].term));
        return false;
    }
    if (big_report.normalized * 10 < big_report.total * 6) {
        why = "only " + std::to_string(big_report.normalized) + "/" +
              std::to_string(big_report.total) + " samples normalized";
        return false;
    }
    return true;
}

bool criterion9(std::string& why) {
    if (big_report.total == 0) {
        why = "confluence run missing";
        return false;
    }
    if (big_report.shape_violations != 0) {
        why = std::to_string(big_report.shape_violations) + " closed normal forms out of shape";
        return false;
    }
    return true;
}

bool criterion10(std::string& why) {
    GenConfig cfg;
    cfg.closed_only = false;
    long failures = 0;
    for (int k = 0; k < 10000; ++k) {
        cfg.seed = 31000000 + k;
        TermPtr t = generate_term(cfg);
        TermPtr back;
        try {
            back = parse_term(print_term(t));
        } catch (const ParseError& e) {
            ++failures;
            if (failures == 1) why = "reparse error on " + print_term(t) + ": " + e.what();
            continue;
        }
        if (!alpha_ac_equal(t, back)) {
            ++failures;
            if (failures == 1) why = "round trip changed " + print_term(t);
        }
    }
    if (failures) {
        why = std::to_string(failures) + " failures; " + why;
        return false;
    }
    return true;
}

}  // namespace

int main() {
    const std::vector<Check> checks = {
        {1, "encoding fidelity (not, phase, unquote-quote)", criterion1},
        {2, "hadamard involution with exact cancellation", criterion2},
        {3, "copying without cloning", criterion3},
        {4, "church-numeral parametric circuits", criterion4},
        {5, "deutsch circuit at one qubit", criterion5},
        {6, "restriction suite", criterion6},
        {7, "critical-pair joinability", criterion7},
        {8, "statistical confluence over 10^4 samples", criterion8},
        {9, "closed normal form shape", criterion9},
        {10, "parser round trip over 10^4 terms", criterion10},
    };

    int failures = 0;
    for (const Check& c : checks) {
        const auto start = std::chrono::steady_clock::now();
        std::string why;
        bool ok = false;
        try {
            ok = c.run(why);
        } catch (const std::exception& e) {
            why = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s  criterion %2d  %-48s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", c.id,
                    c.name.c_str(), secs, why.empty() ? "" : "  -- ", why.c_str());
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
