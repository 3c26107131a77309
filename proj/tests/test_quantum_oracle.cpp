// Cross-checks the symbolic engine against an independent numeric qubit
// simulator: every circuit is run both ways and the amplitude maps must
// agree to 1e-9.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lambdalin/parser.hpp"
#include "lambdalin/rewrite.hpp"
#include "lambdalin/stdlib.hpp"

#include <array>
#include <complex>
#include <map>
#include <optional>
#include <string>

using namespace lambdalin;
using namespace lambdalin::prelude;

namespace {

using cplx = std::complex<double>;
using Amplitudes = std::map<std::string, cplx>;  // key: one 'f'/'t' per wire
using Gate = std::array<cplx, 4>;                // row-major 2x2, basis (f, t)

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const Gate kH{kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
const Gate kX{0, 1, 1, 0};
const Gate kPhase{1, 0, 0, std::polar(1.0, 3.14159265358979323846 / 4)};
const Gate kI{1, 0, 0, 1};

Amplitudes basis_state(const std::string& key) { return {{key, 1.0}}; }

void apply_gate(Amplitudes& amps, const Gate& g, std::size_t wire) {
    Amplitudes next;
    for (const auto& [key, amp] : amps) {
        std::string flipped = key;
        const bool one = key[wire] == 't';
        flipped[wire] = one ? 'f' : 't';
        // column of the matrix selected by the current bit
        next[one ? flipped : key] += g[one ? 1 : 0] * amp;
        next[one ? key : flipped] += g[one ? 3 : 2] * amp;
    }
    amps = std::move(next);
}

void apply_cnot(Amplitudes& amps) {  // control wire 0, target wire 1
    Amplitudes next;
    for (const auto& [key, amp] : amps) {
        std::string out = key;
        if (key[0] == 't') out[1] = key[1] == 't' ? 'f' : 't';
        next[out] += amp;
    }
    amps = std::move(next);
}

// ---- decoding engine normal forms into amplitude maps ----

std::optional<std::string> decode_basis(const TermPtr& t, int wires) {
    if (wires == 1) {
        if (alpha_ac_equal(t, bool_false())) return "f";
        if (alpha_ac_equal(t, bool_true())) return "t";
        return std::nullopt;
    }
    // tensor normal form: \f.((f a) rest)
    if (t->kind() != TermKind::Lambda) return std::nullopt;
    const TermPtr& body = t->body();
    if (body->kind() != TermKind::Apply || body->fun()->kind() != TermKind::Apply)
        return std::nullopt;
    const TermPtr& head = body->fun()->fun();
    if (head->kind() != TermKind::Variable || head->name() != t->name()) return std::nullopt;
    auto first = decode_basis(body->fun()->arg(), 1);
    auto rest = decode_basis(body->arg(), wires - 1);
    if (!first || !rest) return std::nullopt;
    return *first + *rest;
}

std::optional<Amplitudes> decode_state(const TermPtr& t, int wires) {
    Amplitudes out;
    auto add = [&](const TermPtr& addend) -> bool {
        cplx weight = 1.0;
        TermPtr atom = addend;
        if (addend->kind() == TermKind::Scaled) {
            weight = addend->factor().to_complex();
            atom = addend->body();
        }
        auto key = decode_basis(atom, wires);
        if (!key) return false;
        out[*key] += weight;
        return true;
    };
    if (t->kind() == TermKind::Zero) return out;
    if (t->kind() == TermKind::Sum) {
        for (const auto& addend : t->addends())
            if (!add(addend)) return std::nullopt;
        return out;
    }
    if (!add(t)) return std::nullopt;
    return out;
}

bool close(const Amplitudes& a, const Amplitudes& b) {
    Amplitudes diff = a;
    for (const auto& [key, amp] : b) diff[key] -= amp;
    for (const auto& [key, amp] : diff)
        if (std::abs(amp) > 1e-9) return false;
    return true;
}

TermPtr basis_term(const std::string& key) {
    TermPtr t = key.back() == 't' ? bool_true() : bool_false();
    for (std::size_t k = key.size() - 1; k-- > 0;)
        t = tensor(key[k] == 't' ? bool_true() : bool_false(), t);
    return t;
}

TermPtr engine_nf(const TermPtr& t) {
    NormalizeOutcome o = normalize(t, 100000);
    REQUIRE(o.status == NormalizeStatus::Normal);
    return o.term;
}

}  // namespace

TEST_CASE("single-qubit gate strings agree with the matrix simulator") {
    struct Named {
        const char* name;
        TermPtr term;
        Gate gate;
    };
    const Named gates[] = {{"H", hadamard(), kH},
                           {"Phase", phase_gate(), kPhase},
                           {"Not", not_gate(), kX}};
    long checked = 0;
    // every gate string of length <= 4, on both basis inputs
    for (int len = 0; len <= 4; ++len) {
        std::vector<int> pick(len, 0);
        while (true) {
            for (const char* input : {"f", "t"}) {
                TermPtr term = basis_term(input);
                Amplitudes amps = basis_state(input);
                for (int k = 0; k < len; ++k) {
                    term = apply(gates[pick[k]].term, term);
                    apply_gate(amps, gates[pick[k]].gate, 0);
                }
                auto decoded = decode_state(engine_nf(term), 1);
                REQUIRE(decoded.has_value());
                CHECK(close(*decoded, amps));
                ++checked;
            }
            int k = len - 1;
            while (k >= 0 && pick[k] == 2) pick[k--] = 0;
            if (k < 0) break;
            ++pick[k];
        }
        if (len == 0) continue;
    }
    CHECK(checked >= 2 * (1 + 3 + 9 + 27 + 81));
}

TEST_CASE("two-qubit circuits agree with the matrix simulator") {
    struct Step {
        const char* name;
        TermPtr term;
        void (*sim)(Amplitudes&);
    };
    static const TermPtr h_i = big_tensor_of(hadamard(), identity());
    static const TermPtr i_h = big_tensor_of(identity(), hadamard());
    static const TermPtr h_h = big_tensor_of(hadamard(), hadamard());
    static const TermPtr p_i = big_tensor_of(phase_gate(), identity());
    const Step steps[] = {
        {"H(x)I", h_i, [](Amplitudes& a) { apply_gate(a, kH, 0); }},
        {"I(x)H", i_h, [](Amplitudes& a) { apply_gate(a, kH, 1); }},
        {"H(x)H", h_h,
         [](Amplitudes& a) {
             apply_gate(a, kH, 0);
             apply_gate(a, kH, 1);
         }},
        {"Phase(x)I", p_i, [](Amplitudes& a) { apply_gate(a, kPhase, 0); }},
        {"Cnot", cnot_gate(), apply_cnot},
    };
    const char* inputs[] = {"ff", "ft", "tf", "tt"};
    long checked = 0;
    for (int len = 1; len <= 3; ++len) {
        std::vector<int> pick(len, 0);
        while (true) {
            for (const char* input : inputs) {
                TermPtr term = basis_term(input);
                Amplitudes amps = basis_state(input);
                for (int k = 0; k < len; ++k) {
                    term = apply(steps[pick[k]].term, term);
                    steps[pick[k]].sim(amps);
                }
                auto decoded = decode_state(engine_nf(term), 2);
                REQUIRE(decoded.has_value());
                CHECK(close(*decoded, amps));
                ++checked;
            }
            int k = len - 1;
            while (k >= 0 && pick[k] == 4) pick[k--] = 0;
            if (k < 0) break;
            ++pick[k];
        }
    }
    CHECK(checked == 4 * (5 + 25 + 125));
}

TEST_CASE("deutsch outcomes agree with the matrix simulator") {
    auto run_sim = [&](bool constant, bool flip) {
        Amplitudes amps = basis_state("ft");
        apply_gate(amps, kH, 0);
        apply_gate(amps, kH, 1);
        if (constant) {
            if (flip) apply_gate(amps, kX, 1);
        } else {
            apply_cnot(amps);
        }
        apply_gate(amps, kH, 0);
        apply_gate(amps, kH, 1);
        return amps;
    };
    auto check_oracle = [&](const TermPtr& oracle, const Amplitudes& expected) {
        auto decoded = decode_state(engine_nf(apply(deutsch1(), oracle)), 2);
        REQUIRE(decoded.has_value());
        CHECK(close(*decoded, expected));
    };
    check_oracle(oracle_constant(false), run_sim(true, false));
    check_oracle(oracle_constant(true), run_sim(true, true));
    check_oracle(oracle_balanced_id(), run_sim(false, false));
}
