#include "lambdalin/stdlib.hpp"

#include <algorithm>

namespace lambdalin::prelude {

namespace {

TermPtr var(const char* n) { return variable(n); }

}  // namespace

TermPtr bool_true() { return lambda("x", lambda("y", var("x"))); }

TermPtr bool_false() { return lambda("x", lambda("y", var("y"))); }

TermPtr identity() { return lambda("x", var("x")); }

TermPtr not_gate() {
    return lambda("y", apply(apply(var("y"), bool_false()), bool_true()));
}

TermPtr quote(const TermPtr& t) {
    std::string binder = "q";
    const auto& free = t->free_vars();
    while (std::binary_search(free.begin(), free.end(), binder)) binder += '\'';
    return lambda(binder, t);
}

TermPtr unquote(const TermPtr& t) { return apply(t, bool_false()); }

TermPtr phase_gate() {
    TermPtr selected = apply(apply(var("y"), quote(scaled(Scalar::omega8(), bool_true()))),
                             quote(bool_false()));
    return lambda("y", unquote(selected));
}

TermPtr hadamard() {
    // true selects the first branch, so the minus state comes first.
    const Scalar half_sqrt2(Rational(0), Rational(1, 2), Rational(0), Rational(0));
    TermPtr plus = scaled(half_sqrt2, sum({bool_false(), bool_true()}));
    TermPtr minus = scaled(half_sqrt2, sum({bool_false(), scaled(Scalar(-1), bool_true())}));
    TermPtr selected = apply(apply(var("y"), quote(minus)), quote(plus));
    return lambda("y", unquote(selected));
}

TermPtr tensor_op() {
    return lambda("x", lambda("y", lambda("f", apply(apply(var("f"), var("x")), var("y")))));
}

TermPtr proj1() { return lambda("p", apply(var("p"), bool_true())); }

TermPtr proj2() { return lambda("p", apply(var("p"), bool_false())); }

TermPtr tensor(const TermPtr& a, const TermPtr& b) {
    return apply(apply(tensor_op(), a), b);
}

TermPtr big_tensor() {
    TermPtr left = apply(var("f"), apply(proj1(), var("x")));
    TermPtr right = apply(var("g"), apply(proj2(), var("x")));
    return lambda("f", lambda("g", lambda("x", apply(apply(tensor_op(), left), right))));
}

TermPtr big_tensor_of(const TermPtr& f, const TermPtr& g) {
    return apply(apply(big_tensor(), f), g);
}

TermPtr cnot_gate() {
    TermPtr first = apply(proj1(), var("x"));
    TermPtr second = apply(proj2(), var("x"));
    TermPtr flipped = apply(apply(first, apply(not_gate(), second)), second);
    return lambda("x", apply(apply(tensor_op(), first), flipped));
}

TermPtr church(unsigned n) {
    TermPtr body = var("x");
    for (unsigned k = 0; k < n; ++k) body = apply(var("f"), body);
    return lambda("x", lambda("f", body));
}

TermPtr hadamard2() { return big_tensor_of(hadamard(), hadamard()); }

TermPtr deutsch1() {
    TermPtr input = apply(hadamard2(), tensor(bool_false(), bool_true()));
    return lambda("x", apply(hadamard2(), apply(var("x"), input)));
}

TermPtr deutsch() {
    // (n H \y.(H (x) y)) builds H on n+1 wires; (n true \y.(false (x) y))
    // builds the false...false true input column.
    TermPtr iter_h = lambda("y", big_tensor_of(hadamard(), var("y")));
    TermPtr wires_h = apply(apply(var("n"), hadamard()), iter_h);
    TermPtr iter_in = lambda("y", tensor(bool_false(), var("y")));
    TermPtr input = apply(apply(var("n"), bool_true()), iter_in);
    TermPtr wires_h2 = apply(apply(var("n"), hadamard()), iter_h);
    TermPtr body = apply(wires_h, apply(var("x"), apply(wires_h2, input)));
    return lambda("n", lambda("x", body));
}

TermPtr y_combinator() {
    TermPtr half = lambda("x", sum({var("y"), apply(var("x"), var("x"))}));
    return lambda("y", apply(half, half));
}

TermPtr oracle_constant(bool value) {
    if (!value) return identity();
    TermPtr first = apply(proj1(), var("x"));
    TermPtr second = apply(not_gate(), apply(proj2(), var("x")));
    return lambda("x", apply(apply(tensor_op(), first), second));
}

TermPtr oracle_balanced_id() { return cnot_gate(); }

const Bindings& bindings() {
    static const Bindings table = [] {
        Bindings b;
        b.emplace_back("true", bool_true());
        b.emplace_back("false", bool_false());
        b.emplace_back("id", identity());
        b.emplace_back("Not", not_gate());
        b.emplace_back("Phase", phase_gate());
        b.emplace_back("H", hadamard());
        b.emplace_back("tensor", tensor_op());
        b.emplace_back("pi1", proj1());
        b.emplace_back("pi2", proj2());
        b.emplace_back("btensor", big_tensor());
        b.emplace_back("H2", hadamard2());
        b.emplace_back("Cnot", cnot_gate());
        b.emplace_back("Dj1", deutsch1());
        b.emplace_back("Dj", deutsch());
        b.emplace_back("Y", y_combinator());
        for (unsigned n = 0; n <= 3; ++n)
            b.emplace_back("c" + std::to_string(n), church(n));
        b.emplace_back("oracle_const_false", oracle_constant(false));
        b.emplace_back("oracle_const_true", oracle_constant(true));
        b.emplace_back("oracle_balanced_id", oracle_balanced_id());
        return b;
    }();
    return table;
}

const std::string& source() {
    static const std::string text = [] {
        std::string out = "# standard encodings: booleans, gates, tensors, numerals\n";
        for (const auto& [name, term] : bindings())
            out += "let " + name + " = " + print_term(term) + ";\n";
        return out;
    }();
    return text;
}

}  // namespace lambdalin::prelude
