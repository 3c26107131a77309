#pragma once

#include "lambdalin/parser.hpp"
#include "lambdalin/term.hpp"

#include <string>

namespace lambdalin::prelude {

// Booleans as projections.
TermPtr bool_true();   // \x.\y.x
TermPtr bool_false();  // \x.\y.y
TermPtr identity();    // \x.x
TermPtr not_gate();    // \y.(y false true)

// Packaging. quote(t) wraps t under a dummy binder, turning any state into a
// base vector (its "classical description"); unquote applies to a fixed base
// vector to recover it, so unquote(quote(t)) steps to t.
TermPtr quote(const TermPtr& t);
TermPtr unquote(const TermPtr& t);

// Unary gates.
TermPtr phase_gate();  // places omega8 on true only
TermPtr hadamard();

// Pairs as linear tensors.
TermPtr tensor_op();   // \x.\y.\f.(f x y)
TermPtr proj1();       // \p.(p (\x.\y.x))
TermPtr proj2();       // \p.(p (\x.\y.y))
TermPtr big_tensor();  // maps gates f, g to the gate f (x) g
TermPtr tensor(const TermPtr& a, const TermPtr& b);
TermPtr big_tensor_of(const TermPtr& f, const TermPtr& g);

TermPtr cnot_gate();

/// Church numeral \x.\f.(f^n x).
TermPtr church(unsigned n);

TermPtr hadamard2();  // big_tensor_of(H, H)
TermPtr deutsch1();   // one-qubit Deutsch circuit, parametric in the oracle
TermPtr deutsch();    // Deutsch-Jozsa, parametric in the qubit count

TermPtr y_combinator();

// Oracle builders for the Deutsch circuit at one qubit.
TermPtr oracle_constant(bool value);
TermPtr oracle_balanced_id();

/// All of the above as ordered named bindings (also shipped as prelude.lal).
const Bindings& bindings();

/// The prelude as source text; parsing it reproduces bindings().
const std::string& source();

}  // namespace lambdalin::prelude
