#pragma once

#include "lambdalin/term.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lambdalin {

struct SourceSpan {
    std::size_t start = 0;  // byte offsets, start <= end
    std::size_t end = 0;
    int line = 1;
    int column = 1;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, SourceSpan span)
        : std::runtime_error(std::move(message)), span_(span) {}
    const SourceSpan& span() const { return span_; }

private:
    SourceSpan span_;
};

/// Ordered name -> term bindings (a prelude or the result of parsing a
/// program). Order matters: the printer prefers the earliest match.
using Bindings = std::vector<std::pair<std::string, TermPtr>>;

/// Parse one term. Identifiers resolve to lambda-bound variables first, then
/// to `names` (expanded in place), and otherwise stay free variables.
/// `<name>` atoms always refer to `names`. Throws ParseError.
TermPtr parse_term(std::string_view src, const Bindings* names = nullptr);

/// Parse a sequence of `let name = term;` bindings. Later bindings may use
/// earlier ones (and `prelude` entries); free identifiers and duplicate names
/// are errors. Returns only the new bindings, fully expanded.
Bindings parse_program(std::string_view src, const Bindings* prelude = nullptr);

/// Parse a scalar expression, e.g. "sqrt2/2 * (1 + i)".
Scalar parse_scalar(std::string_view src);

/// Deterministic rendering; reparsing yields an alpha_ac_equal term. With
/// `names`, subterms equal to a binding print as `<name>`.
std::string print_term(const TermPtr& t, const Bindings* names = nullptr);

std::string print_scalar(const Scalar& s);

}  // namespace lambdalin
