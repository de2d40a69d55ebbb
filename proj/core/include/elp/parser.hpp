#pragma once

#include "elp/errors.hpp"
#include "elp/model.hpp"

#include <string>
#include <string_view>

namespace elp {

/// 1-based position in the input text.
struct SourceSpan {
    int line = 1;
    int column = 1;

    bool operator==(const SourceSpan&) const = default;
};

class ParseError : public Error {
public:
    ParseError(SourceSpan where, const std::string& message);

    SourceSpan where() const { return where_; }
    /// The message without the position prefix.
    const std::string& detail() const { return detail_; }

private:
    SourceSpan where_;
    std::string detail_;
};

struct ParseOptions {
    /// Accept `not not l` before objective literals.
    bool allow_double_negation = false;
    /// Reject subjective literals (ASP input).
    bool asp_only = false;
};

/// Ground ELP text:
///
///     rule := head? (":-" body)? "."
///     head := lit (("|" | "or") lit)*
///     body := elem ("," elem)*
///     elem := ("not" "not"?)? (("K" | "M") lit | lit)
///     lit  := "-"? ident ("(" const ("," const)* ")")?
///
/// `%` starts a comment running to the end of the line. Identifiers starting
/// with an uppercase letter or `_` are variables and are rejected.
Program parse_elp(std::string_view text, ParseOptions options = {});

/// Ground ASP text: as parse_elp, but `not not l` is allowed and subjective
/// literals are rejected.
Program parse_asp(std::string_view text);

/// Plain ASP text for an ASP program, one rule per line. Throws
/// ContractError for programs with subjective literals.
std::string emit_asp(const Program& program);

/// Same layout as emit_asp but accepts subjective literals.
std::string emit_elp(const Program& program);

std::string to_string(const Rule& rule);

} // namespace elp
