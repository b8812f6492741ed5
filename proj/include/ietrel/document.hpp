#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "ietrel/iet.hpp"
#include "ietrel/rotation.hpp"
#include "ietrel/scalar.hpp"
#include "ietrel/synthesis.hpp"
#include "ietrel/word.hpp"

// Text documents:
//
//   format: ietrel/1
//   field: Q(sqrt(2))          (or "field: Q")
//   kind: iet
//   breakpoints: 0, 1/4
//   translations: 3/4, -1/4
//
// One "key: value" per line, '#' starts a comment, blank lines are ignored.
// Every scalar must belong to the field named in the header.

namespace ietrel::io {

/// Parses "p/q", "p/q+r/s*sqrt(D)", "-sqrt(D)", ... Whitespace is ignored.
/// `field` is the ambient discriminant (0 for Q); a sqrt(D') with D' != field
/// throws ContextMismatch.
QuadExt parse_scalar(std::string_view text, std::int64_t field);
std::string format_scalar(const QuadExt& x);

/// Tokens "a", "b^-1", "a^70"; "e" or nothing for the empty word. The result
/// is freely reduced.
Word parse_word(std::string_view text);
/// Exponent 1 is omitted; the empty word prints as "e".
std::string format_word(const Word& w);

using Payload = std::variant<QuadExt, PermLambdaSpec, Iet, RotationSpec, Word, RelationCertificate>;

struct Document {
    /// Discriminant of the ambient field, 0 for Q.
    std::int64_t field = 0;
    Payload payload;
};

std::string_view kind_name(const Payload& payload);

Document parse_document(std::string_view text);
/// Canonical emission; parse_document(emit_document(d)) reproduces d.
std::string emit_document(const Document& doc);

/// Smallest field containing every scalar of the payload, or `fallback` when
/// they are all rational.
std::int64_t payload_field(const Payload& payload, std::int64_t fallback = 0);

/// CSV with header "n,discontinuities,l1_exact,l1_float" for f^1..f^max_n.
std::string discontinuity_growth_csv(const Iet& f, std::int64_t max_n);

} // namespace ietrel::io
