#pragma once

#include <string>
#include <string_view>

#include "scadkit/error.hpp"
#include "scadkit/model.hpp"

namespace scadkit {

/// Parses `.sc` JSON text. Unrecognized keys at the design, helix, strand,
/// domain and modification levels land in the matching `extra_fields` bag.
/// Does not validate.
///
/// Throws ParseError for malformed JSON (with line/column) and SchemaError
/// when a recognized key holds a value of the wrong type.
Design parse_design(std::string_view text);
Design design_from_json(const Json& root);

/// Serializes a valid design; throws InvalidDesign otherwise. Default values
/// (min_offset 0, zero angles, is_scaffold false, ...) are omitted.
std::string serialize_design(const Design& design, int indent = 2);
Json design_to_json(const Design& design);

/// Parses JSON text with line/column error reporting.
Json parse_json_text(std::string_view text);

}  // namespace scadkit
