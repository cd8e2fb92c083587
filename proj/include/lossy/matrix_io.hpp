#pragma once

#include <string>

#include <json.hpp>

#include "lossy/matrix.hpp"

namespace lossy {

/// Thrown on malformed matrix text; message carries position context.
struct matrix_parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// JSON form: array of rows, each row an array of [re, im] pairs.
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

std::string matrix_to_json_text(const ComplexMatrix& m);
ComplexMatrix matrix_from_json_text(const std::string& text);

/// Whitespace-separated form: one matrix row per line, entries as
/// "re+imj" tokens (e.g. "0.5-0.25j"). Bare reals are accepted on input;
/// output always carries both parts with 17 significant digits.
std::string matrix_to_csv_text(const ComplexMatrix& m);
ComplexMatrix matrix_from_csv_text(const std::string& text);

/// Dispatch on leading character: '[' or '{' selects JSON, anything else CSV.
ComplexMatrix matrix_from_text(const std::string& text);

/// One complex token in the CSV format.
cplx parse_complex_token(const std::string& token);
std::string format_complex_token(const cplx& z);

/// Doubles rendered with 17 significant digits (%.17g), enough for an
/// exact binary round-trip.
std::string format_double(double x);

}  // namespace lossy
