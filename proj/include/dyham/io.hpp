#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "dyham/haar.hpp"

namespace dyham::io {

// Malformed container: bad JSON, wrong kind, missing fields, bad base64,
// payload length mismatch.  Carries the underlying position info when the
// JSON parser provides it.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Well-formed container holding unusable numbers (NaN / infinity).
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Base64 (standard alphabet, padded) over the little-endian bytes of the
// IEEE-754 doubles; the payload encoding shared by both file kinds.
std::string encode_doubles(const std::vector<double>& v);
std::vector<double> decode_doubles(const std::string& b64);  // throws ParseError

// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double v);

// A function file is a single JSON document
//   {"J":..,"jmin":..,"kind":"function","n":..,"payload":"<base64>"}
// whose payload holds the 2^{(J-jmin) n} cell values, row-major.  Coefficient
// files use kind "coefficients" and prepend the base mean to the coefficient
// slots, so their payload holds 1 + (slot count) values.
std::string function_to_json(const GridFunction& f);
GridFunction function_from_json(const std::string& text);
void write_function_file(const std::string& path, const GridFunction& f);
GridFunction read_function_file(const std::string& path);

std::string coefficients_to_json(const HaarCoefficients& c);
HaarCoefficients coefficients_from_json(const std::string& text);
void write_coefficient_file(const std::string& path, const HaarCoefficients& c);
HaarCoefficients read_coefficient_file(const std::string& path);

// CSV with a '#'-prefixed metadata preamble.  Cells and metadata are emitted
// in insertion order and numbers should be formatted with format_double, so a
// table built from the same inputs is reproduced byte for byte.
class ReportTable {
public:
    void add_meta(const std::string& key, const std::string& value);
    void set_columns(std::vector<std::string> names);
    void add_row(std::vector<std::string> cells);

    std::size_t row_count() const { return rows_.size(); }
    const std::vector<std::string>& column_names() const { return columns_; }

    std::string to_csv() const;
    void write(const std::string& path) const;

private:
    std::vector<std::pair<std::string, std::string>> meta_;
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

}  // namespace dyham::io
