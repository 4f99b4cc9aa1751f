#include "dyham/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace dyham::io {

namespace {

constexpr char kAlphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

std::string base64_encode(const std::vector<unsigned char>& bytes) {
    std::string out;
    out.reserve((bytes.size() + 2) / 3 * 4);
    std::size_t i = 0;
    for (; i + 3 <= bytes.size(); i += 3) {
        unsigned v = (bytes[i] << 16) | (bytes[i + 1] << 8) | bytes[i + 2];
        out.push_back(kAlphabet[(v >> 18) & 63]);
        out.push_back(kAlphabet[(v >> 12) & 63]);
        out.push_back(kAlphabet[(v >> 6) & 63]);
        out.push_back(kAlphabet[v & 63]);
    }
    std::size_t rest = bytes.size() - i;
    if (rest == 1) {
        unsigned v = bytes[i] << 16;
        out.push_back(kAlphabet[(v >> 18) & 63]);
        out.push_back(kAlphabet[(v >> 12) & 63]);
        out.push_back('=');
        out.push_back('=');
    } else if (rest == 2) {
        unsigned v = (bytes[i] << 16) | (bytes[i + 1] << 8);
        out.push_back(kAlphabet[(v >> 18) & 63]);
        out.push_back(kAlphabet[(v >> 12) & 63]);
        out.push_back(kAlphabet[(v >> 6) & 63]);
        out.push_back('=');
    }
    return out;
}

std::vector<unsigned char> base64_decode(const std::string& text) {
    static const auto table = [] {
        std::array<int, 256> t{};
        t.fill(-1);
        for (int k = 0; k < 64; ++k) t[static_cast<unsigned char>(kAlphabet[k])] = k;
        return t;
    }();
    if (text.size() % 4 != 0) throw ParseError("base64 payload length is not a multiple of 4");
    std::vector<unsigned char> out;
    out.reserve(text.size() / 4 * 3);
    for (std::size_t i = 0; i < text.size(); i += 4) {
        int pad = 0;
        unsigned v = 0;
        for (int k = 0; k < 4; ++k) {
            char ch = text[i + k];
            if (ch == '=') {
                if (i + 4 != text.size() || k < 2) throw ParseError("misplaced base64 padding");
                ++pad;
                v <<= 6;
                continue;
            }
            if (pad > 0) throw ParseError("misplaced base64 padding");
            int s = table[static_cast<unsigned char>(ch)];
            if (s < 0) throw ParseError(std::string("invalid base64 character '") + ch + "'");
            v = (v << 6) | static_cast<unsigned>(s);
        }
        out.push_back(static_cast<unsigned char>((v >> 16) & 0xFF));
        if (pad < 2) out.push_back(static_cast<unsigned char>((v >> 8) & 0xFF));
        if (pad < 1) out.push_back(static_cast<unsigned char>(v & 0xFF));
    }
    return out;
}

nlohmann::json parse_document(const std::string& text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what());  // message carries the byte offset
    }
}

struct Header {
    int n, j_min, J;
};

Header read_header(const nlohmann::json& doc, const char* expected_kind) {
    if (!doc.is_object()) throw ParseError("top-level JSON value is not an object");
    for (const char* key : {"kind", "n", "jmin", "J", "payload"})
        if (!doc.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
    if (!doc["kind"].is_string() || doc["kind"].get<std::string>() != expected_kind)
        throw ParseError(std::string("expected kind \"") + expected_kind + "\"");
    for (const char* key : {"n", "jmin", "J"})
        if (!doc[key].is_number_integer())
            throw ParseError(std::string("field \"") + key + "\" must be an integer");
    if (!doc["payload"].is_string()) throw ParseError("field \"payload\" must be a string");
    return Header{doc["n"].get<int>(), doc["jmin"].get<int>(), doc["J"].get<int>()};
}

GridGeometry geometry_from_header(const Header& h) {
    try {
        return GridGeometry(h.n, h.j_min, h.J);
    } catch (const std::exception& e) {
        throw ParseError(std::string("invalid geometry header: ") + e.what());
    }
}

void require_finite(const std::vector<double>& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!std::isfinite(v[i]))
            throw DataError("payload value " + std::to_string(i) + " is not finite");
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open " + path + " for writing");
    out << text;
}

nlohmann::json make_document(const char* kind, const GridGeometry& g,
                             const std::vector<double>& payload) {
    nlohmann::json doc;
    doc["kind"] = kind;
    doc["n"] = g.dim();
    doc["jmin"] = g.level_min();
    doc["J"] = g.level_max();
    doc["payload"] = encode_doubles(payload);
    return doc;
}

}  // namespace

std::string encode_doubles(const std::vector<double>& v) {
    std::vector<unsigned char> bytes;
    bytes.reserve(v.size() * 8);
    for (double d : v) {
        std::uint64_t u = std::bit_cast<std::uint64_t>(d);
        for (int k = 0; k < 8; ++k) bytes.push_back(static_cast<unsigned char>((u >> (8 * k)) & 0xFF));
    }
    return base64_encode(bytes);
}

std::vector<double> decode_doubles(const std::string& b64) {
    std::vector<unsigned char> bytes = base64_decode(b64);
    if (bytes.size() % 8 != 0) throw ParseError("payload byte count is not a multiple of 8");
    std::vector<double> out(bytes.size() / 8);
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::uint64_t u = 0;
        for (int k = 0; k < 8; ++k) u |= static_cast<std::uint64_t>(bytes[8 * i + k]) << (8 * k);
        out[i] = std::bit_cast<double>(u);
    }
    return out;
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string function_to_json(const GridFunction& f) {
    return make_document("function", f.geometry(), f.values()).dump() + "\n";
}

GridFunction function_from_json(const std::string& text) {
    nlohmann::json doc = parse_document(text);
    Header h = read_header(doc, "function");
    GridGeometry g = geometry_from_header(h);
    std::vector<double> payload = decode_doubles(doc["payload"].get<std::string>());
    if (static_cast<index_t>(payload.size()) != g.cell_count())
        throw ParseError("payload holds " + std::to_string(payload.size()) + " values, header implies " +
                         std::to_string(g.cell_count()));
    require_finite(payload);
    return GridFunction(g, std::move(payload));
}

void write_function_file(const std::string& path, const GridFunction& f) {
    write_text(path, function_to_json(f));
}

GridFunction read_function_file(const std::string& path) {
    return function_from_json(read_text(path));
}

std::string coefficients_to_json(const HaarCoefficients& c) {
    std::vector<double> payload;
    payload.reserve(1 + c.size());
    payload.push_back(c.base_mean());
    payload.insert(payload.end(), c.raw().begin(), c.raw().end());
    return make_document("coefficients", c.geometry(), payload).dump() + "\n";
}

HaarCoefficients coefficients_from_json(const std::string& text) {
    nlohmann::json doc = parse_document(text);
    Header h = read_header(doc, "coefficients");
    GridGeometry g = geometry_from_header(h);
    std::vector<double> payload = decode_doubles(doc["payload"].get<std::string>());
    HaarCoefficients c(g);
    if (payload.size() != 1 + c.size())
        throw ParseError("payload holds " + std::to_string(payload.size()) + " values, header implies " +
                         std::to_string(1 + c.size()));
    require_finite(payload);
    c.base_mean() = payload[0];
    std::copy(payload.begin() + 1, payload.end(), c.raw().begin());
    return c;
}

void write_coefficient_file(const std::string& path, const HaarCoefficients& c) {
    write_text(path, coefficients_to_json(c));
}

HaarCoefficients read_coefficient_file(const std::string& path) {
    return coefficients_from_json(read_text(path));
}

void ReportTable::add_meta(const std::string& key, const std::string& value) {
    meta_.emplace_back(key, value);
}

void ReportTable::set_columns(std::vector<std::string> names) { columns_ = std::move(names); }

void ReportTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != columns_.size())
        throw std::invalid_argument("row has " + std::to_string(cells.size()) + " cells, table has " +
                                    std::to_string(columns_.size()) + " columns");
    rows_.push_back(std::move(cells));
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += "\"\"";
        else out.push_back(ch);
    }
    out += "\"";
    return out;
}

void append_joined(std::string& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out.push_back(',');
        out += csv_escape(cells[i]);
    }
    out.push_back('\n');
}

}  // namespace

std::string ReportTable::to_csv() const {
    std::string out;
    for (const auto& [key, value] : meta_) out += "# " + key + ": " + value + "\n";
    append_joined(out, columns_);
    for (const auto& row : rows_) append_joined(out, row);
    return out;
}

void ReportTable::write(const std::string& path) const { write_text(path, to_csv()); }

}  // namespace dyham::io
