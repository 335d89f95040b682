#include "softsil/text.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <system_error>

#include "softsil/errors.hpp"

namespace softsil {

std::string format_real(double value) {
    std::array<char, 64> buffer{};
    const auto result = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    return std::string(buffer.data(), result.ptr);
}

std::optional<double> parse_real(std::string_view text) {
    if (text.empty()) return std::nullopt;
    if (text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc{} || result.ptr != text.data() + text.size()) return std::nullopt;
    return value;
}

SpecText split_spec_text(std::string_view text) {
    SpecText out;
    const auto open = text.find('(');
    if (open == std::string_view::npos) {
        out.name = std::string(text);
    } else {
        if (text.back() != ')') throw ConfigError("unbalanced parentheses in '" + std::string(text) + "'");
        out.name = std::string(text.substr(0, open));
        std::string_view inner = text.substr(open + 1, text.size() - open - 2);
        if (inner.empty()) throw ConfigError("empty option list in '" + std::string(text) + "'");
        while (true) {
            const auto comma = inner.find(',');
            std::string_view item = inner.substr(0, comma);
            if (item.empty()) throw ConfigError("empty option in '" + std::string(text) + "'");
            out.options.emplace_back(item);
            if (comma == std::string_view::npos) break;
            inner.remove_prefix(comma + 1);
        }
    }
    if (out.name.empty()) throw ConfigError("missing name in '" + std::string(text) + "'");
    for (char c : out.name) {
        if (!((c >= 'a' && c <= 'z') || c == '-')) {
            throw ConfigError("invalid character in name '" + out.name + "'");
        }
    }
    return out;
}

std::string csv_field(std::string_view text) {
    if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::vector<std::string> split_csv_record(std::string_view row) {
    std::vector<std::string> out(1);
    std::size_t i = 0;
    bool field_start = true;
    while (i < row.size()) {
        const char c = row[i];
        if (field_start && c == '"') {
            ++i;
            for (;;) {
                if (i >= row.size()) throw ParseError(1, "unterminated quoted CSV field");
                if (row[i] == '"') {
                    if (i + 1 < row.size() && row[i + 1] == '"') {
                        out.back() += '"';
                        i += 2;
                        continue;
                    }
                    ++i;
                    break;
                }
                out.back() += row[i++];
            }
            if (i < row.size() && row[i] != ',') throw ParseError(1, "text after a closing quote in CSV field");
            field_start = false;
            continue;
        }
        if (c == ',') {
            out.emplace_back();
            field_start = true;
        } else {
            out.back() += c;
            field_start = false;
        }
        ++i;
    }
    return out;
}

}  // namespace softsil
