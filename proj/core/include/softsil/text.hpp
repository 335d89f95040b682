#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace softsil {

/// Shortest decimal text that parses back to exactly the same double.
std::string format_real(double value);

/// Strict decimal parse of the whole string; nullopt on any trailing garbage.
std::optional<double> parse_real(std::string_view text);

/// CSV field text: quoted, with doubled inner quotes, when it contains a
/// comma, a quote or a line break; unchanged otherwise.
std::string csv_field(std::string_view text);

/// Splits one CSV record, undoing csv_field quoting. Throws ParseError
/// (line 1) on an unterminated quote or text after a closing quote.
std::vector<std::string> split_csv_record(std::string_view row);

/// `name(opt1,opt2,...)` split into the name and its option list.
/// Whitespace is not permitted; an empty option list `name()` is rejected.
struct SpecText {
    std::string name;
    std::vector<std::string> options;
};
SpecText split_spec_text(std::string_view text);

}  // namespace softsil
