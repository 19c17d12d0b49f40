#pragma once

// Report serialisation. JSON keeps insertion order; CSV uses LF line endings,
// '.' as decimal separator and 17 significant digits, so every double
// survives a write/read cycle bit for bit.

#include "kwidth/core.hpp"
#include "kwidth/widths.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace kwidth::io {

using Json = nlohmann::ordered_json;

/// Shortest round-trip-safe text: 17 significant digits, "inf", "-inf" or "nan".
std::string format_double(double v);
double parse_double(const std::string& text);

Json to_json(const ExtendedReal& x);
/// Accepts a number or the string "inf". Throws IoFailure otherwise.
ExtendedReal extended_from_json(const Json& j);

Json to_json(const widths::WidthReport2D& r);
widths::WidthReport2D width_report_from_json(const Json& j);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    friend bool operator==(const CsvTable&, const CsvTable&) = default;
};

std::string to_csv(const CsvTable& table);
/// Plain comma-separated fields without quoting. Throws IoFailure on ragged rows.
CsvTable parse_csv(const std::string& text);

/// One line of a width table. oracle is empty when no brute-force value was
/// computed (written as "nan").
struct WidthRow {
    int p = 0;
    int N = 0;
    int m = 0;
    ExtendedReal value = ExtendedReal::infinity();
    std::optional<ExtendedReal> oracle;
    ExtendedReal bound = ExtendedReal::infinity();

    friend bool operator==(const WidthRow&, const WidthRow&) = default;
};

WidthRow to_row(const widths::WidthReport2D& r);
/// Header p,N,m,value,oracle,bound.
CsvTable widths_table(const std::vector<WidthRow>& rows);
std::vector<WidthRow> load_widths_table(const CsvTable& table);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const Json& j);
Json read_json(const std::filesystem::path& path);
void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace kwidth::io
