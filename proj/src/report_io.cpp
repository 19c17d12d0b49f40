#include "kwidth/report_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace kwidth::io {

namespace {

int parse_int(const std::string& text) {
    int v = 0;
    const auto* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, v);
    if (res.ec != std::errc() || res.ptr != end) throw Error(ErrorKind::IoFailure, "not an integer: '" + text + "'");
    return v;
}

ExtendedReal parse_extended(const std::string& text) {
    if (text == "inf") return ExtendedReal::infinity();
    const double v = parse_double(text);
    if (!std::isfinite(v) || v < 0.0) throw Error(ErrorKind::IoFailure, "not a width value: '" + text + "'");
    return ExtendedReal::finite(v);
}

std::string format_extended(const ExtendedReal& x) {
    return x.is_infinite() ? std::string("inf") : format_double(x.value());
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(17);
    os << v;
    return os.str();
}

double parse_double(const std::string& text) {
    if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (text == "inf") return std::numeric_limits<double>::infinity();
    if (text == "-inf") return -std::numeric_limits<double>::infinity();
    std::istringstream is(text);
    is.imbue(std::locale::classic());
    double v = 0.0;
    is >> v;
    if (is.fail() || !is.eof()) throw Error(ErrorKind::IoFailure, "not a number: '" + text + "'");
    return v;
}

Json to_json(const ExtendedReal& x) {
    if (x.is_infinite()) return "inf";
    return x.value();
}

ExtendedReal extended_from_json(const Json& j) {
    if (j.is_string() && j.get<std::string>() == "inf") return ExtendedReal::infinity();
    if (j.is_number()) return ExtendedReal::finite(j.get<double>());
    throw Error(ErrorKind::IoFailure, "expected a number or \"inf\", got " + j.dump());
}

Json to_json(const widths::WidthReport2D& r) {
    Json j;
    j["p"] = r.p;
    j["N"] = r.N;
    j["grid"] = r.m;
    j["value"] = to_json(r.value);
    j["jackson_bound"] = r.jackson_bound;
    j["oracle_value"] = to_json(r.oracle_value);
    j["lambda_next"] = r.lambda_next;
    return j;
}

widths::WidthReport2D width_report_from_json(const Json& j) {
    try {
        widths::WidthReport2D r;
        r.p = j.at("p").get<int>();
        r.N = j.at("N").get<int>();
        r.m = j.at("grid").get<int>();
        r.value = extended_from_json(j.at("value"));
        r.jackson_bound = j.at("jackson_bound").get<double>();
        r.oracle_value = extended_from_json(j.at("oracle_value"));
        r.lambda_next = j.at("lambda_next").get<double>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::IoFailure, std::string("malformed width report: ") + e.what());
    }
}

std::string to_csv(const CsvTable& table) {
    std::string out;
    auto line = [&out](const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i > 0) out += ',';
            out += fields[i];
        }
        out += '\n';
    };
    line(table.header);
    for (const auto& row : table.rows) line(row);
    return out;
}

CsvTable parse_csv(const std::string& text) {
    CsvTable table;
    std::istringstream is(text);
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') throw Error(ErrorKind::IoFailure, "CSV must use LF line endings");
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            fields.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (first) {
            table.header = std::move(fields);
            first = false;
        } else {
            if (fields.size() != table.header.size()) throw Error(ErrorKind::IoFailure, "ragged CSV row: " + line);
            table.rows.push_back(std::move(fields));
        }
    }
    if (first) throw Error(ErrorKind::IoFailure, "CSV has no header");
    return table;
}

WidthRow to_row(const widths::WidthReport2D& r) {
    return {r.p, r.N, r.m, r.value, r.oracle_value, ExtendedReal::finite(r.jackson_bound)};
}

CsvTable widths_table(const std::vector<WidthRow>& rows) {
    CsvTable t{{"p", "N", "m", "value", "oracle", "bound"}, {}};
    for (const auto& r : rows) {
        t.rows.push_back({std::to_string(r.p), std::to_string(r.N), std::to_string(r.m), format_extended(r.value),
                          r.oracle ? format_extended(*r.oracle) : std::string("nan"), format_extended(r.bound)});
    }
    return t;
}

std::vector<WidthRow> load_widths_table(const CsvTable& table) {
    if (table.header != widths_table({}).header) throw Error(ErrorKind::IoFailure, "unexpected widths header");
    std::vector<WidthRow> rows;
    for (const auto& f : table.rows) {
        WidthRow r;
        r.p = parse_int(f[0]);
        r.N = parse_int(f[1]);
        r.m = parse_int(f[2]);
        r.value = parse_extended(f[3]);
        if (f[4] != "nan") r.oracle = parse_extended(f[4]);
        r.bound = parse_extended(f[5]);
        rows.push_back(r);
    }
    return rows;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw Error(ErrorKind::IoFailure, "cannot open " + path.string() + " for writing");
    os << text;
    if (!os) throw Error(ErrorKind::IoFailure, "write to " + path.string() + " failed");
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error(ErrorKind::IoFailure, "cannot open " + path.string());
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

void write_json(const std::filesystem::path& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

Json read_json(const std::filesystem::path& path) {
    try {
        return Json::parse(read_text(path));
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::IoFailure, path.string() + ": " + e.what());
    }
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) { write_text(path, to_csv(table)); }

CsvTable read_csv(const std::filesystem::path& path) { return parse_csv(read_text(path)); }

}  // namespace kwidth::io
