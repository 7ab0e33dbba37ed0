#include "mocasm/bench/csv_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "mocasm/error.hpp"

namespace mocasm::bench {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '"')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '"'))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line, char delim) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(delim, start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::optional<double> parse_number(std::string_view s) {
    if (s.empty()) return std::nullopt;
    if (s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

bool blank(std::string_view line) { return trim(line).empty(); }

void append_number(std::string& out, double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, ptr);
}

}  // namespace

LabelColumn LabelColumn::parse(const std::string& text) {
    if (text.empty()) return none();
    if (std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); })) {
        return at(static_cast<std::size_t>(std::stoull(text)));
    }
    return named(text);
}

Dataset parse_csv(const std::filesystem::path& path, const CsvOptions& options) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path.string() + "'");
    return parse_csv(in, options);
}

Dataset parse_csv(std::istream& in, const CsvOptions& options) {
    const bool header = options.header || options.label.name.has_value();
    std::optional<std::size_t> label_col = options.label.index;
    std::size_t columns = 0;
    std::size_t rows = 0;
    std::vector<double> values;
    std::vector<int> labels;
    std::vector<std::string> class_names;
    std::map<std::string, int, std::less<>> class_ids;

    std::string line;
    std::size_t line_no = 0;
    bool header_pending = header;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line)) continue;
        const auto cells = split(line, options.delimiter);
        if (header_pending) {
            header_pending = false;
            columns = cells.size();
            if (options.label.name) {
                const auto it = std::find(cells.begin(), cells.end(), *options.label.name);
                if (it == cells.end()) {
                    throw DataError("label column '" + *options.label.name + "' not found in header", line_no);
                }
                label_col = static_cast<std::size_t>(it - cells.begin());
            }
            continue;
        }
        if (columns == 0) columns = cells.size();
        if (cells.size() != columns) {
            throw DataError("ragged row: expected " + std::to_string(columns) + " fields, found " +
                            std::to_string(cells.size()),
                            line_no);
        }
        if (label_col && *label_col >= columns) {
            throw DataError("label column " + std::to_string(*label_col) + " out of range for " +
                            std::to_string(columns) + " fields",
                            line_no);
        }
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (label_col && c == *label_col) {
                const auto [it, inserted] = class_ids.try_emplace(std::string(cells[c]), static_cast<int>(class_ids.size()));
                if (inserted) class_names.emplace_back(cells[c]);
                labels.push_back(it->second);
                continue;
            }
            const auto v = parse_number(cells[c]);
            if (!v) {
                throw DataError("non-numeric feature '" + std::string(cells[c]) + "' in column " + std::to_string(c),
                                line_no);
            }
            values.push_back(*v);
        }
        ++rows;
    }
    if (rows == 0) throw DataError("dataset is empty");
    const std::size_t dims = columns - (label_col ? 1 : 0);
    if (dims == 0) throw DataError("dataset has no feature columns");
    std::optional<std::vector<int>> lab;
    if (label_col) lab = std::move(labels);
    return Dataset(rows, dims, std::move(values), std::move(lab), std::move(class_names));
}

void write_assignments(std::ostream& out, const std::vector<int>& assignment) {
    out << "object_id,cluster_id\n";
    for (std::size_t i = 0; i < assignment.size(); ++i) out << i << ',' << assignment[i] << '\n';
}

void write_assignments(const std::filesystem::path& path, const std::vector<int>& assignment) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path.string() + "'");
    write_assignments(out, assignment);
}

std::vector<int> read_assignments(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path.string() + "'");
    return read_assignments(in);
}

std::vector<int> read_assignments(std::istream& in) {
    std::vector<std::pair<std::size_t, int>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line)) continue;
        const auto cells = split(line, ',');
        if (cells.size() != 2) throw DataError("assignment rows need 2 fields", line_no);
        const auto id = parse_number(cells[0]);
        const auto cluster = parse_number(cells[1]);
        if (!id || !cluster) {
            if (rows.empty() && line_no == 1) continue;  // header
            throw DataError("non-numeric assignment row", line_no);
        }
        if (*id < 0 || *id != static_cast<double>(static_cast<std::size_t>(*id))) {
            throw DataError("object id must be a non-negative integer", line_no);
        }
        rows.emplace_back(static_cast<std::size_t>(*id), static_cast<int>(*cluster));
    }
    std::vector<int> out(rows.size());
    std::vector<char> seen(rows.size(), 0);
    for (const auto& [id, cluster] : rows) {
        if (id >= rows.size() || seen[id]) {
            throw DataError("object ids must cover 0.." + std::to_string(rows.size() - 1) + " exactly once");
        }
        seen[id] = 1;
        out[id] = cluster;
    }
    return out;
}

void write_dataset(std::ostream& out, const Dataset& data) {
    std::string buf;
    for (std::size_t a = 0; a < data.dims(); ++a) {
        if (a) buf += ',';
        buf += 'x' + std::to_string(a);
    }
    if (data.has_labels()) buf += ",label";
    buf += '\n';
    for (ObjectId i = 0; i < data.size(); ++i) {
        for (std::size_t a = 0; a < data.dims(); ++a) {
            if (a) buf += ',';
            append_number(buf, data.at(i, a));
        }
        if (data.has_labels()) {
            const int label = (*data.labels())[i];
            const auto& names = data.class_names();
            buf += ',';
            buf += static_cast<std::size_t>(label) < names.size() ? names[label] : std::to_string(label);
        }
        buf += '\n';
    }
    out << buf;
}

}  // namespace mocasm::bench
