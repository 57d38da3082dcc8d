#include "tlra/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "tlra/errors.hpp"

namespace tlra {

namespace {

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

double parse_double(const std::string& field, const std::string& where) {
    const char* first = field.data();
    const char* last = first + field.size();
    while (first != last && (*first == ' ' || *first == '\t')) ++first;
    while (last != first && (last[-1] == ' ' || last[-1] == '\t')) --last;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || first == last)
        throw ParseError("not a number at " + where + ": \"" + field + "\"");
    return value;
}

}  // namespace

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string::size_type start = 0;
    while (true) {
        auto comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

LabeledMatrix read_labeled_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty file " + path.string());
    line = strip_cr(line);
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);

    auto header = split_csv_line(line);
    if (header.size() < 2) throw ParseError("header needs at least one column in " + path.string());

    LabeledMatrix out;
    out.col_labels.assign(header.begin() + 1, header.end());
    const auto n_cols = out.col_labels.size();

    std::vector<std::vector<double>> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != n_cols + 1)
            throw ParseError("ragged row at " + path.string() + ":" + std::to_string(line_no) +
                             " (" + std::to_string(fields.size() - 1) + " values, expected " +
                             std::to_string(n_cols) + ")");
        out.row_labels.push_back(fields[0]);
        std::vector<double> row(n_cols);
        for (std::size_t j = 0; j < n_cols; ++j)
            row[j] = parse_double(fields[j + 1],
                                  path.string() + ":" + std::to_string(line_no));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("no data rows in " + path.string());

    out.values.resize(static_cast<Index>(rows.size()), static_cast<Index>(n_cols));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < n_cols; ++j)
            out.values(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
    return out;
}

std::string labeled_csv_string(const LabeledMatrix& table) {
    std::ostringstream body;
    body << "id";
    for (const auto& label : table.col_labels) body << ',' << label;
    body << '\n';
    for (Index i = 0; i < table.values.rows(); ++i) {
        body << table.row_labels[static_cast<std::size_t>(i)];
        for (Index j = 0; j < table.values.cols(); ++j)
            body << ',' << format_double(table.values(i, j));
        body << '\n';
    }
    return body.str();
}

void write_labeled_csv(const std::filesystem::path& path, const LabeledMatrix& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path.string());
    out << labeled_csv_string(table);
}

std::vector<double> read_number_line(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty file " + path.string());
    line = strip_cr(line);
    auto fields = split_csv_line(line);
    std::vector<double> values;
    values.reserve(fields.size());
    for (std::size_t j = 0; j < fields.size(); ++j)
        values.push_back(parse_double(fields[j], path.string() + " field " + std::to_string(j + 1)));
    return values;
}

std::string format_double(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;
    return std::string(buf, ptr);
}

}  // namespace tlra
