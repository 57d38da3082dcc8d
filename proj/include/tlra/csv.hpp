#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>
#include <vector>

namespace tlra {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Rectangular numeric table with a header row of column labels and a leading
/// column of row labels. The corner cell of the header is ignored on read and
/// written as "id".
struct LabeledMatrix {
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
    Matrix values;
};

LabeledMatrix read_labeled_csv(const std::filesystem::path& path);
std::string labeled_csv_string(const LabeledMatrix& table);
void write_labeled_csv(const std::filesystem::path& path, const LabeledMatrix& table);

/// One line of comma-separated numbers, no labels. Used for weight files.
std::vector<double> read_number_line(const std::filesystem::path& path);

/// Shortest decimal string that round-trips the value exactly.
std::string format_double(double value);

/// Split one CSV record on commas. No quoting; labels must not contain commas.
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace tlra
