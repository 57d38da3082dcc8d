#pragma once

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "tlra/csv.hpp"

// Fresh per-process scratch directory for file-based tests.
inline std::filesystem::path test_dir(const std::string& tag) {
    auto dir = std::filesystem::temp_directory_path() /
               ("tlra_tests_" + std::to_string(::getpid())) / tag;
    std::filesystem::create_directories(dir);
    return dir;
}

inline void write_text(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

inline std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline tlra::Matrix random_matrix(std::mt19937_64& rng, tlra::Index rows, tlra::Index cols,
                                  double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    tlra::Matrix m(rows, cols);
    for (tlra::Index i = 0; i < rows; ++i)
        for (tlra::Index j = 0; j < cols; ++j) m(i, j) = dist(rng);
    return m;
}

inline tlra::Matrix random_positive(std::mt19937_64& rng, tlra::Index rows, tlra::Index cols) {
    return random_matrix(rng, rows, cols, 0.2, 3.0);
}

// Plain (uniform-weight) double centering.
inline tlra::Matrix double_center(const tlra::Matrix& m) {
    const double rows = static_cast<double>(m.rows());
    const double cols = static_cast<double>(m.cols());
    tlra::Vector row_means = m.rowwise().sum() / cols;
    tlra::Vector col_means = m.colwise().sum().transpose() / rows;
    const double grand = m.sum() / (rows * cols);
    tlra::Matrix out = m;
    out.colwise() -= row_means;
    out.rowwise() -= col_means.transpose();
    out.array() += grand;
    return out;
}
