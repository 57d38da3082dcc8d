#include "tlra/tables.hpp"

#include <algorithm>
#include <cmath>

namespace tlra {

namespace {

void check_labels(std::size_t n_labels, Index n, const char* axis) {
    if (static_cast<Index>(n_labels) != n)
        throw DimensionMismatchError(std::string(axis) + " label count " +
                                     std::to_string(n_labels) + " does not match size " +
                                     std::to_string(n));
}

std::vector<std::string> default_labels(Index n) {
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) labels.push_back(std::to_string(i + 1));
    return labels;
}

void check_finite(const Matrix& values, const char* what) {
    if (!values.allFinite())
        throw NonFiniteError(std::string(what) + " contains a non-finite entry");
}

void check_nonnegative(const Matrix& values, const char* what) {
    for (Index j = 0; j < values.cols(); ++j)
        for (Index i = 0; i < values.rows(); ++i)
            if (values(i, j) < 0.0)
                throw NegativeEntryError(i, j, std::string(what) + " has negative entry at (" +
                                                   std::to_string(i + 1) + "," +
                                                   std::to_string(j + 1) + ")");
}

}  // namespace

WeightVector::WeightVector(Vector values, std::vector<std::string> labels)
    : values_(std::move(values)), labels_(std::move(labels)) {
    if (values_.size() == 0) throw WeightError("weight vector is empty");
    if (!values_.allFinite()) throw NonFiniteError("weight vector contains a non-finite entry");
    for (Index i = 0; i < values_.size(); ++i)
        if (values_[i] <= 0.0)
            throw WeightError("weight " + std::to_string(i + 1) + " is not positive");
    double sum = values_.sum();
    if (std::abs(sum - 1.0) > kWeightSumTol)
        throw WeightError("weights sum to " + format_double(sum) + ", expected 1");
    if (labels_.empty()) labels_ = default_labels(values_.size());
    check_labels(labels_.size(), values_.size(), "weight");
}

WeightVector WeightVector::uniform(Index n, std::vector<std::string> labels) {
    if (n <= 0) throw WeightError("weight vector size must be positive");
    return WeightVector(Vector::Constant(n, 1.0 / static_cast<double>(n)), std::move(labels));
}

Marginals marginals(const Matrix& values) {
    Marginals m;
    m.row_sums = values.rowwise().sum();
    m.col_sums = values.colwise().sum();
    m.total = values.sum();
    if (m.total == 0.0) throw ZeroTotalError("grand total is zero");
    return m;
}

Matrix proportions(const Matrix& values) {
    return values / marginals(values).total;
}

ElementaryTable::ElementaryTable(Matrix values, std::vector<std::string> row_labels,
                                 std::vector<std::string> col_labels)
    : values_(std::move(values)),
      row_labels_(std::move(row_labels)),
      col_labels_(std::move(col_labels)) {
    if (values_.rows() < 2 || values_.cols() < 2)
        throw DimensionMismatchError("elementary table needs at least 2 rows and 2 columns");
    check_finite(values_, "elementary table");
    check_nonnegative(values_, "elementary table");
    if (row_labels_.empty()) row_labels_ = default_labels(values_.rows());
    if (col_labels_.empty()) col_labels_ = default_labels(values_.cols());
    check_labels(row_labels_.size(), values_.rows(), "row");
    check_labels(col_labels_.size(), values_.cols(), "column");
    all_positive_ = (values_.array() > 0.0).all();
}

Marginals ElementaryTable::marginals() const { return tlra::marginals(values_); }
Matrix ElementaryTable::proportions() const { return tlra::proportions(values_); }

IndicatorMatrix::IndicatorMatrix(Matrix values, std::vector<std::string> category_labels,
                                 std::vector<Index> block_sizes)
    : values_(std::move(values)),
      category_labels_(std::move(category_labels)),
      block_sizes_(std::move(block_sizes)) {
    if (values_.rows() < 1) throw DimensionMismatchError("indicator matrix has no rows");
    if (block_sizes_.empty()) throw BlockSpecMismatchError("no covariate blocks given");
    Index total = 0;
    for (std::size_t q = 0; q < block_sizes_.size(); ++q) {
        if (block_sizes_[q] < 1)
            throw BlockSpecMismatchError("block " + std::to_string(q + 1) + " has size " +
                                         std::to_string(block_sizes_[q]));
        total += block_sizes_[q];
    }
    if (total != values_.cols())
        throw BlockSpecMismatchError("block sizes sum to " + std::to_string(total) +
                                     " but the matrix has " + std::to_string(values_.cols()) +
                                     " columns");
    check_finite(values_, "indicator matrix");
    for (Index i = 0; i < values_.rows(); ++i)
        for (Index k = 0; k < values_.cols(); ++k)
            if (values_(i, k) != 0.0 && values_(i, k) != 1.0)
                throw ParseError("indicator entry at (" + std::to_string(i + 1) + "," +
                                 std::to_string(k + 1) + ") is not 0/1");
    Index offset = 0;
    for (std::size_t q = 0; q < block_sizes_.size(); ++q) {
        for (Index i = 0; i < values_.rows(); ++i) {
            double row_sum = values_.block(i, offset, 1, block_sizes_[q]).sum();
            if (row_sum != 1.0)
                throw BlockViolationError(i, static_cast<Index>(q),
                                          "row " + std::to_string(i + 1) + " has " +
                                              format_double(row_sum) + " ones in block " +
                                              std::to_string(q + 1) + ", expected exactly one");
        }
        offset += block_sizes_[q];
    }
    if (category_labels_.empty()) category_labels_ = default_labels(values_.cols());
    check_labels(category_labels_.size(), values_.cols(), "category");
}

AggregateTable::AggregateTable(Matrix values, std::vector<std::string> row_labels,
                               std::vector<std::string> col_labels)
    : AggregateTable(std::move(values), std::move(row_labels), std::move(col_labels), 1, {}) {
    origin_.reset();
}

AggregateTable::AggregateTable(Matrix values, std::vector<std::string> row_labels,
                               std::vector<std::string> col_labels, Index q,
                               AggregateOrigin origin)
    : values_(std::move(values)),
      row_labels_(std::move(row_labels)),
      col_labels_(std::move(col_labels)),
      q_(q),
      origin_(std::move(origin)) {
    if (values_.rows() < 2 || values_.cols() < 2)
        throw DimensionMismatchError("aggregate table needs at least 2 rows and 2 columns");
    if (q_ < 1) throw ConfigError("aggregate table Q must be at least 1");
    check_finite(values_, "aggregate table");
    check_nonnegative(values_, "aggregate table");
    if (row_labels_.empty()) row_labels_ = default_labels(values_.rows());
    if (col_labels_.empty()) col_labels_ = default_labels(values_.cols());
    check_labels(row_labels_.size(), values_.rows(), "row");
    check_labels(col_labels_.size(), values_.cols(), "column");
}

Marginals AggregateTable::marginals() const { return tlra::marginals(values_); }
Matrix AggregateTable::proportions() const { return tlra::proportions(values_); }

ElementaryTable load_elementary(const std::filesystem::path& path) {
    auto raw = read_labeled_csv(path);
    return ElementaryTable(std::move(raw.values), std::move(raw.row_labels),
                           std::move(raw.col_labels));
}

IndicatorMatrix load_indicator(const std::filesystem::path& path,
                               const std::vector<Index>& block_sizes) {
    auto raw = read_labeled_csv(path);
    return IndicatorMatrix(std::move(raw.values), std::move(raw.col_labels), block_sizes);
}

AggregateTable load_aggregate(const std::filesystem::path& path) {
    auto raw = read_labeled_csv(path);
    return AggregateTable(std::move(raw.values), std::move(raw.row_labels),
                          std::move(raw.col_labels));
}

IndicatorMatrix indicator_from_categorical(const std::vector<std::vector<std::string>>& codes,
                                           const std::vector<Covariate>& covariates) {
    if (covariates.empty()) throw BlockSpecMismatchError("no covariates given");
    if (codes.empty()) throw DimensionMismatchError("no rows given");

    std::vector<Index> block_sizes;
    std::vector<std::string> labels;
    for (const auto& cov : covariates) {
        if (cov.levels.empty())
            throw BlockSpecMismatchError("covariate " + cov.name + " has no levels");
        block_sizes.push_back(static_cast<Index>(cov.levels.size()));
        for (const auto& level : cov.levels) labels.push_back(cov.name + "=" + level);
    }

    Index total = 0;
    for (Index b : block_sizes) total += b;
    Matrix z = Matrix::Zero(static_cast<Index>(codes.size()), total);
    for (std::size_t i = 0; i < codes.size(); ++i) {
        if (codes[i].size() != covariates.size())
            throw DimensionMismatchError("row " + std::to_string(i + 1) + " has " +
                                         std::to_string(codes[i].size()) + " codes, expected " +
                                         std::to_string(covariates.size()));
        Index offset = 0;
        for (std::size_t q = 0; q < covariates.size(); ++q) {
            const auto& levels = covariates[q].levels;
            auto it = std::find(levels.begin(), levels.end(), codes[i][q]);
            if (it == levels.end())
                throw UnknownLevelError("row " + std::to_string(i + 1) + ": level \"" +
                                        codes[i][q] + "\" not in covariate " + covariates[q].name);
            z(static_cast<Index>(i), offset + (it - levels.begin())) = 1.0;
            offset += block_sizes[q];
        }
    }
    return IndicatorMatrix(std::move(z), std::move(labels), block_sizes);
}

AggregateTable aggregate(const ElementaryTable& x, const IndicatorMatrix& z,
                         const WeightVector& row_weights) {
    if (z.rows() != x.rows())
        throw DimensionMismatchError("indicator has " + std::to_string(z.rows()) +
                                     " rows but the table has " + std::to_string(x.rows()));
    if (row_weights.size() != x.rows())
        throw DimensionMismatchError("row weights size " + std::to_string(row_weights.size()) +
                                     " does not match " + std::to_string(x.rows()) + " rows");
    const double n = static_cast<double>(x.rows());
    Matrix t = n * (z.values().transpose() * row_weights.values().asDiagonal() * x.values());
    // Weighted rows can leave harmless -0.0 or tiny negative dust; clamp it.
    t = t.cwiseMax(0.0);

    AggregateOrigin origin;
    origin.elementary_rows = x.rows();
    origin.category_sizes = z.category_sizes();
    const double w0 = 1.0 / n;
    origin.uniform_row_weights =
        ((row_weights.values().array() - w0).abs() <= 1e-12 * w0).all();
    return AggregateTable(std::move(t), z.category_labels(), x.col_labels(), z.q(),
                          std::move(origin));
}

WeightPair elementary_uniform_weights(const ElementaryTable& x) {
    return {WeightVector::uniform(x.rows(), x.row_labels()),
            WeightVector::uniform(x.cols(), x.col_labels())};
}

WeightPair aggregate_marginal_weights(const IndicatorMatrix& z, const AggregateTable& t) {
    if (z.categories() != t.rows())
        throw DimensionMismatchError("indicator has " + std::to_string(z.categories()) +
                                     " categories but the aggregate table has " +
                                     std::to_string(t.rows()) + " rows");
    Vector sizes = z.category_sizes();
    double total = sizes.sum();
    if (total == 0.0) throw ZeroTotalError("indicator matrix has no ones");
    return {WeightVector(sizes / total, t.row_labels()),
            WeightVector::uniform(t.cols(), t.col_labels())};
}

WeightPair aggregate_uniform_weights(const AggregateTable& t) {
    return {WeightVector::uniform(t.rows(), t.row_labels()),
            WeightVector::uniform(t.cols(), t.col_labels())};
}

namespace {

WeightPair marginal_pair(const Matrix& values, const std::vector<std::string>& row_labels,
                         const std::vector<std::string>& col_labels) {
    Marginals m = marginals(values);
    for (Index i = 0; i < m.row_sums.size(); ++i)
        if (m.row_sums[i] <= 0.0)
            throw WeightError("row " + std::to_string(i + 1) + " has zero total");
    for (Index j = 0; j < m.col_sums.size(); ++j)
        if (m.col_sums[j] <= 0.0)
            throw WeightError("column " + std::to_string(j + 1) + " has zero total");
    return {WeightVector(m.row_sums / m.total, row_labels),
            WeightVector(m.col_sums / m.total, col_labels)};
}

}  // namespace

WeightPair column_marginal_weights(const ElementaryTable& x) {
    return marginal_pair(x.values(), x.row_labels(), x.col_labels());
}

WeightPair column_marginal_weights(const AggregateTable& t) {
    return marginal_pair(t.values(), t.row_labels(), t.col_labels());
}

}  // namespace tlra
