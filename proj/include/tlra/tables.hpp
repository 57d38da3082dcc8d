#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tlra/csv.hpp"
#include "tlra/errors.hpp"

namespace tlra {

inline constexpr double kWeightSumTol = 1e-12;

/// Probability weights along one axis of a table: strictly positive entries
/// summing to one within kWeightSumTol. Labels follow the axis they weight.
class WeightVector {
public:
    WeightVector(Vector values, std::vector<std::string> labels);
    static WeightVector uniform(Index n, std::vector<std::string> labels = {});

    Index size() const { return values_.size(); }
    const Vector& values() const { return values_; }
    const std::vector<std::string>& labels() const { return labels_; }
    double operator[](Index i) const { return values_[i]; }

private:
    Vector values_;
    std::vector<std::string> labels_;
};

struct Marginals {
    Vector row_sums;
    Vector col_sums;
    double total = 0.0;
};

/// Row sums, column sums and grand total. Throws ZeroTotalError when the
/// grand total vanishes.
Marginals marginals(const Matrix& values);

/// values / grand total.
Matrix proportions(const Matrix& values);

/// Individuals-by-items table of nonnegative amounts (the elementary data).
class ElementaryTable {
public:
    ElementaryTable(Matrix values, std::vector<std::string> row_labels,
                    std::vector<std::string> col_labels);

    Index rows() const { return values_.rows(); }
    Index cols() const { return values_.cols(); }
    const Matrix& values() const { return values_; }
    const std::vector<std::string>& row_labels() const { return row_labels_; }
    const std::vector<std::string>& col_labels() const { return col_labels_; }
    bool all_positive() const { return all_positive_; }

    Marginals marginals() const;
    Matrix proportions() const;

private:
    Matrix values_;
    std::vector<std::string> row_labels_;
    std::vector<std::string> col_labels_;
    bool all_positive_;
};

/// 0/1 design matrix for Q categorical covariates in disjunctive coding:
/// columns come in blocks, one block per covariate, and every row carries
/// exactly one 1 inside each block.
class IndicatorMatrix {
public:
    IndicatorMatrix(Matrix values, std::vector<std::string> category_labels,
                    std::vector<Index> block_sizes);

    Index rows() const { return values_.rows(); }
    Index categories() const { return values_.cols(); }
    Index q() const { return static_cast<Index>(block_sizes_.size()); }
    const Matrix& values() const { return values_; }
    const std::vector<std::string>& category_labels() const { return category_labels_; }
    const std::vector<Index>& block_sizes() const { return block_sizes_; }

    /// Column sums z_{+k}: how many rows fall in each category.
    Vector category_sizes() const { return values_.colwise().sum(); }

private:
    Matrix values_;
    std::vector<std::string> category_labels_;
    std::vector<Index> block_sizes_;
};

/// Provenance of an aggregate table that was computed from paired (X, Z)
/// data. Operations based on the closed-form aggregate interaction need it.
struct AggregateOrigin {
    Index elementary_rows = 0;      // I of the paired data
    Vector category_sizes;          // z_{+k}
    bool uniform_row_weights = true;
};

/// Categories-by-items table, either aggregated from (X, Z) or loaded as-is.
class AggregateTable {
public:
    AggregateTable(Matrix values, std::vector<std::string> row_labels,
                   std::vector<std::string> col_labels);
    AggregateTable(Matrix values, std::vector<std::string> row_labels,
                   std::vector<std::string> col_labels, Index q, AggregateOrigin origin);

    Index rows() const { return values_.rows(); }
    Index cols() const { return values_.cols(); }
    Index q() const { return q_; }
    const Matrix& values() const { return values_; }
    const std::vector<std::string>& row_labels() const { return row_labels_; }
    const std::vector<std::string>& col_labels() const { return col_labels_; }
    const std::optional<AggregateOrigin>& origin() const { return origin_; }

    Marginals marginals() const;
    Matrix proportions() const;

private:
    Matrix values_;
    std::vector<std::string> row_labels_;
    std::vector<std::string> col_labels_;
    Index q_;
    std::optional<AggregateOrigin> origin_;
};

ElementaryTable load_elementary(const std::filesystem::path& path);
IndicatorMatrix load_indicator(const std::filesystem::path& path,
                               const std::vector<Index>& block_sizes);
AggregateTable load_aggregate(const std::filesystem::path& path);

/// One categorical covariate: name plus its ordered level set.
struct Covariate {
    std::string name;
    std::vector<std::string> levels;
};

/// Build the disjunctive coding of raw category assignments. `codes[i][q]` is
/// row i's level of covariate q; unknown levels are rejected. Column labels
/// are "name=level".
IndicatorMatrix indicator_from_categorical(const std::vector<std::vector<std::string>>& codes,
                                           const std::vector<Covariate>& covariates);

/// T = Z' D_I X with D_I = diag(row_weights), scaled by I so that uniform
/// weights reproduce plain within-category totals: t_kj = I * sum_i w_i z_ik x_ij.
AggregateTable aggregate(const ElementaryTable& x, const IndicatorMatrix& z,
                         const WeightVector& row_weights);

struct WeightPair {
    WeightVector rows;
    WeightVector cols;
};

/// Named weighting schemes for the analyses. Rows and columns are returned
/// together because the schemes pin both sides at once.
WeightPair elementary_uniform_weights(const ElementaryTable& x);
WeightPair aggregate_marginal_weights(const IndicatorMatrix& z, const AggregateTable& t);
WeightPair aggregate_uniform_weights(const AggregateTable& t);
WeightPair column_marginal_weights(const ElementaryTable& x);
WeightPair column_marginal_weights(const AggregateTable& t);

}  // namespace tlra
