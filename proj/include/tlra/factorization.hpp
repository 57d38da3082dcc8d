#pragma once

#include <filesystem>

#include "tlra/interaction.hpp"
#include "tlra/tsvd.hpp"

namespace tlra {

/// Taxicab factorization of a weighted interaction matrix. The interaction y
/// is folded into X = D_r y D_c (x_rc = w_r y_rc w_c), decomposed stepwise,
/// and the axes are oriented. Factor scores divide the contribution scores
/// back by the weights: f = a / w_r, g = b / w_c, so that
/// y_rc = sum_axes f_r g_c / delta.
class WeightedFactorization {
public:
    const InteractionMatrix& source() const { return source_; }
    const Matrix& centered() const { return centered_; }
    const TaxicabDecomposition& decomposition() const { return decomposition_; }
    Index rank() const { return decomposition_.rank(); }

    /// Row factor scores per axis (f_1, ..., f_rank).
    const std::vector<Vector>& row_scores() const { return row_scores_; }
    /// Column factor scores per axis.
    const std::vector<Vector>& col_scores() const { return col_scores_; }

    /// Sum of f g' / delta; approximates the source interaction, exactly at
    /// full rank.
    Matrix reconstruct_source() const;

private:
    friend WeightedFactorization factorize(const InteractionMatrix&, std::optional<int>,
                                           const SolverOptions&);
    InteractionMatrix source_;
    Matrix centered_;
    TaxicabDecomposition decomposition_;
    std::vector<Vector> row_scores_;
    std::vector<Vector> col_scores_;

    WeightedFactorization(InteractionMatrix source, Matrix centered,
                          TaxicabDecomposition decomposition, std::vector<Vector> row_scores,
                          std::vector<Vector> col_scores)
        : source_(std::move(source)),
          centered_(std::move(centered)),
          decomposition_(std::move(decomposition)),
          row_scores_(std::move(row_scores)),
          col_scores_(std::move(col_scores)) {}
};

WeightedFactorization factorize(const InteractionMatrix& source,
                                std::optional<int> n_axes = 4,
                                const SolverOptions& options = {});

struct MapPoint {
    double x = 0.0;
    double y = 0.0;
    std::string label;
};

/// Joint display of row and column factor scores on two axes (1-based).
struct PrincipalMap {
    int axis_x = 1;
    int axis_y = 2;
    std::vector<MapPoint> row_points;
    std::vector<MapPoint> col_points;
};

PrincipalMap principal_map(const WeightedFactorization& fact, int axis_x, int axis_y);

/// Factor scores as a labeled table, one column per axis ("axis1", ...).
LabeledMatrix row_scores_table(const WeightedFactorization& fact);
LabeledMatrix col_scores_table(const WeightedFactorization& fact);
void save_row_scores_csv(const std::filesystem::path& path, const WeightedFactorization& fact);
void save_col_scores_csv(const std::filesystem::path& path, const WeightedFactorization& fact);

}  // namespace tlra
