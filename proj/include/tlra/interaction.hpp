#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "tlra/tables.hpp"

namespace tlra {

inline constexpr double kCenteringTol = 1e-10;

/// Which interaction a matrix holds. "Exact" kinds use the log formula,
/// "Approx" kinds its first-order expansion, and the AggregateOfElementary
/// pair aggregates row-level interactions over categories.
enum class InteractionKind {
    AggregateExact,
    ElementaryExact,
    AggregateOfElementary,
    ApproxAggregate,
    ApproxElementary,
    ApproxAggregateOfElementary,
};

std::string_view to_string(InteractionKind kind);
InteractionKind interaction_kind_from_string(std::string_view name);

/// Doubly centered interaction matrix together with the weights it is
/// centered against: sum_r w_r y_rj = 0 for every j and sum_c w_c y_rc = 0
/// for every r, both within kCenteringTol. The constructor enforces this.
class InteractionMatrix {
public:
    InteractionMatrix(Matrix values, std::vector<std::string> row_labels,
                      std::vector<std::string> col_labels, WeightVector row_weights,
                      WeightVector col_weights, InteractionKind kind, Index q = 1);

    /// Skips the centering check. For deserialization and tests only.
    static InteractionMatrix unchecked(Matrix values, std::vector<std::string> row_labels,
                                       std::vector<std::string> col_labels,
                                       WeightVector row_weights, WeightVector col_weights,
                                       InteractionKind kind, Index q = 1);

    Index rows() const { return values_.rows(); }
    Index cols() const { return values_.cols(); }
    const Matrix& values() const { return values_; }
    const std::vector<std::string>& row_labels() const { return row_labels_; }
    const std::vector<std::string>& col_labels() const { return col_labels_; }
    const WeightVector& row_weights() const { return row_weights_; }
    const WeightVector& col_weights() const { return col_weights_; }
    InteractionKind kind() const { return kind_; }
    Index q() const { return q_; }

private:
    struct Unchecked {};
    InteractionMatrix(Unchecked, Matrix values, std::vector<std::string> row_labels,
                      std::vector<std::string> col_labels, WeightVector row_weights,
                      WeightVector col_weights, InteractionKind kind, Index q);

    Matrix values_;
    std::vector<std::string> row_labels_;
    std::vector<std::string> col_labels_;
    WeightVector row_weights_;
    WeightVector col_weights_;
    InteractionKind kind_;
    Index q_;
};

/// lambda_rc = G_rc - G_r - G_c + G with G = log p and weighted means taken
/// against (row_weights, col_weights). Requires strictly positive cells;
/// pseudo_count > 0 is added to every cell first (exploratory use only).
InteractionMatrix log_interaction(const AggregateTable& t, const WeightVector& row_weights,
                                  const WeightVector& col_weights, double pseudo_count = 0.0);
InteractionMatrix log_interaction(const ElementaryTable& x, const WeightVector& row_weights,
                                  const WeightVector& col_weights, double pseudo_count = 0.0);

/// First-order expansion of the above around independence:
/// p_rc/(w_r w_c) - p_r/w_r - p_c/w_c + 1. Zero cells are allowed.
InteractionMatrix approx_log_interaction(const AggregateTable& t, const WeightVector& row_weights,
                                         const WeightVector& col_weights);
InteractionMatrix approx_log_interaction(const ElementaryTable& x, const WeightVector& row_weights,
                                         const WeightVector& col_weights);

/// alpha = Z' D_I Lambda: category-weighted aggregation of the elementary
/// log interactions. Row weights over categories come out uniform (1/K).
InteractionMatrix aggregate_of_log_interactions(const ElementaryTable& x, const IndicatorMatrix& z,
                                                const WeightVector& row_weights,
                                                const WeightVector& col_weights,
                                                double pseudo_count = 0.0);

/// Closed form of the aggregated first-order interaction, computable from
/// aggregate proportions alone: Q(p_kj/w_j - p_k) - (p_j/w_j - 1) z_k/I.
/// Requires uniform elementary row weights (1/I).
InteractionMatrix approx_aggregate_of_log_interactions(const ElementaryTable& x,
                                                       const IndicatorMatrix& z,
                                                       const WeightVector& col_weights);
InteractionMatrix approx_aggregate_of_log_interactions(const AggregateTable& t,
                                                       const WeightVector& col_weights);

struct ApproximationGap {
    double max_abs = 0.0;
    double weighted_rms = 0.0;
};

/// Entrywise gap between an exact interaction and its first-order partner.
/// Both must share shape and weights.
ApproximationGap approximation_gap(const InteractionMatrix& exact,
                                   const InteractionMatrix& approx);

void save_interaction_csv(const std::filesystem::path& path, const InteractionMatrix& m);

}  // namespace tlra
