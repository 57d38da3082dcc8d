#include "tlra/interaction.hpp"

#include <cmath>

namespace tlra {

namespace {

// Compensated (Kahan) dot product; the centered means feed differences of
// nearly equal logs, so keep the summation error flat.
double kahan_dot(const Vector& w, const Vector& x) {
    double sum = 0.0, carry = 0.0;
    for (Index i = 0; i < w.size(); ++i) {
        double term = w[i] * x[i] - carry;
        double next = sum + term;
        carry = (next - sum) - term;
        sum = next;
    }
    return sum;
}

void check_weight_sizes(const Matrix& values, const WeightVector& row_weights,
                        const WeightVector& col_weights) {
    if (row_weights.size() != values.rows())
        throw DimensionMismatchError("row weights size " + std::to_string(row_weights.size()) +
                                     " does not match " + std::to_string(values.rows()) + " rows");
    if (col_weights.size() != values.cols())
        throw DimensionMismatchError("column weights size " + std::to_string(col_weights.size()) +
                                     " does not match " + std::to_string(values.cols()) +
                                     " columns");
}

Matrix log_interaction_core(const Matrix& raw, const WeightVector& row_weights,
                            const WeightVector& col_weights, double pseudo_count) {
    if (pseudo_count < 0.0) throw ConfigError("pseudo-count must be nonnegative");
    check_weight_sizes(raw, row_weights, col_weights);

    Matrix values = raw.array() + pseudo_count;
    for (Index i = 0; i < values.rows(); ++i)
        for (Index j = 0; j < values.cols(); ++j)
            if (values(i, j) <= 0.0)
                throw NonPositiveCellError(
                    i, j,
                    "cell (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                        ") is not positive; the log interaction needs positive cells "
                        "(use the first-order version or a pseudo-count)");

    Matrix g = proportions(values).array().log();

    const Vector& wr = row_weights.values();
    const Vector& wc = col_weights.values();
    Vector row_means(g.rows());
    for (Index r = 0; r < g.rows(); ++r) row_means[r] = kahan_dot(wc, g.row(r).transpose());
    Vector col_means(g.cols());
    for (Index c = 0; c < g.cols(); ++c) col_means[c] = kahan_dot(wr, g.col(c));
    double grand = kahan_dot(wr, row_means);

    Matrix lambda(g.rows(), g.cols());
    for (Index r = 0; r < g.rows(); ++r)
        for (Index c = 0; c < g.cols(); ++c)
            lambda(r, c) = g(r, c) - row_means[r] - col_means[c] + grand;
    return lambda;
}

Matrix approx_core(const Matrix& raw, const WeightVector& row_weights,
                   const WeightVector& col_weights) {
    check_weight_sizes(raw, row_weights, col_weights);
    Matrix p = proportions(raw);
    Vector row_m = p.rowwise().sum();
    Vector col_m = p.colwise().sum();
    const Vector& wr = row_weights.values();
    const Vector& wc = col_weights.values();
    Matrix out(p.rows(), p.cols());
    for (Index r = 0; r < p.rows(); ++r)
        for (Index c = 0; c < p.cols(); ++c)
            out(r, c) = p(r, c) / (wr[r] * wc[c]) - row_m[r] / wr[r] - col_m[c] / wc[c] + 1.0;
    return out;
}

}  // namespace

std::string_view to_string(InteractionKind kind) {
    switch (kind) {
        case InteractionKind::AggregateExact: return "aggregate-exact";
        case InteractionKind::ElementaryExact: return "elementary-exact";
        case InteractionKind::AggregateOfElementary: return "aggregate-of-elementary";
        case InteractionKind::ApproxAggregate: return "approx-aggregate";
        case InteractionKind::ApproxElementary: return "approx-elementary";
        case InteractionKind::ApproxAggregateOfElementary: return "approx-aggregate-of-elementary";
    }
    return "unknown";
}

InteractionKind interaction_kind_from_string(std::string_view name) {
    for (auto kind : {InteractionKind::AggregateExact, InteractionKind::ElementaryExact,
                      InteractionKind::AggregateOfElementary, InteractionKind::ApproxAggregate,
                      InteractionKind::ApproxElementary,
                      InteractionKind::ApproxAggregateOfElementary})
        if (to_string(kind) == name) return kind;
    throw ConfigError("unknown interaction kind \"" + std::string(name) + "\"");
}

InteractionMatrix::InteractionMatrix(Unchecked, Matrix values,
                                     std::vector<std::string> row_labels,
                                     std::vector<std::string> col_labels,
                                     WeightVector row_weights, WeightVector col_weights,
                                     InteractionKind kind, Index q)
    : values_(std::move(values)),
      row_labels_(std::move(row_labels)),
      col_labels_(std::move(col_labels)),
      row_weights_(std::move(row_weights)),
      col_weights_(std::move(col_weights)),
      kind_(kind),
      q_(q) {
    check_weight_sizes(values_, row_weights_, col_weights_);
    if (!values_.allFinite())
        throw NonFiniteError("interaction matrix contains a non-finite entry");
    if (row_labels_.size() != static_cast<std::size_t>(values_.rows()) ||
        col_labels_.size() != static_cast<std::size_t>(values_.cols()))
        throw DimensionMismatchError("interaction label counts do not match the matrix");
    if (q_ < 1) throw ConfigError("interaction Q must be at least 1");
}

InteractionMatrix::InteractionMatrix(Matrix values, std::vector<std::string> row_labels,
                                     std::vector<std::string> col_labels,
                                     WeightVector row_weights, WeightVector col_weights,
                                     InteractionKind kind, Index q)
    : InteractionMatrix(Unchecked{}, std::move(values), std::move(row_labels),
                        std::move(col_labels), std::move(row_weights), std::move(col_weights),
                        kind, q) {
    double col_violation =
        (row_weights_.values().transpose() * values_).cwiseAbs().maxCoeff();
    double row_violation = (values_ * col_weights_.values()).cwiseAbs().maxCoeff();
    if (col_violation > kCenteringTol || row_violation > kCenteringTol)
        throw CenteringViolationError(
            "matrix is not doubly centered under its weights (row residual " +
            format_double(row_violation) + ", column residual " + format_double(col_violation) +
            ")");
}

InteractionMatrix InteractionMatrix::unchecked(Matrix values, std::vector<std::string> row_labels,
                                               std::vector<std::string> col_labels,
                                               WeightVector row_weights, WeightVector col_weights,
                                               InteractionKind kind, Index q) {
    return InteractionMatrix(Unchecked{}, std::move(values), std::move(row_labels),
                             std::move(col_labels), std::move(row_weights),
                             std::move(col_weights), kind, q);
}

InteractionMatrix log_interaction(const AggregateTable& t, const WeightVector& row_weights,
                                  const WeightVector& col_weights, double pseudo_count) {
    return InteractionMatrix(log_interaction_core(t.values(), row_weights, col_weights,
                                                  pseudo_count),
                             t.row_labels(), t.col_labels(), row_weights, col_weights,
                             InteractionKind::AggregateExact, t.q());
}

InteractionMatrix log_interaction(const ElementaryTable& x, const WeightVector& row_weights,
                                  const WeightVector& col_weights, double pseudo_count) {
    return InteractionMatrix(log_interaction_core(x.values(), row_weights, col_weights,
                                                  pseudo_count),
                             x.row_labels(), x.col_labels(), row_weights, col_weights,
                             InteractionKind::ElementaryExact, 1);
}

InteractionMatrix approx_log_interaction(const AggregateTable& t, const WeightVector& row_weights,
                                         const WeightVector& col_weights) {
    return InteractionMatrix(approx_core(t.values(), row_weights, col_weights), t.row_labels(),
                             t.col_labels(), row_weights, col_weights,
                             InteractionKind::ApproxAggregate, t.q());
}

InteractionMatrix approx_log_interaction(const ElementaryTable& x, const WeightVector& row_weights,
                                         const WeightVector& col_weights) {
    return InteractionMatrix(approx_core(x.values(), row_weights, col_weights), x.row_labels(),
                             x.col_labels(), row_weights, col_weights,
                             InteractionKind::ApproxElementary, 1);
}

InteractionMatrix aggregate_of_log_interactions(const ElementaryTable& x,
                                                const IndicatorMatrix& z,
                                                const WeightVector& row_weights,
                                                const WeightVector& col_weights,
                                                double pseudo_count) {
    if (z.rows() != x.rows())
        throw DimensionMismatchError("indicator has " + std::to_string(z.rows()) +
                                     " rows but the table has " + std::to_string(x.rows()));
    Matrix lambda = log_interaction_core(x.values(), row_weights, col_weights, pseudo_count);
    Matrix alpha = z.values().transpose() * row_weights.values().asDiagonal() * lambda;
    return InteractionMatrix(std::move(alpha), z.category_labels(), x.col_labels(),
                             WeightVector::uniform(z.categories(), z.category_labels()),
                             col_weights, InteractionKind::AggregateOfElementary, z.q());
}

namespace {

InteractionMatrix approx_aggregate_core(const AggregateTable& t, Index elementary_rows,
                                        const Vector& category_sizes,
                                        const WeightVector& col_weights) {
    if (col_weights.size() != t.cols())
        throw DimensionMismatchError("column weights size " + std::to_string(col_weights.size()) +
                                     " does not match " + std::to_string(t.cols()) + " columns");
    Matrix p = t.proportions();
    Vector pk = p.rowwise().sum();
    Vector pj = p.colwise().sum();
    const Vector& wj = col_weights.values();
    const double q = static_cast<double>(t.q());
    const double inv_i = 1.0 / static_cast<double>(elementary_rows);

    Matrix out(t.rows(), t.cols());
    for (Index k = 0; k < t.rows(); ++k)
        for (Index j = 0; j < t.cols(); ++j)
            out(k, j) = q * (p(k, j) / wj[j] - pk[k]) -
                        (pj[j] / wj[j] - 1.0) * category_sizes[k] * inv_i;
    return InteractionMatrix(std::move(out), t.row_labels(), t.col_labels(),
                             WeightVector::uniform(t.rows(), t.row_labels()), col_weights,
                             InteractionKind::ApproxAggregateOfElementary, t.q());
}

}  // namespace

InteractionMatrix approx_aggregate_of_log_interactions(const ElementaryTable& x,
                                                       const IndicatorMatrix& z,
                                                       const WeightVector& col_weights) {
    AggregateTable t = aggregate(x, z, WeightVector::uniform(x.rows()));
    return approx_aggregate_core(t, x.rows(), z.category_sizes(), col_weights);
}

InteractionMatrix approx_aggregate_of_log_interactions(const AggregateTable& t,
                                                       const WeightVector& col_weights) {
    if (!t.origin())
        throw MissingOriginError(
            "aggregate table was loaded directly; the closed-form aggregated interaction needs "
            "the paired (X, Z) origin");
    if (!t.origin()->uniform_row_weights)
        throw MissingOriginError(
            "aggregate table was built with non-uniform row weights; the closed form assumes "
            "uniform 1/I");
    return approx_aggregate_core(t, t.origin()->elementary_rows, t.origin()->category_sizes,
                                 col_weights);
}

ApproximationGap approximation_gap(const InteractionMatrix& exact,
                                   const InteractionMatrix& approx) {
    if (exact.rows() != approx.rows() || exact.cols() != approx.cols())
        throw DimensionMismatchError("interaction matrices differ in shape");
    if (((exact.row_weights().values() - approx.row_weights().values()).cwiseAbs().maxCoeff() >
         kWeightSumTol) ||
        ((exact.col_weights().values() - approx.col_weights().values()).cwiseAbs().maxCoeff() >
         kWeightSumTol))
        throw WeightError("interaction matrices carry different weights");

    Matrix diff = exact.values() - approx.values();
    ApproximationGap gap;
    gap.max_abs = diff.cwiseAbs().maxCoeff();
    double acc = 0.0;
    const Vector& wr = exact.row_weights().values();
    const Vector& wc = exact.col_weights().values();
    for (Index r = 0; r < diff.rows(); ++r)
        for (Index c = 0; c < diff.cols(); ++c) acc += wr[r] * wc[c] * diff(r, c) * diff(r, c);
    gap.weighted_rms = std::sqrt(acc);
    return gap;
}

void save_interaction_csv(const std::filesystem::path& path, const InteractionMatrix& m) {
    write_labeled_csv(path, LabeledMatrix{m.row_labels(), m.col_labels(), m.values()});
}

}  // namespace tlra
