#include "tlra/factorization.hpp"

namespace tlra {

WeightedFactorization factorize(const InteractionMatrix& source, std::optional<int> n_axes,
                                const SolverOptions& options) {
    const Vector& wr = source.row_weights().values();
    const Vector& wc = source.col_weights().values();

    // Fold the weights in: x_rc = w_r y_rc w_c. Decomposing this matrix is
    // what makes the balance identities hold axis by axis.
    Matrix x = wr.asDiagonal() * source.values() * wc.asDiagonal();

    // The source may have been built unchecked; the plain sums of x must
    // vanish for the factor geometry to be valid.
    double col_violation = x.colwise().sum().cwiseAbs().maxCoeff();
    double row_violation = x.rowwise().sum().cwiseAbs().maxCoeff();
    if (col_violation > kCenteringTol || row_violation > kCenteringTol)
        throw CenteringViolationError("weighted interaction is not doubly centered (row residual " +
                                      format_double(row_violation) + ", column residual " +
                                      format_double(col_violation) + ")");

    TaxicabDecomposition dec = decompose(x, n_axes, options);
    for (auto& axis : dec.axes) axis = orient_axis(std::move(axis));

    std::vector<Vector> row_scores, col_scores;
    row_scores.reserve(dec.axes.size());
    col_scores.reserve(dec.axes.size());
    for (const auto& axis : dec.axes) {
        row_scores.push_back(axis.a.cwiseQuotient(wr));
        col_scores.push_back(axis.b.cwiseQuotient(wc));
    }
    return WeightedFactorization(source, std::move(x), std::move(dec), std::move(row_scores),
                                 std::move(col_scores));
}

Matrix WeightedFactorization::reconstruct_source() const {
    Matrix sum = Matrix::Zero(source_.rows(), source_.cols());
    for (std::size_t k = 0; k < row_scores_.size(); ++k)
        sum += row_scores_[k] * col_scores_[k].transpose() / decomposition_.axes[k].delta;
    return sum;
}

PrincipalMap principal_map(const WeightedFactorization& fact, int axis_x, int axis_y) {
    const Index rank = fact.rank();
    for (int axis : {axis_x, axis_y})
        if (axis < 1 || axis > rank)
            throw AxisOutOfRangeError("axis " + std::to_string(axis) + " outside 1.." +
                                      std::to_string(rank));

    PrincipalMap map;
    map.axis_x = axis_x;
    map.axis_y = axis_y;
    const auto& f_x = fact.row_scores()[static_cast<std::size_t>(axis_x - 1)];
    const auto& f_y = fact.row_scores()[static_cast<std::size_t>(axis_y - 1)];
    const auto& g_x = fact.col_scores()[static_cast<std::size_t>(axis_x - 1)];
    const auto& g_y = fact.col_scores()[static_cast<std::size_t>(axis_y - 1)];
    const auto& row_labels = fact.source().row_labels();
    const auto& col_labels = fact.source().col_labels();

    for (Index r = 0; r < f_x.size(); ++r)
        map.row_points.push_back({f_x[r], f_y[r], row_labels[static_cast<std::size_t>(r)]});
    for (Index c = 0; c < g_x.size(); ++c)
        map.col_points.push_back({g_x[c], g_y[c], col_labels[static_cast<std::size_t>(c)]});
    return map;
}

namespace {

LabeledMatrix scores_table(const std::vector<Vector>& scores,
                           const std::vector<std::string>& labels) {
    LabeledMatrix table;
    table.row_labels = labels;
    const Index n = static_cast<Index>(labels.size());
    table.values.resize(n, static_cast<Index>(scores.size()));
    for (std::size_t k = 0; k < scores.size(); ++k) {
        table.col_labels.push_back("axis" + std::to_string(k + 1));
        table.values.col(static_cast<Index>(k)) = scores[k];
    }
    return table;
}

}  // namespace

LabeledMatrix row_scores_table(const WeightedFactorization& fact) {
    return scores_table(fact.row_scores(), fact.source().row_labels());
}

LabeledMatrix col_scores_table(const WeightedFactorization& fact) {
    return scores_table(fact.col_scores(), fact.source().col_labels());
}

void save_row_scores_csv(const std::filesystem::path& path, const WeightedFactorization& fact) {
    write_labeled_csv(path, row_scores_table(fact));
}

void save_col_scores_csv(const std::filesystem::path& path, const WeightedFactorization& fact) {
    write_labeled_csv(path, col_scores_table(fact));
}

}  // namespace tlra
