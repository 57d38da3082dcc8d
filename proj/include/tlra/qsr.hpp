#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tlra/factorization.hpp"

namespace tlra {

/// Quadrant sign ratios for one axis. A quadrant is the block of cells cut
/// out by the row partition S = {r : v_r = +1} and the column partition
/// T = {c : u_c = +1}; its ratio is the signed block sum over the absolute
/// block mass, in [-1, 1]: +1 when every cell agrees with the quadrant's
/// expected sign. Empty value: the quadrant carries no L1 mass.
struct QsrQuadrants {
    std::optional<double> pos_pos;  // S  x T
    std::optional<double> neg_neg;  // S~ x T~
    std::optional<double> neg_pos;  // S~ x T
    std::optional<double> pos_neg;  // S  x T~
};

struct QsrAxisRecord {
    int alpha = 0;  // 1-based axis number
    double delta = 0.0;
    /// Global ratio delta / sum|X_alpha| of the residual the axis came from.
    double qsr = 0.0;
    QsrQuadrants quadrants;
    std::vector<std::string> s_rows;  // labels with v = +1
    std::vector<std::string> t_cols;  // labels with u = +1
};

/// Axis-level ratios straight off a decomposition; labels are optional and
/// default to 1-based indices.
QsrAxisRecord qsr_axis(const TaxicabDecomposition& dec, int alpha,
                       const std::vector<std::string>& row_labels = {},
                       const std::vector<std::string>& col_labels = {});

QsrAxisRecord qsr(const WeightedFactorization& fact, int alpha);

struct QsrReport {
    std::vector<QsrAxisRecord> axes;
};

/// Records for axes 1..max_axes (clipped to the rank).
QsrReport qsr_report(const WeightedFactorization& fact, int max_axes);

struct QsrTableEntry {
    std::string name;
    QsrReport report;
    /// 100 * (QSR_1 + QSR_2); truncated marks ranks below two, where the sum
    /// uses whatever axes exist.
    double preference_score = 0.0;
    bool truncated = false;
};

struct QsrTable {
    int axes_shown = 0;
    std::vector<QsrTableEntry> entries;
};

QsrTable qsr_table(const std::vector<std::pair<std::string, const WeightedFactorization*>>& methods,
                   int axes);

/// Fixed-width text rendering, percentages to one decimal. Undefined
/// quadrants print as "--".
std::string format_qsr_table(const QsrTable& table);

/// Flat CSV: method,axis,qsr_pos_pos,qsr_neg_neg,qsr_neg_pos,qsr_pos_neg,
/// qsr,delta,preference_score,truncated. Ratios are written at full
/// precision, undefined quadrants as empty fields.
std::string qsr_table_csv(const QsrTable& table);

}  // namespace tlra
