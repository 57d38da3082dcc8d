#include "tlra/qsr.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace tlra {

namespace {

std::vector<std::string> index_labels(Index n) {
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) labels.push_back(std::to_string(i + 1));
    return labels;
}

}  // namespace

QsrAxisRecord qsr_axis(const TaxicabDecomposition& dec, int alpha,
                       const std::vector<std::string>& row_labels,
                       const std::vector<std::string>& col_labels) {
    if (alpha < 1 || alpha > dec.rank())
        throw AxisOutOfRangeError("axis " + std::to_string(alpha) + " outside 1.." +
                                  std::to_string(dec.rank()));
    const auto k = static_cast<std::size_t>(alpha - 1);
    const Matrix& x = dec.residuals[k];
    const TaxicabAxis& axis = dec.axes[k];

    QsrAxisRecord rec;
    rec.alpha = alpha;
    rec.delta = axis.delta;
    rec.qsr = axis.delta / dec.residual_l1_norms[k];

    // Quadrant buckets indexed by (v side, u side): signed block sum of the
    // residual and its absolute mass. On a doubly centered residual the
    // signed sums are +delta/4 in the concordant quadrants and -delta/4 in
    // the cross quadrants, so the concordant ratios come out positive and
    // the cross ratios negative.
    double num[2][2] = {{0, 0}, {0, 0}};
    double den[2][2] = {{0, 0}, {0, 0}};
    for (Index j = 0; j < x.cols(); ++j) {
        const int cu = axis.u[j] > 0.0 ? 1 : 0;
        for (Index i = 0; i < x.rows(); ++i) {
            const int rv = axis.v[i] > 0.0 ? 1 : 0;
            num[rv][cu] += x(i, j);
            den[rv][cu] += std::abs(x(i, j));
        }
    }
    auto ratio = [&](int rv, int cu) -> std::optional<double> {
        if (den[rv][cu] == 0.0) return std::nullopt;
        return num[rv][cu] / den[rv][cu];
    };
    rec.quadrants.pos_pos = ratio(1, 1);
    rec.quadrants.neg_neg = ratio(0, 0);
    rec.quadrants.neg_pos = ratio(0, 1);
    rec.quadrants.pos_neg = ratio(1, 0);

    const auto rl = row_labels.empty() ? index_labels(x.rows()) : row_labels;
    const auto cl = col_labels.empty() ? index_labels(x.cols()) : col_labels;
    if (rl.size() != static_cast<std::size_t>(x.rows()) ||
        cl.size() != static_cast<std::size_t>(x.cols()))
        throw DimensionMismatchError("label counts do not match the decomposed matrix");
    for (Index i = 0; i < x.rows(); ++i)
        if (axis.v[i] > 0.0) rec.s_rows.push_back(rl[static_cast<std::size_t>(i)]);
    for (Index j = 0; j < x.cols(); ++j)
        if (axis.u[j] > 0.0) rec.t_cols.push_back(cl[static_cast<std::size_t>(j)]);
    return rec;
}

QsrAxisRecord qsr(const WeightedFactorization& fact, int alpha) {
    return qsr_axis(fact.decomposition(), alpha, fact.source().row_labels(),
                    fact.source().col_labels());
}

QsrReport qsr_report(const WeightedFactorization& fact, int max_axes) {
    if (max_axes < 1) throw ConfigError("number of axes must be at least 1");
    QsrReport report;
    const int n = static_cast<int>(std::min<Index>(max_axes, fact.rank()));
    for (int alpha = 1; alpha <= n; ++alpha) report.axes.push_back(qsr(fact, alpha));
    return report;
}

QsrTable qsr_table(
    const std::vector<std::pair<std::string, const WeightedFactorization*>>& methods,
    int axes) {
    if (axes < 1) throw ConfigError("number of axes must be at least 1");
    QsrTable table;
    table.axes_shown = axes;
    for (const auto& [name, fact] : methods) {
        QsrTableEntry entry;
        entry.name = name;
        entry.report = qsr_report(*fact, axes);
        double score = 0.0;
        for (const auto& rec : entry.report.axes)
            if (rec.alpha <= 2) score += rec.qsr;
        entry.preference_score = 100.0 * score;
        entry.truncated = entry.report.axes.size() < 2;
        table.entries.push_back(std::move(entry));
    }
    return table;
}

namespace {

std::string fixed1(double percent) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", percent);
    return buf;
}

std::string short_delta(double delta) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", delta);
    return buf;
}

std::string pct_or_dash(const std::optional<double>& q) {
    return q ? fixed1(100.0 * *q) : std::string("--");
}

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

}  // namespace

std::string format_qsr_table(const QsrTable& table) {
    std::ostringstream out;
    out << "quadrant sign ratios (%), axes 1.." << table.axes_shown << "\n";
    const std::string rule(78, '-');
    for (const auto& entry : table.entries) {
        out << rule << "\n";
        out << "method: " << entry.name << "\n";
        out << pad("axis", 6) << pad("(V+U+, V-U-)", 24) << pad("(V-U+, V+U-)", 24)
            << pad("QSR", 9) << "delta" << "\n";
        for (const auto& rec : entry.report.axes) {
            std::string same = "(" + pct_or_dash(rec.quadrants.pos_pos) + ", " +
                               pct_or_dash(rec.quadrants.neg_neg) + ")";
            std::string cross = "(" + pct_or_dash(rec.quadrants.neg_pos) + ", " +
                                pct_or_dash(rec.quadrants.pos_neg) + ")";
            out << pad(std::to_string(rec.alpha), 6) << pad(same, 24) << pad(cross, 24)
                << pad(fixed1(100.0 * rec.qsr), 9) << short_delta(rec.delta) << "\n";
        }
        out << "preference score QSR1+QSR2: " << fixed1(entry.preference_score)
            << (entry.truncated ? " (truncated: fewer than 2 axes)" : "") << "\n";
    }
    return out.str();
}

std::string qsr_table_csv(const QsrTable& table) {
    std::ostringstream out;
    out << "method,axis,qsr_pos_pos,qsr_neg_neg,qsr_neg_pos,qsr_pos_neg,qsr,delta,"
           "preference_score,truncated\n";
    auto field = [](const std::optional<double>& q) {
        return q ? format_double(*q) : std::string();
    };
    for (const auto& entry : table.entries) {
        for (const auto& rec : entry.report.axes) {
            out << entry.name << ',' << rec.alpha << ',' << field(rec.quadrants.pos_pos) << ','
                << field(rec.quadrants.neg_neg) << ',' << field(rec.quadrants.neg_pos) << ','
                << field(rec.quadrants.pos_neg) << ',' << format_double(rec.qsr) << ','
                << format_double(rec.delta) << ',' << format_double(entry.preference_score) << ','
                << (entry.truncated ? 1 : 0) << "\n";
        }
    }
    return out.str();
}

}  // namespace tlra
