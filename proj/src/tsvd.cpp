#include "tlra/tsvd.hpp"

#include <cmath>
#include <random>

#include "tlra/errors.hpp"

namespace tlra {

namespace {

// sign(t) with sign(0) = -1, applied coordinatewise. Zeros are pushed to the
// negative class so every coordinate lands in exactly one partition.
inline Vector sign_vector(const Vector& x) {
    Vector s(x.size());
    for (Index i = 0; i < x.size(); ++i) s[i] = x[i] > 0.0 ? 1.0 : -1.0;
    return s;
}

constexpr int kMaxSweeps = 1000;

struct FixedPointResult {
    TaxicabAxis axis;
    int iterations = 0;
};

// Alternating sign iteration a = Xu, v = sign(a), b = X'v, u = sign(b).
// Each sweep is an L1 ascent, so it terminates at a fixed point where the
// chain |a|_1 = v'Xu = |b|_1 holds exactly.
FixedPointResult run_from_u(const Matrix& x, Vector u) {
    FixedPointResult r;
    Vector a, v, b;
    while (true) {
        ++r.iterations;
        a = x * u;
        v = sign_vector(a);
        b = x.transpose() * v;
        Vector u_next = sign_vector(b);
        if ((u_next.array() == u.array()).all() || r.iterations >= kMaxSweeps) {
            u = std::move(u_next);
            if (r.iterations >= kMaxSweeps) {
                a = x * u;
                v = sign_vector(a);
                b = x.transpose() * v;
            }
            break;
        }
        u = std::move(u_next);
    }
    r.axis.u = std::move(u);
    r.axis.v = std::move(v);
    r.axis.a = std::move(a);
    r.axis.b = std::move(b);
    r.axis.delta = r.axis.a.cwiseAbs().sum();
    return r;
}

FixedPointResult run_from_v(const Matrix& x, const Vector& v) {
    return run_from_u(x, sign_vector(x.transpose() * v));
}

// Canonical signature of an axis direction, invariant under the joint
// (u, v) flip. Used only to break exact delta ties deterministically.
std::vector<bool> canonical_key(const Vector& u) {
    const double flip = u[0] > 0.0 ? 1.0 : -1.0;
    std::vector<bool> key(static_cast<std::size_t>(u.size()));
    for (Index i = 0; i < u.size(); ++i) key[static_cast<std::size_t>(i)] = flip * u[i] > 0.0;
    return key;
}

L1Maximum solve_exhaustive(const Matrix& x) {
    const bool enumerate_cols = x.cols() <= x.rows();
    const Index m = enumerate_cols ? x.cols() : x.rows();
    if (m > 62) throw ConfigError("exhaustive enumeration infeasible for side " + std::to_string(m));

    // The objective is flip-invariant, so pin the first coordinate to +1 and
    // walk the remaining 2^(m-1) patterns; the earliest best wins.
    const std::uint64_t count = std::uint64_t{1} << (m - 1);
    Vector s(m);
    Vector best_s;
    double best_score = -1.0;
    for (std::uint64_t w = 0; w < count; ++w) {
        s[0] = 1.0;
        for (Index j = 1; j < m; ++j)
            s[j] = ((w >> (m - 1 - j)) & 1u) ? -1.0 : 1.0;
        const double score =
            enumerate_cols ? (x * s).cwiseAbs().sum() : (x.transpose() * s).cwiseAbs().sum();
        if (score > best_score) {
            best_score = score;
            best_s = s;
        }
    }

    // Polish to the alternating fixed point; at a global maximum the
    // objective cannot move, so this only settles u = sign(b) ties.
    FixedPointResult fp =
        enumerate_cols ? run_from_u(x, best_s) : run_from_v(x, best_s);
    return {std::move(fp.axis),
            AxisTrace{"exhaustive", static_cast<int>(count), fp.iterations}};
}

L1Maximum solve_ascent(const Matrix& x, const SolverOptions& options) {
    std::mt19937_64 rng(options.seed);
    const Index rows = x.rows();
    const Index cols = x.cols();

    bool have_best = false;
    TaxicabAxis best;
    std::vector<bool> best_key;
    int total_iterations = 0;
    auto consider = [&](FixedPointResult fp) {
        total_iterations += fp.iterations;
        if (!have_best) {
            best = std::move(fp.axis);
            best_key = canonical_key(best.u);
            have_best = true;
            return;
        }
        if (fp.axis.delta > best.delta) {
            best = std::move(fp.axis);
            best_key = canonical_key(best.u);
        } else if (fp.axis.delta == best.delta) {
            auto key = canonical_key(fp.axis.u);
            if (key < best_key) {
                best = std::move(fp.axis);
                best_key = std::move(key);
            }
        }
    };

    for (Index j = 0; j < cols; ++j) consider(run_from_v(x, sign_vector(x.col(j))));
    for (int s = 0; s < options.random_starts; ++s) {
        Vector v(rows);
        for (Index i = 0; i < rows; ++i) v[i] = (rng() >> 63) ? 1.0 : -1.0;
        consider(run_from_v(x, v));
    }

    return {std::move(best),
            AxisTrace{"ascent", static_cast<int>(cols) + options.random_starts,
                      total_iterations}};
}

}  // namespace

std::string_view to_string(SolverMode mode) {
    switch (mode) {
        case SolverMode::Auto: return "auto";
        case SolverMode::Exhaustive: return "exhaustive";
        case SolverMode::Ascent: return "ascent";
    }
    return "unknown";
}

SolverMode solver_mode_from_string(std::string_view name) {
    if (name == "auto") return SolverMode::Auto;
    if (name == "exhaustive") return SolverMode::Exhaustive;
    if (name == "ascent") return SolverMode::Ascent;
    throw ConfigError("unknown solver mode \"" + std::string(name) + "\"");
}

L1Maximum maximize_l1(const Matrix& x, const SolverOptions& options) {
    if (x.rows() < 1 || x.cols() < 1) throw DimensionMismatchError("matrix is empty");
    if (!x.allFinite()) throw NonFiniteError("matrix contains a non-finite entry");
    if (x.cwiseAbs().maxCoeff() == 0.0) throw ZeroMatrixError("matrix is identically zero");

    SolverMode mode = options.mode;
    if (mode == SolverMode::Auto)
        mode = std::min(x.rows(), x.cols()) <= options.exhaustive_limit ? SolverMode::Exhaustive
                                                                        : SolverMode::Ascent;
    return mode == SolverMode::Exhaustive ? solve_exhaustive(x) : solve_ascent(x, options);
}

Matrix TaxicabDecomposition::reconstruct() const {
    Matrix sum = Matrix::Zero(rows, cols);
    for (const auto& axis : axes) sum += axis.a * axis.b.transpose() / axis.delta;
    return sum;
}

TaxicabDecomposition decompose(const Matrix& x, std::optional<int> n_axes,
                               const SolverOptions& options) {
    if (x.rows() < 1 || x.cols() < 1) throw DimensionMismatchError("matrix is empty");
    if (!x.allFinite()) throw NonFiniteError("matrix contains a non-finite entry");
    if (n_axes && *n_axes < 1) throw ConfigError("number of axes must be at least 1");

    TaxicabDecomposition dec;
    dec.rows = x.rows();
    dec.cols = x.cols();

    const double initial_l1 = x.cwiseAbs().sum();
    dec.final_residual_l1 = initial_l1;
    if (initial_l1 == 0.0) return dec;

    const Index max_rank = std::min(x.rows(), x.cols());
    Index steps = max_rank;
    if (n_axes) steps = std::min<Index>(steps, *n_axes);

    Matrix residual = x;
    for (Index step = 0; step < steps; ++step) {
        const double l1 = residual.cwiseAbs().sum();
        if (l1 < kResidualStopRel * initial_l1) break;
        L1Maximum found = maximize_l1(residual, options);
        dec.residuals.push_back(residual);
        dec.residual_l1_norms.push_back(l1);
        residual -= found.axis.a * found.axis.b.transpose() / found.axis.delta;
        dec.axes.push_back(std::move(found.axis));
        dec.traces.push_back(std::move(found.trace));
    }
    dec.final_residual_l1 = residual.cwiseAbs().sum();
    return dec;
}

TaxicabAxis orient_axis(TaxicabAxis axis) {
    Index pivot = 0;
    double largest = -1.0;
    for (Index j = 0; j < axis.b.size(); ++j) {
        if (std::abs(axis.b[j]) > largest) {
            largest = std::abs(axis.b[j]);
            pivot = j;
        }
    }
    if (axis.b[pivot] < 0.0) {
        axis.u = -axis.u;
        axis.v = -axis.v;
        axis.a = -axis.a;
        axis.b = -axis.b;
    }
    return axis;
}

}  // namespace tlra
