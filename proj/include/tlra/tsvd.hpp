#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tlra/csv.hpp"
#include "tlra/errors.hpp"

namespace tlra {

/// Stop extracting axes once the residual L1 mass falls below this fraction
/// of the initial L1 mass.
inline constexpr double kResidualStopRel = 1e-10;

/// Seed for the randomized starts of the ascent solver. Fixed so that runs
/// are reproducible; override through SolverOptions::seed.
inline constexpr std::uint64_t kDefaultSolverSeed = 0x7AC51CAB7AC51CABULL;

enum class SolverMode { Auto, Exhaustive, Ascent };

std::string_view to_string(SolverMode mode);
SolverMode solver_mode_from_string(std::string_view name);

struct SolverOptions {
    SolverMode mode = SolverMode::Auto;
    /// Auto picks the exhaustive solver while min(rows, cols) stays at or
    /// under this, and the multi-start ascent above it.
    int exhaustive_limit = 20;
    int random_starts = 32;
    std::uint64_t seed = kDefaultSolverSeed;
};

/// One extracted axis: sign vectors u, v and contribution scores a = X u,
/// b = X' v, with delta = |a|_1 = |b|_1 = v' X u.
struct TaxicabAxis {
    double delta = 0.0;
    Vector u;
    Vector v;
    Vector a;
    Vector b;
};

struct AxisTrace {
    std::string method;     // "exhaustive" or "ascent"
    int starts_tried = 0;
    int iterations = 0;
};

struct L1Maximum {
    TaxicabAxis axis;
    AxisTrace trace;
};

/// Maximize |X u|_1 over sign vectors u. The exhaustive solver enumerates the
/// shorter side and is exact; the ascent solver runs the alternating
/// sign-iteration from every column start plus seeded random starts and is a
/// lower bound. Ties break deterministically. Throws ZeroMatrixError on a
/// zero matrix.
L1Maximum maximize_l1(const Matrix& x, const SolverOptions& options = {});

/// Stepwise rank-one decomposition by repeated L1 maximization and deflation
/// X_{a+1} = X_a - a b' / delta. Each deflation lowers the rank by one.
struct TaxicabDecomposition {
    Index rank() const { return static_cast<Index>(axes.size()); }

    /// Sum of a b' / delta over the extracted axes.
    Matrix reconstruct() const;

    Index rows = 0;
    Index cols = 0;
    std::vector<TaxicabAxis> axes;
    std::vector<AxisTrace> traces;
    /// residuals[k] is X_{k+1}, the matrix the (k+1)-th axis was extracted
    /// from; residual_l1_norms[k] is its L1 mass.
    std::vector<Matrix> residuals;
    std::vector<double> residual_l1_norms;
    double final_residual_l1 = 0.0;
};

/// Extract up to n_axes axes (all the way to rank if not given). A zero
/// matrix yields an empty decomposition.
TaxicabDecomposition decompose(const Matrix& x, std::optional<int> n_axes = std::nullopt,
                               const SolverOptions& options = {});

/// Sign convention for reporting: flip (u, a) and (v, b) together so that the
/// largest-|b| coordinate is positive, lowest index on ties. delta is
/// unchanged.
TaxicabAxis orient_axis(TaxicabAxis axis);

}  // namespace tlra
