#include <doctest.h>

#include <Eigen/SVD>
#include <cmath>
#include <random>

#include "test_util.hpp"
#include "tlra/tsvd.hpp"

using namespace tlra;

namespace {

// Exact optimum by enumerating every (u, v) sign pair. Independent of the
// solver's shortcuts; only usable for tiny matrices.
double brute_force_delta(const Matrix& x) {
    const Index rows = x.rows();
    const Index cols = x.cols();
    double best = -std::numeric_limits<double>::infinity();
    for (std::uint64_t wu = 0; wu < (std::uint64_t{1} << cols); ++wu) {
        Vector u(cols);
        for (Index j = 0; j < cols; ++j) u[j] = (wu >> j) & 1u ? -1.0 : 1.0;
        for (std::uint64_t wv = 0; wv < (std::uint64_t{1} << rows); ++wv) {
            Vector v(rows);
            for (Index i = 0; i < rows; ++i) v[i] = (wv >> i) & 1u ? -1.0 : 1.0;
            best = std::max(best, v.dot(x * u));
        }
    }
    return best;
}

Index numeric_rank(const Matrix& m) {
    Eigen::JacobiSVD<Matrix> svd(m);
    const auto& s = svd.singularValues();
    if (s.size() == 0) return 0;
    const double thresh = std::max(1e-12, 1e-9 * s[0]);
    Index rank = 0;
    for (Index i = 0; i < s.size(); ++i)
        if (s[i] > thresh) ++rank;
    return rank;
}

bool vectors_equal(const Vector& a, const Vector& b) {
    return a.size() == b.size() && (a.array() == b.array()).all();
}

}  // namespace

TEST_CASE("rank-one matrix is recovered in one axis") {
    // X = (1,-2)' (3,1): best u = (1,1), a = (4,-8), v = (1,-1), b = (9,3)
    Matrix x(2, 2);
    x << 3, 1, -6, -2;
    L1Maximum best = maximize_l1(x);
    CHECK(best.axis.delta == doctest::Approx(12.0).epsilon(1e-14));
    CHECK(vectors_equal(best.axis.u, (Vector(2) << 1, 1).finished()));
    CHECK(vectors_equal(best.axis.v, (Vector(2) << 1, -1).finished()));
    CHECK(vectors_equal(best.axis.a, (Vector(2) << 4, -8).finished()));
    CHECK(vectors_equal(best.axis.b, (Vector(2) << 9, 3).finished()));

    TaxicabDecomposition dec = decompose(x);
    CHECK(dec.rank() == 1);
    CHECK(dec.final_residual_l1 < 1e-12);
    CHECK((dec.reconstruct() - x).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("doubly centered 2x2 exchange pattern") {
    Matrix x(2, 2);
    x << 2, -2, -2, 2;
    TaxicabDecomposition dec = decompose(x);
    REQUIRE(dec.rank() == 1);
    const TaxicabAxis& ax = dec.axes[0];
    CHECK(ax.delta == doctest::Approx(8.0).epsilon(1e-14));
    CHECK(ax.u[0] * ax.u[1] == -1.0);
    CHECK(ax.v[0] * ax.v[1] == -1.0);
    CHECK(dec.final_residual_l1 < 1e-12);
}

TEST_CASE("fixed point satisfies the score chain and sign coupling") {
    std::mt19937_64 rng(91);
    Matrix x = random_matrix(rng, 6, 5, -2.0, 2.0);
    TaxicabDecomposition dec = decompose(x);
    REQUIRE(dec.rank() >= 1);
    for (Index k = 0; k < dec.rank(); ++k) {
        const TaxicabAxis& ax = dec.axes[k];
        const Matrix& source = dec.residuals[static_cast<std::size_t>(k)];
        const double tol = 1e-10 * (1.0 + ax.delta);
        CHECK(std::abs(ax.a.cwiseAbs().sum() - ax.delta) < tol);
        CHECK(std::abs(ax.b.cwiseAbs().sum() - ax.delta) < tol);
        CHECK(std::abs(ax.v.dot(source * ax.u) - ax.delta) < tol);
        // sign coupling (zeros fall to -1)
        for (Index i = 0; i < ax.a.size(); ++i)
            CHECK(ax.v[i] == (ax.a[i] > 0.0 ? 1.0 : -1.0));
        for (Index j = 0; j < ax.b.size(); ++j)
            CHECK(ax.u[j] == (ax.b[j] > 0.0 ? 1.0 : -1.0));
        // scores really are residual-matrix images of the sign vectors
        CHECK((ax.a - source * ax.u).cwiseAbs().maxCoeff() < tol);
        CHECK((ax.b - source.transpose() * ax.v).cwiseAbs().maxCoeff() < tol);
    }
}

TEST_CASE("zero coordinates classify as negative") {
    Matrix x(2, 2);
    x << 1, 0, 0, 0;
    L1Maximum best = maximize_l1(x);
    CHECK(best.axis.delta == 1.0);
    CHECK(best.axis.v[1] == -1.0);
    CHECK(best.axis.u[1] == -1.0);
}

TEST_CASE("exhaustive solver matches full sign-pair enumeration") {
    std::mt19937_64 rng(92);
    for (int trial = 0; trial < 8; ++trial) {
        Matrix x = random_matrix(rng, 4, 3, -3.0, 3.0);
        L1Maximum best = maximize_l1(x, {SolverMode::Exhaustive});
        CHECK(best.axis.delta == doctest::Approx(brute_force_delta(x)).epsilon(1e-12));
        CHECK(best.trace.method == "exhaustive");
        CHECK(best.trace.starts_tried == 4);  // 2^(3-1) patterns on the short side
    }
}

TEST_CASE("ascent solver is a lower bound and finds the optimum here") {
    std::mt19937_64 rng(93);
    for (int trial = 0; trial < 6; ++trial) {
        Matrix x = random_matrix(rng, 7, 5, -1.0, 1.0);
        double exact = maximize_l1(x, {SolverMode::Exhaustive}).axis.delta;
        L1Maximum climbed = maximize_l1(x, {SolverMode::Ascent});
        CHECK(climbed.axis.delta <= exact + 1e-12);
        CHECK(climbed.axis.delta == doctest::Approx(exact).epsilon(1e-12));
        CHECK(climbed.trace.method == "ascent");
        CHECK(climbed.trace.starts_tried == 5 + 32);
    }
}

TEST_CASE("auto mode switches on the short side") {
    std::mt19937_64 rng(94);
    Matrix small = random_matrix(rng, 25, 3, -1.0, 1.0);
    CHECK(maximize_l1(small).trace.method == "exhaustive");

    Matrix large = random_matrix(rng, 21, 22, -1.0, 1.0);
    CHECK(maximize_l1(large).trace.method == "ascent");

    SolverOptions tight;
    tight.exhaustive_limit = 2;
    CHECK(maximize_l1(small, tight).trace.method == "ascent");

    SolverOptions forced;
    forced.mode = SolverMode::Exhaustive;
    Matrix wide = random_matrix(rng, 63, 64, -1.0, 1.0);
    CHECK_THROWS_AS(maximize_l1(wide, forced), ConfigError);
}

TEST_CASE("deflation removes exactly one rank per axis") {
    std::mt19937_64 rng(95);
    Matrix x = random_matrix(rng, 6, 5, -2.0, 2.0);
    REQUIRE(numeric_rank(x) == 5);
    TaxicabDecomposition dec = decompose(x);
    CHECK(dec.rank() == 5);
    for (Index k = 0; k < dec.rank(); ++k)
        CHECK(numeric_rank(dec.residuals[static_cast<std::size_t>(k)]) == 5 - k);
    CHECK(dec.final_residual_l1 < 1e-8 * dec.residual_l1_norms[0]);
    CHECK((dec.reconstruct() - x).cwiseAbs().maxCoeff() < 1e-8 * x.cwiseAbs().maxCoeff());
}

TEST_CASE("later residuals are conjugate to earlier sign vectors") {
    std::mt19937_64 rng(96);
    // no centering here: the conjugacy is a property of deflation itself
    Matrix x = random_matrix(rng, 8, 6, -2.0, 2.0);
    TaxicabDecomposition dec = decompose(x);
    REQUIRE(dec.rank() >= 3);
    for (Index later = 1; later < dec.rank(); ++later) {
        for (Index earlier = 0; earlier < later; ++earlier) {
            const double tol = 1e-9 * (1.0 + dec.axes[earlier].delta);
            CHECK(std::abs(dec.axes[earlier].v.dot(dec.axes[later].a)) < tol);
            CHECK(std::abs(dec.axes[later].b.dot(dec.axes[earlier].u)) < tol);
        }
    }
}

TEST_CASE("degenerate inputs") {
    CHECK_THROWS_AS(maximize_l1(Matrix::Zero(3, 3)), ZeroMatrixError);
    CHECK_THROWS_AS(maximize_l1(Matrix()), DimensionMismatchError);
    Matrix bad = Matrix::Ones(2, 2);
    bad(1, 1) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(maximize_l1(bad), NonFiniteError);

    TaxicabDecomposition empty = decompose(Matrix::Zero(4, 3));
    CHECK(empty.rank() == 0);
    CHECK(empty.final_residual_l1 == 0.0);
    CHECK(empty.rows == 4);

    CHECK_THROWS_AS(decompose(Matrix::Ones(2, 2), 0), ConfigError);
}

TEST_CASE("axis count is capped and truncation keeps partial sums") {
    std::mt19937_64 rng(97);
    Matrix x = random_matrix(rng, 6, 4, -1.0, 1.0);
    TaxicabDecomposition two = decompose(x, 2);
    CHECK(two.rank() == 2);
    CHECK(two.residuals.size() == 2);

    Matrix partial = Matrix::Zero(6, 4);
    for (const auto& ax : two.axes) partial += ax.a * ax.b.transpose() / ax.delta;
    CHECK((two.reconstruct() - partial).cwiseAbs().maxCoeff() == 0.0);
    CHECK(std::abs((x - partial).cwiseAbs().sum() - two.final_residual_l1) <
          1e-10 * (1.0 + two.final_residual_l1));

    TaxicabDecomposition over = decompose(x, 99);
    CHECK(over.rank() <= 4);
}

TEST_CASE("repeat runs are bitwise identical") {
    std::mt19937_64 rng(98);
    Matrix x = random_matrix(rng, 9, 7, -2.0, 2.0);
    for (SolverMode mode : {SolverMode::Exhaustive, SolverMode::Ascent}) {
        SolverOptions opt;
        opt.mode = mode;
        TaxicabDecomposition first = decompose(x, std::nullopt, opt);
        TaxicabDecomposition second = decompose(x, std::nullopt, opt);
        REQUIRE(first.rank() == second.rank());
        for (Index k = 0; k < first.rank(); ++k) {
            CHECK(first.axes[k].delta == second.axes[k].delta);
            CHECK(vectors_equal(first.axes[k].u, second.axes[k].u));
            CHECK(vectors_equal(first.axes[k].v, second.axes[k].v));
        }
    }
}

TEST_CASE("orientation pins the dominant column score positive") {
    TaxicabAxis ax;
    ax.delta = 6.0;
    ax.u = (Vector(2) << 1, -1).finished();
    ax.v = (Vector(2) << -1, 1).finished();
    ax.a = (Vector(2) << -2, 4).finished();
    ax.b = (Vector(2) << -5, 1).finished();

    TaxicabAxis flipped = orient_axis(ax);
    CHECK(flipped.b[0] == 5.0);
    CHECK(flipped.u[0] == -1.0);
    CHECK(flipped.v[0] == 1.0);
    CHECK(flipped.a[0] == 2.0);
    CHECK(flipped.delta == 6.0);

    ax.b = (Vector(2) << 5, -1).finished();
    TaxicabAxis kept = orient_axis(ax);
    CHECK(vectors_equal(kept.u, ax.u));
    CHECK(vectors_equal(kept.b, ax.b));
}

TEST_CASE("solver mode names round trip") {
    for (SolverMode mode : {SolverMode::Auto, SolverMode::Exhaustive, SolverMode::Ascent})
        CHECK(solver_mode_from_string(to_string(mode)) == mode);
    CHECK_THROWS_AS(solver_mode_from_string("fast"), ConfigError);
}
