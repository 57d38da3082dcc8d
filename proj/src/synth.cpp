#include "tlra/synth.hpp"

#include <cmath>
#include <random>

namespace tlra {

namespace {

// Deterministic draws on top of the raw mt19937_64 stream. std::*
// distributions are avoided on purpose: their algorithms may differ between
// standard libraries, and the generated benchmarks must be stable.
class Draws {
public:
    explicit Draws(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t bits() { return engine_(); }

    Index pick(Index n) { return static_cast<Index>(bits() % static_cast<std::uint64_t>(n)); }

    double unit() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = unit();
        while (u1 <= 0.0) u1 = unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.14159265358979323846 * unit();
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace

SyntheticData generate_synthetic(const SyntheticOptions& options) {
    if (options.rows < 2) throw ConfigError("need at least 2 rows");
    if (options.cols < 2) throw ConfigError("need at least 2 columns");
    if (options.blocks.empty()) throw ConfigError("need at least one covariate block");
    for (Index b : options.blocks)
        if (b < 1) throw ConfigError("covariate block sizes must be positive");
    if (options.effect < 0.0) throw ConfigError("effect size must be nonnegative");
    if (options.noise_sd < 0.0) throw ConfigError("noise level must be nonnegative");

    const Index i_n = options.rows;
    const Index j_n = options.cols;
    Index k_n = 0;
    for (Index b : options.blocks) k_n += b;

    Draws rng(options.seed);

    // Draw order is part of the format: memberships, then column baselines,
    // then category effects, then cell noise.
    Matrix z = Matrix::Zero(i_n, k_n);
    for (Index i = 0; i < i_n; ++i) {
        Index offset = 0;
        for (Index b : options.blocks) {
            z(i, offset + rng.pick(b)) = 1.0;
            offset += b;
        }
    }

    Vector base(j_n);
    for (Index j = 0; j < j_n; ++j) base[j] = 100.0 + 900.0 * rng.unit();

    Matrix theta(k_n, j_n);
    for (Index k = 0; k < k_n; ++k)
        for (Index j = 0; j < j_n; ++j) theta(k, j) = options.effect * rng.normal();

    Matrix x(i_n, j_n);
    for (Index i = 0; i < i_n; ++i) {
        for (Index j = 0; j < j_n; ++j) {
            double shift = 0.0;
            for (Index k = 0; k < k_n; ++k)
                if (z(i, k) != 0.0) shift += theta(k, j);
            x(i, j) = base[j] * std::exp(shift + options.noise_sd * rng.normal());
        }
    }

    std::vector<std::string> row_labels;
    row_labels.reserve(static_cast<std::size_t>(i_n));
    for (Index i = 0; i < i_n; ++i) row_labels.push_back("obs" + std::to_string(i + 1));
    std::vector<std::string> col_labels;
    for (Index j = 0; j < j_n; ++j) col_labels.push_back("item" + std::to_string(j + 1));
    std::vector<std::string> cat_labels;
    for (std::size_t q = 0; q < options.blocks.size(); ++q)
        for (Index l = 0; l < options.blocks[q]; ++l)
            cat_labels.push_back("v" + std::to_string(q + 1) + "l" + std::to_string(l + 1));

    return SyntheticData{
        ElementaryTable(std::move(x), std::move(row_labels), std::move(col_labels)),
        IndicatorMatrix(std::move(z), std::move(cat_labels), options.blocks)};
}

}  // namespace tlra
