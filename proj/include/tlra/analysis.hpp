#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tlra/qsr.hpp"
#include "tlra/synth.hpp"

namespace tlra {

inline constexpr std::string_view kVersion = "0.1.0";

/// The three analysis variants: taxicab analysis of the aggregate log
/// interactions (t-tlra), of the aggregated elementary log interactions
/// (a-tlra), and of their closed-form first-order version (a-approx).
enum class Method { TTlra, ATlra, AApprox };

std::string_view to_string(Method method);
Method method_from_string(std::string_view name);

enum class ColWeightChoice { Uniform, Marginal, File };

struct AnalysisConfig {
    std::vector<Method> methods;
    int n_axes = 4;
    SolverMode mode = SolverMode::Auto;
    std::uint64_t solver_seed = kDefaultSolverSeed;
    ColWeightChoice col_weights = ColWeightChoice::Uniform;
    std::filesystem::path col_weights_file;
    double pseudo_count = 0.0;
    bool plots = false;
    std::filesystem::path out_dir;
};

/// Loaded inputs. t-tlra accepts either (x, z) or a bare t; the aggregated
/// methods need (x, z) (or, for a-approx, a t carrying its origin).
struct AnalysisInputs {
    std::optional<ElementaryTable> x;
    std::optional<IndicatorMatrix> z;
    std::optional<AggregateTable> t;
    /// (role, path) of the files the tables came from, for the manifest.
    std::vector<std::pair<std::string, std::filesystem::path>> source_files;
};

struct MethodResult {
    Method method;
    int axes_computed = 0;
    std::vector<std::filesystem::path> files;  // relative to out_dir
};

struct RunSummary {
    std::vector<MethodResult> methods;
    std::string comparison_text;
    std::vector<std::filesystem::path> files;  // everything written, relative
};

/// Run the configured methods concurrently, write per-method artifacts
/// (interaction CSV + sidecar, factor scores, factorization JSON, QSR
/// table, optional maps), the cross-method comparison, and a manifest with
/// content checksums. Reruns on identical input are byte-identical.
RunSummary run_analysis(const AnalysisConfig& config, const AnalysisInputs& inputs);

/// File-level wrapper: loads the tables, then delegates to run_analysis.
RunSummary run_analysis_files(const AnalysisConfig& config,
                              const std::optional<std::filesystem::path>& x_path,
                              const std::optional<std::filesystem::path>& z_path,
                              const std::vector<Index>& z_blocks,
                              const std::optional<std::filesystem::path>& t_path);

/// Write a generated benchmark pair as X.csv / Z.csv under out_dir.
std::vector<std::filesystem::path> write_synthetic(const SyntheticOptions& options,
                                                   const std::filesystem::path& out_dir);

/// FNV-1a 64-bit content hash, printed as 16 hex digits in the manifest.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace tlra
