#include "tlra/analysis.hpp"

#include <fstream>
#include <future>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tlra/svg.hpp"

namespace tlra {

using nlohmann::json;

std::string_view to_string(Method method) {
    switch (method) {
        case Method::TTlra: return "t-tlra";
        case Method::ATlra: return "a-tlra";
        case Method::AApprox: return "a-approx";
    }
    return "unknown";
}

Method method_from_string(std::string_view name) {
    if (name == "t-tlra") return Method::TTlra;
    if (name == "a-tlra") return Method::ATlra;
    if (name == "a-approx") return Method::AApprox;
    throw ConfigError("unknown method \"" + std::string(name) +
                      "\" (expected t-tlra, a-tlra or a-approx)");
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

namespace {

std::string hex64(std::uint64_t value) {
    static const char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[value & 0xf];
        value >>= 4;
    }
    return out;
}

std::string read_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_bytes(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path.string());
    out << content;
}

json vector_json(const Vector& v) {
    json arr = json::array();
    for (Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

json interaction_json(const InteractionMatrix& m) {
    return json{{"kind", std::string(to_string(m.kind()))},
                {"q", m.q()},
                {"rows", m.rows()},
                {"cols", m.cols()},
                {"row_labels", m.row_labels()},
                {"col_labels", m.col_labels()},
                {"row_weights", vector_json(m.row_weights().values())},
                {"col_weights", vector_json(m.col_weights().values())}};
}

json factorization_json(const WeightedFactorization& fact) {
    const auto& dec = fact.decomposition();
    json axes = json::array();
    for (std::size_t k = 0; k < dec.axes.size(); ++k) {
        const auto& axis = dec.axes[k];
        const auto& trace = dec.traces[k];
        axes.push_back(json{{"alpha", k + 1},
                            {"delta", axis.delta},
                            {"u", vector_json(axis.u)},
                            {"v", vector_json(axis.v)},
                            {"a", vector_json(axis.a)},
                            {"b", vector_json(axis.b)},
                            {"f", vector_json(fact.row_scores()[k])},
                            {"g", vector_json(fact.col_scores()[k])},
                            {"trace",
                             json{{"method", trace.method},
                                  {"starts_tried", trace.starts_tried},
                                  {"iterations", trace.iterations}}}});
    }
    json out = interaction_json(fact.source());
    out["rank"] = dec.rank();
    out["axes"] = axes;
    json norms = json::array();
    for (double n : dec.residual_l1_norms) norms.push_back(n);
    out["residual_l1_norms"] = norms;
    out["final_residual_l1"] = dec.final_residual_l1;
    return out;
}

json qsr_json(const QsrTableEntry& entry) {
    json axes = json::array();
    auto quad = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
    for (const auto& rec : entry.report.axes) {
        axes.push_back(json{{"alpha", rec.alpha},
                            {"delta", rec.delta},
                            {"qsr", rec.qsr},
                            {"quadrants",
                             json{{"pos_pos", quad(rec.quadrants.pos_pos)},
                                  {"neg_neg", quad(rec.quadrants.neg_neg)},
                                  {"neg_pos", quad(rec.quadrants.neg_pos)},
                                  {"pos_neg", quad(rec.quadrants.pos_neg)}}},
                            {"s_rows", rec.s_rows},
                            {"t_cols", rec.t_cols}});
    }
    return json{{"method", entry.name},
                {"axes", axes},
                {"preference_score", entry.preference_score},
                {"truncated", entry.truncated}};
}

struct MethodContext {
    std::optional<AggregateTable> t;  // aggregate context shared by the methods
    WeightVector col_weights{Vector::Ones(1), {"1"}};
};

WeightVector resolve_col_weights(const AnalysisConfig& config, const AggregateTable& t) {
    switch (config.col_weights) {
        case ColWeightChoice::Uniform:
            return WeightVector::uniform(t.cols(), t.col_labels());
        case ColWeightChoice::Marginal:
            return column_marginal_weights(t).cols;
        case ColWeightChoice::File: {
            auto raw = read_number_line(config.col_weights_file);
            if (static_cast<Index>(raw.size()) != t.cols())
                throw DimensionMismatchError("weight file has " + std::to_string(raw.size()) +
                                             " values but the table has " +
                                             std::to_string(t.cols()) + " columns");
            Vector v(t.cols());
            for (Index j = 0; j < t.cols(); ++j) v[j] = raw[static_cast<std::size_t>(j)];
            return WeightVector(v, t.col_labels());
        }
    }
    throw ConfigError("unresolved column weight choice");
}

InteractionMatrix build_interaction(Method method, const AnalysisConfig& config,
                                    const AnalysisInputs& inputs, const MethodContext& ctx) {
    switch (method) {
        case Method::TTlra: {
            const AggregateTable& t = *ctx.t;
            WeightVector row_weights =
                inputs.z ? aggregate_marginal_weights(*inputs.z, t).rows
                         : WeightVector::uniform(t.rows(), t.row_labels());
            return log_interaction(t, row_weights, ctx.col_weights, config.pseudo_count);
        }
        case Method::ATlra:
            if (!inputs.x || !inputs.z)
                throw MissingOriginError("a-tlra needs the elementary table and the indicator");
            return aggregate_of_log_interactions(*inputs.x, *inputs.z,
                                                 WeightVector::uniform(inputs.x->rows()),
                                                 ctx.col_weights, config.pseudo_count);
        case Method::AApprox:
            if (inputs.x && inputs.z)
                return approx_aggregate_of_log_interactions(*inputs.x, *inputs.z,
                                                            ctx.col_weights);
            return approx_aggregate_of_log_interactions(*ctx.t, ctx.col_weights);
    }
    throw ConfigError("unresolved method");
}

}  // namespace

RunSummary run_analysis(const AnalysisConfig& config, const AnalysisInputs& inputs) {
    if (config.methods.empty()) throw ConfigError("no methods requested");
    for (std::size_t i = 0; i < config.methods.size(); ++i)
        for (std::size_t j = i + 1; j < config.methods.size(); ++j)
            if (config.methods[i] == config.methods[j])
                throw ConfigError("method " + std::string(to_string(config.methods[i])) +
                                  " requested twice");
    if (config.n_axes < 1) throw ConfigError("number of axes must be at least 1");
    if (config.out_dir.empty()) throw ConfigError("no output directory given");
    if (config.pseudo_count < 0.0) throw ConfigError("pseudo-count must be nonnegative");

    MethodContext ctx;
    if (inputs.t) {
        ctx.t = *inputs.t;
        if (inputs.z && inputs.z->categories() != inputs.t->rows())
            throw DimensionMismatchError("indicator categories do not match the aggregate rows");
    } else if (inputs.x && inputs.z) {
        ctx.t = aggregate(*inputs.x, *inputs.z, WeightVector::uniform(inputs.x->rows()));
    } else {
        throw ConfigError("inputs must include either an aggregate table or both the elementary "
                          "table and the indicator");
    }
    ctx.col_weights = resolve_col_weights(config, *ctx.t);

    SolverOptions solver;
    solver.mode = config.mode;
    solver.seed = config.solver_seed;

    // Methods are independent; factor them concurrently, then write
    // artifacts sequentially in the requested order.
    std::vector<std::future<WeightedFactorization>> jobs;
    for (Method method : config.methods)
        jobs.push_back(std::async(std::launch::async, [&, method] {
            InteractionMatrix interaction = build_interaction(method, config, inputs, ctx);
            return factorize(interaction, config.n_axes, solver);
        }));

    std::vector<WeightedFactorization> facts;
    facts.reserve(jobs.size());
    for (auto& job : jobs) facts.push_back(job.get());

    std::filesystem::create_directories(config.out_dir);
    RunSummary summary;

    auto emit = [&](const std::filesystem::path& rel, const std::string& content) {
        write_bytes(config.out_dir / rel, content);
        summary.files.push_back(rel);
    };

    std::vector<std::pair<std::string, const WeightedFactorization*>> named;
    for (std::size_t m = 0; m < config.methods.size(); ++m)
        named.emplace_back(std::string(to_string(config.methods[m])), &facts[m]);

    for (std::size_t m = 0; m < config.methods.size(); ++m) {
        const auto& fact = facts[m];
        const std::string dir(to_string(config.methods[m]));
        std::filesystem::create_directories(config.out_dir / dir);

        MethodResult result;
        result.method = config.methods[m];
        result.axes_computed = static_cast<int>(fact.rank());

        auto emit_method = [&](const std::string& name, const std::string& content) {
            emit(std::filesystem::path(dir) / name, content);
            result.files.push_back(std::filesystem::path(dir) / name);
        };

        emit_method("interaction.csv",
                    labeled_csv_string(LabeledMatrix{fact.source().row_labels(),
                                                     fact.source().col_labels(),
                                                     fact.source().values()}));
        emit_method("interaction.json", interaction_json(fact.source()).dump(2) + "\n");
        emit_method("factorization.json", factorization_json(fact).dump(2) + "\n");
        emit_method("row_scores.csv", labeled_csv_string(row_scores_table(fact)));
        emit_method("col_scores.csv", labeled_csv_string(col_scores_table(fact)));

        QsrTable own = qsr_table({{std::string(to_string(config.methods[m])), &fact}},
                                 config.n_axes);
        emit_method("qsr.txt", format_qsr_table(own));
        emit_method("qsr.csv", qsr_table_csv(own));
        emit_method("qsr.json", qsr_json(own.entries.front()).dump(2) + "\n");

        if (config.plots) {
            for (int first = 1; first + 1 <= result.axes_computed; first += 2) {
                PrincipalMap map = principal_map(fact, first, first + 1);
                SvgOptions opts;
                opts.title = std::string(to_string(config.methods[m])) + ": axes " +
                             std::to_string(first) + " and " + std::to_string(first + 1);
                emit_method("map_axes_" + std::to_string(first) + "_" +
                                std::to_string(first + 1) + ".svg",
                            principal_map_svg(map, opts));
            }
        }
        summary.methods.push_back(std::move(result));
    }

    QsrTable comparison = qsr_table(named, config.n_axes);
    summary.comparison_text = format_qsr_table(comparison);
    emit("comparison.txt", summary.comparison_text);
    emit("comparison.csv", qsr_table_csv(comparison));

    json manifest;
    manifest["command"] = "analyze";
    json cfg;
    json methods = json::array();
    for (Method method : config.methods) methods.push_back(std::string(to_string(method)));
    cfg["methods"] = methods;
    cfg["axes"] = config.n_axes;
    cfg["mode"] = std::string(to_string(config.mode));
    cfg["solver_seed"] = "0x" + hex64(config.solver_seed);
    switch (config.col_weights) {
        case ColWeightChoice::Uniform: cfg["col_weights"] = "uniform"; break;
        case ColWeightChoice::Marginal: cfg["col_weights"] = "marginal"; break;
        case ColWeightChoice::File:
            cfg["col_weights"] = "file";
            cfg["col_weights_file"] = config.col_weights_file.string();
            break;
    }
    cfg["pseudo_count"] = config.pseudo_count;
    cfg["plots"] = config.plots;
    manifest["config"] = cfg;

    json in = json::array();
    for (const auto& [role, path] : inputs.source_files)
        in.push_back(json{{"role", role},
                          {"path", path.string()},
                          {"checksum", "fnv1a64:" + hex64(fnv1a64(read_bytes(path)))}});
    if (inputs.source_files.empty()) {
        if (inputs.x) in.push_back(json{{"role", "x"}, {"rows", inputs.x->rows()},
                                        {"cols", inputs.x->cols()}});
        if (inputs.z) in.push_back(json{{"role", "z"}, {"rows", inputs.z->rows()},
                                        {"cols", inputs.z->categories()}});
        if (inputs.t) in.push_back(json{{"role", "t"}, {"rows", inputs.t->rows()},
                                        {"cols", inputs.t->cols()}});
    }
    manifest["inputs"] = in;

    json outputs = json::array();
    for (const auto& rel : summary.files) {
        std::string bytes = read_bytes(config.out_dir / rel);
        outputs.push_back(json{{"path", rel.generic_string()},
                               {"checksum", "fnv1a64:" + hex64(fnv1a64(bytes))}});
    }
    manifest["outputs"] = outputs;
    manifest["tool"] = json{{"name", "tlra"}, {"version", std::string(kVersion)}};

    write_bytes(config.out_dir / "manifest.json", manifest.dump(2) + "\n");
    summary.files.push_back("manifest.json");
    return summary;
}

RunSummary run_analysis_files(const AnalysisConfig& config,
                              const std::optional<std::filesystem::path>& x_path,
                              const std::optional<std::filesystem::path>& z_path,
                              const std::vector<Index>& z_blocks,
                              const std::optional<std::filesystem::path>& t_path) {
    AnalysisInputs inputs;
    if (x_path) {
        inputs.x = load_elementary(*x_path);
        inputs.source_files.emplace_back("x", *x_path);
    }
    if (z_path) {
        if (z_blocks.empty())
            throw ConfigError("an indicator file needs its --blocks specification");
        inputs.z = load_indicator(*z_path, z_blocks);
        inputs.source_files.emplace_back("z", *z_path);
    }
    if (t_path) {
        inputs.t = load_aggregate(*t_path);
        inputs.source_files.emplace_back("t", *t_path);
    }
    return run_analysis(config, inputs);
}

std::vector<std::filesystem::path> write_synthetic(const SyntheticOptions& options,
                                                   const std::filesystem::path& out_dir) {
    SyntheticData data = generate_synthetic(options);
    std::filesystem::create_directories(out_dir);
    write_labeled_csv(out_dir / "X.csv", LabeledMatrix{data.x.row_labels(), data.x.col_labels(),
                                                       data.x.values()});
    write_labeled_csv(out_dir / "Z.csv",
                      LabeledMatrix{data.x.row_labels(), data.z.category_labels(),
                                    data.z.values()});
    return {out_dir / "X.csv", out_dir / "Z.csv"};
}

}  // namespace tlra
