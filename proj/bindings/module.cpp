#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "tlra/analysis.hpp"

namespace py = pybind11;
using namespace tlra;

namespace {

// module-lifetime references, intentionally never released
PyObject* g_error = nullptr;
PyObject* g_input_error = nullptr;
PyObject* g_numeric_error = nullptr;
PyObject* g_config_error = nullptr;

PyObject* new_exception(py::module_& m, const char* name, PyObject* base) {
    std::string qualified = std::string("tlra.") + name;
    PyObject* exc = PyErr_NewException(qualified.c_str(), base, nullptr);
    m.add_object(name, py::reinterpret_borrow<py::object>(exc));
    return exc;
}

void register_errors(py::module_& m) {
    g_error = new_exception(m, "Error", PyExc_RuntimeError);
    g_input_error = new_exception(m, "InputError", g_error);
    g_numeric_error = new_exception(m, "NumericError", g_error);
    g_config_error = new_exception(m, "ConfigError", g_error);

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            PyObject* target = g_error;
            switch (e.category()) {
                case ErrorCategory::Input: target = g_input_error; break;
                case ErrorCategory::Numeric: target = g_numeric_error; break;
                case ErrorCategory::Config: target = g_config_error; break;
            }
            PyErr_SetString(target, (e.tag() + ": " + e.what()).c_str());
        }
    });
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "taxicab log-ratio analysis of aggregated compositional tables";
    m.attr("__version__") = std::string(kVersion);

    register_errors(m);

    // ---- tables ----------------------------------------------------------

    py::class_<WeightVector>(m, "WeightVector")
        .def(py::init<Vector, std::vector<std::string>>(), py::arg("values"),
             py::arg("labels") = std::vector<std::string>{})
        .def_static("uniform", &WeightVector::uniform, py::arg("n"),
                    py::arg("labels") = std::vector<std::string>{})
        .def_property_readonly("values", &WeightVector::values)
        .def_property_readonly("labels", &WeightVector::labels)
        .def("__len__", &WeightVector::size)
        .def("__getitem__", [](const WeightVector& w, Index i) {
            if (i < 0 || i >= w.size()) throw py::index_error();
            return w[i];
        });

    py::class_<Marginals>(m, "Marginals")
        .def_readonly("row_sums", &Marginals::row_sums)
        .def_readonly("col_sums", &Marginals::col_sums)
        .def_readonly("total", &Marginals::total);

    py::class_<ElementaryTable>(m, "ElementaryTable")
        .def(py::init<Matrix, std::vector<std::string>, std::vector<std::string>>(),
             py::arg("values"), py::arg("row_labels") = std::vector<std::string>{},
             py::arg("col_labels") = std::vector<std::string>{})
        .def_property_readonly("values", &ElementaryTable::values)
        .def_property_readonly("row_labels", &ElementaryTable::row_labels)
        .def_property_readonly("col_labels", &ElementaryTable::col_labels)
        .def_property_readonly("rows", &ElementaryTable::rows)
        .def_property_readonly("cols", &ElementaryTable::cols)
        .def_property_readonly("all_positive", &ElementaryTable::all_positive)
        .def("marginals", &ElementaryTable::marginals)
        .def("proportions", &ElementaryTable::proportions);

    py::class_<IndicatorMatrix>(m, "IndicatorMatrix")
        .def(py::init<Matrix, std::vector<std::string>, std::vector<Index>>(),
             py::arg("values"), py::arg("category_labels"), py::arg("block_sizes"))
        .def_property_readonly("values", &IndicatorMatrix::values)
        .def_property_readonly("category_labels", &IndicatorMatrix::category_labels)
        .def_property_readonly("block_sizes", &IndicatorMatrix::block_sizes)
        .def_property_readonly("rows", &IndicatorMatrix::rows)
        .def_property_readonly("categories", &IndicatorMatrix::categories)
        .def_property_readonly("q", &IndicatorMatrix::q)
        .def("category_sizes", &IndicatorMatrix::category_sizes);

    py::class_<AggregateOrigin>(m, "AggregateOrigin")
        .def(py::init<>())
        .def_readwrite("elementary_rows", &AggregateOrigin::elementary_rows)
        .def_readwrite("category_sizes", &AggregateOrigin::category_sizes)
        .def_readwrite("uniform_row_weights", &AggregateOrigin::uniform_row_weights);

    py::class_<AggregateTable>(m, "AggregateTable")
        .def(py::init<Matrix, std::vector<std::string>, std::vector<std::string>>(),
             py::arg("values"), py::arg("row_labels") = std::vector<std::string>{},
             py::arg("col_labels") = std::vector<std::string>{})
        .def(py::init<Matrix, std::vector<std::string>, std::vector<std::string>, Index,
                      AggregateOrigin>(),
             py::arg("values"), py::arg("row_labels"), py::arg("col_labels"), py::arg("q"),
             py::arg("origin"))
        .def_property_readonly("values", &AggregateTable::values)
        .def_property_readonly("row_labels", &AggregateTable::row_labels)
        .def_property_readonly("col_labels", &AggregateTable::col_labels)
        .def_property_readonly("rows", &AggregateTable::rows)
        .def_property_readonly("cols", &AggregateTable::cols)
        .def_property_readonly("q", &AggregateTable::q)
        .def_property_readonly("origin", &AggregateTable::origin)
        .def("marginals", &AggregateTable::marginals)
        .def("proportions", &AggregateTable::proportions);

    py::class_<Covariate>(m, "Covariate")
        .def(py::init([](std::string name, std::vector<std::string> levels) {
                 return Covariate{std::move(name), std::move(levels)};
             }),
             py::arg("name"), py::arg("levels"))
        .def_readwrite("name", &Covariate::name)
        .def_readwrite("levels", &Covariate::levels);

    py::class_<WeightPair>(m, "WeightPair")
        .def_readonly("rows", &WeightPair::rows)
        .def_readonly("cols", &WeightPair::cols);

    m.def("aggregate", &aggregate, py::arg("x"), py::arg("z"), py::arg("row_weights"));
    m.def("indicator_from_categorical", &indicator_from_categorical, py::arg("codes"),
          py::arg("covariates"));
    m.def("load_elementary", &load_elementary, py::arg("path"));
    m.def("load_indicator", &load_indicator, py::arg("path"), py::arg("block_sizes"));
    m.def("load_aggregate", &load_aggregate, py::arg("path"));
    m.def("elementary_uniform_weights", &elementary_uniform_weights, py::arg("x"));
    m.def("aggregate_marginal_weights", &aggregate_marginal_weights, py::arg("z"), py::arg("t"));
    m.def("aggregate_uniform_weights", &aggregate_uniform_weights, py::arg("t"));
    m.def("column_marginal_weights",
          py::overload_cast<const ElementaryTable&>(&column_marginal_weights), py::arg("x"));
    m.def("column_marginal_weights",
          py::overload_cast<const AggregateTable&>(&column_marginal_weights), py::arg("t"));

    // ---- interactions ----------------------------------------------------

    py::enum_<InteractionKind>(m, "InteractionKind")
        .value("AggregateExact", InteractionKind::AggregateExact)
        .value("ElementaryExact", InteractionKind::ElementaryExact)
        .value("AggregateOfElementary", InteractionKind::AggregateOfElementary)
        .value("ApproxAggregate", InteractionKind::ApproxAggregate)
        .value("ApproxElementary", InteractionKind::ApproxElementary)
        .value("ApproxAggregateOfElementary", InteractionKind::ApproxAggregateOfElementary);

    py::class_<InteractionMatrix>(m, "InteractionMatrix")
        .def(py::init<Matrix, std::vector<std::string>, std::vector<std::string>, WeightVector,
                      WeightVector, InteractionKind, Index>(),
             py::arg("values"), py::arg("row_labels"), py::arg("col_labels"),
             py::arg("row_weights"), py::arg("col_weights"), py::arg("kind"), py::arg("q") = 1)
        .def_static("unchecked", &InteractionMatrix::unchecked, py::arg("values"),
                    py::arg("row_labels"), py::arg("col_labels"), py::arg("row_weights"),
                    py::arg("col_weights"), py::arg("kind"), py::arg("q") = 1)
        .def_property_readonly("values", &InteractionMatrix::values)
        .def_property_readonly("row_labels", &InteractionMatrix::row_labels)
        .def_property_readonly("col_labels", &InteractionMatrix::col_labels)
        .def_property_readonly("row_weights", &InteractionMatrix::row_weights)
        .def_property_readonly("col_weights", &InteractionMatrix::col_weights)
        .def_property_readonly("kind", &InteractionMatrix::kind)
        .def_property_readonly("q", &InteractionMatrix::q)
        .def_property_readonly("rows", &InteractionMatrix::rows)
        .def_property_readonly("cols", &InteractionMatrix::cols);

    m.def("log_interaction",
          py::overload_cast<const ElementaryTable&, const WeightVector&, const WeightVector&,
                            double>(&log_interaction),
          py::arg("x"), py::arg("row_weights"), py::arg("col_weights"),
          py::arg("pseudo_count") = 0.0);
    m.def("log_interaction",
          py::overload_cast<const AggregateTable&, const WeightVector&, const WeightVector&,
                            double>(&log_interaction),
          py::arg("t"), py::arg("row_weights"), py::arg("col_weights"),
          py::arg("pseudo_count") = 0.0);
    m.def("approx_log_interaction",
          py::overload_cast<const ElementaryTable&, const WeightVector&, const WeightVector&>(
              &approx_log_interaction),
          py::arg("x"), py::arg("row_weights"), py::arg("col_weights"));
    m.def("approx_log_interaction",
          py::overload_cast<const AggregateTable&, const WeightVector&, const WeightVector&>(
              &approx_log_interaction),
          py::arg("t"), py::arg("row_weights"), py::arg("col_weights"));
    m.def("aggregate_of_log_interactions", &aggregate_of_log_interactions, py::arg("x"),
          py::arg("z"), py::arg("row_weights"), py::arg("col_weights"),
          py::arg("pseudo_count") = 0.0);
    m.def("approx_aggregate_of_log_interactions",
          py::overload_cast<const ElementaryTable&, const IndicatorMatrix&, const WeightVector&>(
              &approx_aggregate_of_log_interactions),
          py::arg("x"), py::arg("z"), py::arg("col_weights"));
    m.def("approx_aggregate_of_log_interactions",
          py::overload_cast<const AggregateTable&, const WeightVector&>(
              &approx_aggregate_of_log_interactions),
          py::arg("t"), py::arg("col_weights"));

    py::class_<ApproximationGap>(m, "ApproximationGap")
        .def_readonly("max_abs", &ApproximationGap::max_abs)
        .def_readonly("weighted_rms", &ApproximationGap::weighted_rms);

    m.def("approximation_gap", &approximation_gap, py::arg("exact"), py::arg("approx"));
    m.def("save_interaction_csv", &save_interaction_csv, py::arg("path"), py::arg("m"));

    // ---- solver ----------------------------------------------------------

    py::enum_<SolverMode>(m, "SolverMode")
        .value("Auto", SolverMode::Auto)
        .value("Exhaustive", SolverMode::Exhaustive)
        .value("Ascent", SolverMode::Ascent);

    py::class_<SolverOptions>(m, "SolverOptions")
        .def(py::init<>())
        .def_readwrite("mode", &SolverOptions::mode)
        .def_readwrite("exhaustive_limit", &SolverOptions::exhaustive_limit)
        .def_readwrite("random_starts", &SolverOptions::random_starts)
        .def_readwrite("seed", &SolverOptions::seed);

    py::class_<TaxicabAxis>(m, "TaxicabAxis")
        .def_readonly("delta", &TaxicabAxis::delta)
        .def_readonly("u", &TaxicabAxis::u)
        .def_readonly("v", &TaxicabAxis::v)
        .def_readonly("a", &TaxicabAxis::a)
        .def_readonly("b", &TaxicabAxis::b);

    py::class_<AxisTrace>(m, "AxisTrace")
        .def_readonly("method", &AxisTrace::method)
        .def_readonly("starts_tried", &AxisTrace::starts_tried)
        .def_readonly("iterations", &AxisTrace::iterations);

    py::class_<L1Maximum>(m, "L1Maximum")
        .def_readonly("axis", &L1Maximum::axis)
        .def_readonly("trace", &L1Maximum::trace);

    py::class_<TaxicabDecomposition>(m, "TaxicabDecomposition")
        .def_property_readonly("rank", &TaxicabDecomposition::rank)
        .def_readonly("rows", &TaxicabDecomposition::rows)
        .def_readonly("cols", &TaxicabDecomposition::cols)
        .def_readonly("axes", &TaxicabDecomposition::axes)
        .def_readonly("traces", &TaxicabDecomposition::traces)
        .def_readonly("residuals", &TaxicabDecomposition::residuals)
        .def_readonly("residual_l1_norms", &TaxicabDecomposition::residual_l1_norms)
        .def_readonly("final_residual_l1", &TaxicabDecomposition::final_residual_l1)
        .def("reconstruct", &TaxicabDecomposition::reconstruct);

    m.def("maximize_l1", &maximize_l1, py::arg("x"), py::arg("options") = SolverOptions{});
    m.def("decompose", &decompose, py::arg("x"), py::arg("n_axes") = py::none(),
          py::arg("options") = SolverOptions{});
    m.def("orient_axis", &orient_axis, py::arg("axis"));

    // ---- weighted factorization ------------------------------------------

    py::class_<WeightedFactorization>(m, "WeightedFactorization")
        .def_property_readonly("source", &WeightedFactorization::source)
        .def_property_readonly("centered", &WeightedFactorization::centered)
        .def_property_readonly("decomposition", &WeightedFactorization::decomposition)
        .def_property_readonly("rank", &WeightedFactorization::rank)
        .def_property_readonly("row_scores", &WeightedFactorization::row_scores)
        .def_property_readonly("col_scores", &WeightedFactorization::col_scores)
        .def("reconstruct_source", &WeightedFactorization::reconstruct_source);

    m.def("factorize", &factorize, py::arg("source"), py::arg("n_axes") = 4,
          py::arg("options") = SolverOptions{});

    py::class_<MapPoint>(m, "MapPoint")
        .def_readonly("x", &MapPoint::x)
        .def_readonly("y", &MapPoint::y)
        .def_readonly("label", &MapPoint::label);

    py::class_<PrincipalMap>(m, "PrincipalMap")
        .def_readonly("axis_x", &PrincipalMap::axis_x)
        .def_readonly("axis_y", &PrincipalMap::axis_y)
        .def_readonly("row_points", &PrincipalMap::row_points)
        .def_readonly("col_points", &PrincipalMap::col_points);

    m.def("principal_map", &principal_map, py::arg("fact"), py::arg("axis_x"), py::arg("axis_y"));

    py::class_<LabeledMatrix>(m, "LabeledMatrix")
        .def(py::init([](Matrix values, std::vector<std::string> row_labels,
                         std::vector<std::string> col_labels) {
                 return LabeledMatrix{std::move(row_labels), std::move(col_labels),
                                      std::move(values)};
             }),
             py::arg("values"), py::arg("row_labels"), py::arg("col_labels"))
        .def_readwrite("row_labels", &LabeledMatrix::row_labels)
        .def_readwrite("col_labels", &LabeledMatrix::col_labels)
        .def_readwrite("values", &LabeledMatrix::values);

    m.def("row_scores_table", &row_scores_table, py::arg("fact"));
    m.def("col_scores_table", &col_scores_table, py::arg("fact"));
    m.def("save_row_scores_csv", &save_row_scores_csv, py::arg("path"), py::arg("fact"));
    m.def("save_col_scores_csv", &save_col_scores_csv, py::arg("path"), py::arg("fact"));
    m.def("read_labeled_csv", &read_labeled_csv, py::arg("path"));
    m.def("write_labeled_csv", &write_labeled_csv, py::arg("path"), py::arg("table"));

    // ---- quadrant sign ratios ---------------------------------------------

    py::class_<QsrQuadrants>(m, "QsrQuadrants")
        .def_readonly("pos_pos", &QsrQuadrants::pos_pos)
        .def_readonly("neg_neg", &QsrQuadrants::neg_neg)
        .def_readonly("neg_pos", &QsrQuadrants::neg_pos)
        .def_readonly("pos_neg", &QsrQuadrants::pos_neg);

    py::class_<QsrAxisRecord>(m, "QsrAxisRecord")
        .def_readonly("alpha", &QsrAxisRecord::alpha)
        .def_readonly("delta", &QsrAxisRecord::delta)
        .def_readonly("qsr", &QsrAxisRecord::qsr)
        .def_readonly("quadrants", &QsrAxisRecord::quadrants)
        .def_readonly("s_rows", &QsrAxisRecord::s_rows)
        .def_readonly("t_cols", &QsrAxisRecord::t_cols);

    py::class_<QsrReport>(m, "QsrReport").def_readonly("axes", &QsrReport::axes);

    py::class_<QsrTableEntry>(m, "QsrTableEntry")
        .def_readonly("name", &QsrTableEntry::name)
        .def_readonly("report", &QsrTableEntry::report)
        .def_readonly("preference_score", &QsrTableEntry::preference_score)
        .def_readonly("truncated", &QsrTableEntry::truncated);

    py::class_<QsrTable>(m, "QsrTable")
        .def_readonly("axes_shown", &QsrTable::axes_shown)
        .def_readonly("entries", &QsrTable::entries);

    m.def("qsr_axis", &qsr_axis, py::arg("dec"), py::arg("alpha"),
          py::arg("row_labels") = std::vector<std::string>{},
          py::arg("col_labels") = std::vector<std::string>{});
    m.def("qsr", &qsr, py::arg("fact"), py::arg("alpha"));
    m.def("qsr_report", &qsr_report, py::arg("fact"), py::arg("max_axes"));
    m.def(
        "qsr_table",
        [](const py::list& methods, int axes) {
            std::vector<std::pair<std::string, const WeightedFactorization*>> entries;
            for (const auto& item : methods) {
                auto pair = item.cast<py::tuple>();
                entries.emplace_back(pair[0].cast<std::string>(),
                                     pair[1].cast<const WeightedFactorization*>());
            }
            return qsr_table(entries, axes);
        },
        py::arg("methods"), py::arg("axes"),
        "methods: list of (name, WeightedFactorization) pairs");
    m.def("format_qsr_table", &format_qsr_table, py::arg("table"));
    m.def("qsr_table_csv", &qsr_table_csv, py::arg("table"));

    // ---- synthetic data and pipeline ---------------------------------------

    py::class_<SyntheticOptions>(m, "SyntheticOptions")
        .def(py::init<>())
        .def_readwrite("seed", &SyntheticOptions::seed)
        .def_readwrite("rows", &SyntheticOptions::rows)
        .def_readwrite("cols", &SyntheticOptions::cols)
        .def_readwrite("blocks", &SyntheticOptions::blocks)
        .def_readwrite("effect", &SyntheticOptions::effect)
        .def_readwrite("noise_sd", &SyntheticOptions::noise_sd);

    py::class_<SyntheticData>(m, "SyntheticData")
        .def_readonly("x", &SyntheticData::x)
        .def_readonly("z", &SyntheticData::z);

    m.def("generate_synthetic", &generate_synthetic, py::arg("options") = SyntheticOptions{});

    py::enum_<Method>(m, "Method")
        .value("TTlra", Method::TTlra)
        .value("ATlra", Method::ATlra)
        .value("AApprox", Method::AApprox);

    py::enum_<ColWeightChoice>(m, "ColWeightChoice")
        .value("Uniform", ColWeightChoice::Uniform)
        .value("Marginal", ColWeightChoice::Marginal)
        .value("File", ColWeightChoice::File);

    py::class_<AnalysisConfig>(m, "AnalysisConfig")
        .def(py::init<>())
        .def_readwrite("methods", &AnalysisConfig::methods)
        .def_readwrite("n_axes", &AnalysisConfig::n_axes)
        .def_readwrite("mode", &AnalysisConfig::mode)
        .def_readwrite("solver_seed", &AnalysisConfig::solver_seed)
        .def_readwrite("col_weights", &AnalysisConfig::col_weights)
        .def_readwrite("col_weights_file", &AnalysisConfig::col_weights_file)
        .def_readwrite("pseudo_count", &AnalysisConfig::pseudo_count)
        .def_readwrite("plots", &AnalysisConfig::plots)
        .def_readwrite("out_dir", &AnalysisConfig::out_dir);

    py::class_<AnalysisInputs>(m, "AnalysisInputs")
        .def(py::init<>())
        .def_readwrite("x", &AnalysisInputs::x)
        .def_readwrite("z", &AnalysisInputs::z)
        .def_readwrite("t", &AnalysisInputs::t)
        .def_readwrite("source_files", &AnalysisInputs::source_files);

    py::class_<MethodResult>(m, "MethodResult")
        .def_readonly("method", &MethodResult::method)
        .def_readonly("axes_computed", &MethodResult::axes_computed)
        .def_readonly("files", &MethodResult::files);

    py::class_<RunSummary>(m, "RunSummary")
        .def_readonly("methods", &RunSummary::methods)
        .def_readonly("comparison_text", &RunSummary::comparison_text)
        .def_readonly("files", &RunSummary::files);

    m.def("run_analysis", &run_analysis, py::arg("config"), py::arg("inputs"),
          py::call_guard<py::gil_scoped_release>());
    m.def("write_synthetic", &write_synthetic, py::arg("options"), py::arg("out_dir"));
    m.def("fnv1a64",
          [](const py::bytes& data) { return fnv1a64(static_cast<std::string>(data)); },
          py::arg("data"));
}
