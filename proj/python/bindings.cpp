#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "firehash/enhash.hpp"
#include "firehash/error.hpp"
#include "firehash/fire.hpp"
#include "firehash/fire1.hpp"
#include "firehash/metrics.hpp"
#include "firehash/outlierness.hpp"
#include "firehash/streams.hpp"

namespace py = pybind11;
using namespace firehash;

namespace {

using Array2 = py::array_t<double, py::array::c_style | py::array::forcecast>;

DataMatrix to_matrix(const Array2& x) {
    if (x.ndim() != 2) throw InvalidArgument("expected a 2-D array");
    const auto rows = static_cast<std::size_t>(x.shape(0));
    const auto cols = static_cast<std::size_t>(x.shape(1));
    std::vector<double> values(x.data(), x.data() + rows * cols);
    return DataMatrix(rows, cols, std::move(values));
}

py::array_t<double> to_array(const std::vector<double>& v) {
    py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

py::array_t<double> to_array(const DataMatrix& m) {
    py::array_t<double> out({static_cast<py::ssize_t>(m.rows()), static_cast<py::ssize_t>(m.cols())});
    std::copy(m.values().begin(), m.values().end(), out.mutable_data());
    return out;
}

RankedScores ranked(const std::vector<double>& scores, const std::vector<bool>& labels) {
    return RankedScores(scores, labels);
}

py::dict eval_dict(const OutlierEvalReport& r) {
    py::dict d;
    d["n_samples"] = r.n_samples;
    d["n_outliers"] = r.n_outliers;
    d["top_n"] = r.top_n;
    d["precision_at_n"] = r.precision_at_n;
    d["adjusted_precision_at_n"] = r.adjusted_precision_at_n;
    d["average_precision"] = r.average_precision;
    d["adjusted_average_precision"] = r.adjusted_average_precision;
    d["roc_auc"] = r.roc_auc;
    return d;
}

const char* type_name(OutlierType t) {
    switch (t) {
        case OutlierType::Inlier: return "inlier";
        case OutlierType::Local: return "local";
        case OutlierType::Global: return "global";
    }
    return "inlier";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Hash-based outlier scoring and streaming classification";

    static py::exception<Error> base_error(m, "Error", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const InvalidArgument& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const Error& e) {
            py::set_error(base_error, e.what());
        }
    });

    m.def(
        "fire_scores",
        [](const Array2& x, std::size_t L, std::size_t M, std::uint64_t H, std::uint64_t seed,
           std::uint64_t stream_id) {
            const auto data = to_matrix(x);
            const auto model = fit_fire(data, L, M, H, RngSpec{seed, stream_id});
            return to_array(score_fire(data, model).scores);
        },
        py::arg("x"), py::arg("L") = kFireDefaultL, py::arg("M") = kFireDefaultM,
        py::arg("H") = kFireDefaultH, py::arg("seed") = 0, py::arg("stream_id") = 0,
        "Sketch-hash ensemble rareness scores of the training rows.");

    m.def(
        "fire1_scores",
        [](const Array2& x, std::size_t L, std::optional<std::size_t> M, double bin_width,
           std::uint64_t seed, std::uint64_t stream_id) {
            const auto data = to_matrix(x);
            const auto model = fit_fire1(data, L, M.value_or(data.cols()), bin_width, RngSpec{seed, stream_id});
            return to_array(score_fire1(data, model).scores);
        },
        py::arg("x"), py::arg("L") = kFire1DefaultL, py::arg("M") = py::none(),
        py::arg("bin_width") = kFire1DefaultBinWidth, py::arg("seed") = 0, py::arg("stream_id") = 0,
        "Projection-hash ensemble rareness scores of the training rows (M defaults to d).");

    m.def(
        "score_unseen",
        [](const Array2& train, const Array2& x_new, std::size_t L, std::optional<std::size_t> M,
           double bin_width, std::uint64_t seed, std::uint64_t stream_id) {
            const auto data = to_matrix(train);
            const auto model = fit_fire1(data, L, M.value_or(data.cols()), bin_width, RngSpec{seed, stream_id});
            return to_array(score_unseen(model, to_matrix(x_new)));
        },
        py::arg("train"), py::arg("x_new"), py::arg("L") = kFire1DefaultL, py::arg("M") = py::none(),
        py::arg("bin_width") = kFire1DefaultBinWidth, py::arg("seed") = 0, py::arg("stream_id") = 0,
        "Scores of new rows against a projection ensemble fitted on train, without updating it.");

    m.def(
        "iqr_flags",
        [](const std::vector<double>& scores) {
            const auto r = iqr_threshold(scores);
            py::dict d;
            d["q1"] = r.q1;
            d["q3"] = r.q3;
            d["threshold"] = r.threshold;
            d["flags"] = r.rare_flags;
            return d;
        },
        py::arg("scores"));

    m.def(
        "roc_auc",
        [](const std::vector<double>& s, const std::vector<bool>& y) { return roc_auc(ranked(s, y)); },
        py::arg("scores"), py::arg("labels"));
    m.def(
        "average_precision",
        [](const std::vector<double>& s, const std::vector<bool>& y) { return average_precision(ranked(s, y)); },
        py::arg("scores"), py::arg("labels"));
    m.def(
        "evaluate",
        [](const std::vector<double>& s, const std::vector<bool>& y, std::optional<std::size_t> n) {
            return eval_dict(evaluate_outlier_scores(ranked(s, y), n));
        },
        py::arg("scores"), py::arg("labels"), py::arg("n") = py::none());

    m.def(
        "oscore_histogram",
        [](const Array2& x, const std::vector<bool>& labels, std::size_t phi) {
            const auto h = oscore_histogram(to_matrix(x), LabelVector::outlier_flags(labels), OScoreConfig{phi});
            py::dict d;
            d["bin_edges"] = h.bin_edges;
            d["counts"] = h.counts;
            d["outlier_rows"] = h.outlier_rows;
            d["outlier_scores"] = h.outlier_scores;
            return d;
        },
        py::arg("x"), py::arg("labels"), py::arg("phi") = 10);

    m.def(
        "gen_planted",
        [](std::uint64_t seed, std::uint64_t stream_id, std::size_t global_count, std::size_t local_count) {
            auto spec = PlantedOutlierSpec::defaults(RngSpec{seed, stream_id});
            spec.global_count = global_count;
            spec.local_count = local_count;
            const auto p = gen_planted(spec);
            std::vector<std::string> types;
            for (auto t : p.types) types.emplace_back(type_name(t));
            return py::make_tuple(to_array(p.data), p.labels.outlier_mask(), types);
        },
        py::arg("seed") = 0, py::arg("stream_id") = 0, py::arg("global_count") = 5,
        py::arg("local_count") = 5, "Returns (x, outlier_flags, types).");

    m.def(
        "gen_drift_stream",
        [](const std::string& kind, std::size_t n, std::size_t d, std::vector<std::size_t> drift_at,
           std::size_t classes, std::optional<double> separation, std::optional<double> noise,
           std::optional<double> rate, std::uint64_t seed, std::uint64_t stream_id) {
            const auto k = parse_drift_kind(kind);
            if (!k) throw InvalidArgument("unknown stream kind: " + kind);
            DriftStreamSpec spec;
            spec.kind = *k;
            spec.n = n;
            spec.d = d;
            spec.classes = classes;
            spec.rng = RngSpec{seed, stream_id};
            spec.drift_points = std::move(drift_at);
            if (spec.drift_points.empty() && (spec.kind == DriftKind::Abrupt || spec.kind == DriftKind::Recurring)) {
                spec.drift_points = {n / 2};
            }
            if (separation) spec.separation = *separation;
            if (noise) spec.noise = *noise;
            if (rate) spec.rate = *rate;
            auto stream = make_drift_stream(spec);
            auto [data, labels] = collect(*stream);
            std::vector<std::string> names;
            for (auto v : labels.values) names.push_back(labels.registry.label(v));
            return py::make_tuple(to_array(data), names);
        },
        py::arg("kind"), py::arg("n") = 20000, py::arg("d") = 2, py::arg("drift_at") = std::vector<std::size_t>{},
        py::arg("classes") = 2, py::arg("separation") = py::none(), py::arg("noise") = py::none(),
        py::arg("rate") = py::none(), py::arg("seed") = 0, py::arg("stream_id") = 0,
        "Returns (x, labels) for an abrupt, incremental, virtual or recurring stream.");

    m.def(
        "prequential",
        [](const Array2& x, const std::vector<std::string>& labels, std::size_t L, double bin_width,
           double lambda, const std::string& variant, std::size_t window, std::uint64_t seed,
           std::uint64_t stream_id) {
            const auto v = parse_enhash_variant(variant);
            if (!v) throw InvalidArgument("unknown variant: " + variant);
            const auto data = to_matrix(x);
            if (labels.size() != data.rows()) throw InvalidArgument("label count differs from row count");
            EnhashParams params;
            params.L = L;
            params.bin_width = bin_width;
            params.lambda = lambda;
            params.variant = *v;
            params.rng = RngSpec{seed, stream_id};
            EnhashModel model(params, data.cols());
            std::vector<bool> correct;
            std::vector<std::string> predicted;
            for (std::size_t i = 0; i < data.rows(); ++i) {
                const auto p = model.step(data.row(i), labels[i]);
                const auto label = model.label_of(p);
                correct.push_back(label && *label == labels[i]);
                predicted.push_back(label.value_or(""));
            }
            const auto r = summarize_prequential(correct, labels, window);
            py::dict d;
            d["samples"] = r.samples;
            d["mistakes"] = r.mistakes;
            d["error"] = r.error;
            d["accuracy"] = r.accuracy;
            d["kappa_m"] = r.kappa_m;
            d["kappa_t"] = r.kappa_t;
            d["windowed_error"] = to_array(r.windowed_error);
            d["predictions"] = predicted;
            return d;
        },
        py::arg("x"), py::arg("labels"), py::arg("L") = 10, py::arg("bin_width") = 0.1,
        py::arg("lambda_") = 0.015, py::arg("variant") = "full", py::arg("window") = 0,
        py::arg("seed") = 0, py::arg("stream_id") = 0,
        "Test-then-train evaluation of the streaming hash-ensemble classifier.");
}
