#include "firehash/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <json.hpp>
#include <optional>

#include "firehash/csv.hpp"
#include "firehash/enhash.hpp"
#include "firehash/error.hpp"
#include "firehash/fire.hpp"
#include "firehash/fire1.hpp"
#include "firehash/metrics.hpp"
#include "firehash/model_io.hpp"
#include "firehash/outlierness.hpp"
#include "firehash/streams.hpp"

namespace firehash::cli {

using nlohmann::json;

namespace {

/// Flag values; optionals distinguish "not given" from a default.
struct RunConfig {
    std::string algo;
    std::string input;
    std::string out;
    std::optional<std::string> label_col;
    std::optional<std::uint64_t> seed;
    std::uint64_t stream_id = 0;
    std::optional<std::size_t> L;
    std::optional<std::size_t> M;
    std::uint64_t H = kFireDefaultH;
    double bin_width = kFire1DefaultBinWidth;
    bool iqr_flag = false;
    std::optional<std::string> save_model;

    std::string model;

    std::size_t phi = 10;

    std::string scores;
    std::string labels;
    std::string labels_col = "label";
    std::optional<std::size_t> top_n;

    std::string tables;
    bool lower_better = false;

    double lambda = 0.015;
    std::size_t window = 0;
    std::string variant = "full";
    bool timing = false;

    std::string kind;
    std::optional<std::size_t> n;
    std::size_t d = 2;
    std::vector<std::size_t> drift_at;
    std::size_t classes = 2;
    std::optional<double> separation;
    std::optional<double> noise;
    std::optional<double> rate;
    std::size_t global_count = 5;
    std::size_t local_count = 5;

    std::vector<std::size_t> sizes;
    std::size_t trials = 3;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::uint64_t require_seed(const RunConfig& cfg) {
    if (!cfg.seed) {
        throw UsageError("--seed is required; runs are never seeded from the clock");
    }
    return *cfg.seed;
}

RngSpec rng_of(const RunConfig& cfg) {
    return {require_seed(cfg), cfg.stream_id};
}

json nullable(double v) {
    return std::isfinite(v) ? json(v) : json(nullptr);
}

json nullable(const std::optional<double>& v) {
    return v ? nullable(*v) : json(nullptr);
}

std::string dump_report(json report) {
    report["schema_version"] = kReportSchemaVersion;
    return report.dump(2) + "\n";
}

std::size_t positive(std::size_t v, const char* flag) {
    if (v == 0) throw InvalidArgument(std::string(flag) + " must be at least 1");
    return v;
}

// ---------------------------------------------------------------------------

void cmd_score(const RunConfig& cfg) {
    const RngSpec rng = rng_of(cfg);
    if (cfg.algo != "fire" && cfg.algo != "fire1") {
        throw UsageError("--algo must be fire or fire1");
    }
    const auto loaded = load_csv(cfg.input, cfg.label_col, LabelKind::ClassLabel);
    const auto& data = loaded.data;

    std::vector<double> scores;
    if (cfg.algo == "fire") {
        const std::size_t L = positive(cfg.L.value_or(kFireDefaultL), "--L");
        const std::size_t M = positive(cfg.M.value_or(kFireDefaultM), "--M");
        const auto model = fit_fire(data, L, M, cfg.H, rng);
        scores = score_fire(data, model).scores;
        if (cfg.save_model) save_model(*cfg.save_model, model);
    } else {
        const std::size_t L = positive(cfg.L.value_or(kFire1DefaultL), "--L");
        const std::size_t M = positive(cfg.M.value_or(data.cols()), "--M");
        const auto model = fit_fire1(data, L, M, cfg.bin_width, rng);
        scores = score_fire1(data, model).scores;
        if (cfg.save_model) save_model(*cfg.save_model, model);
    }

    if (cfg.iqr_flag) {
        const auto iqr = iqr_threshold(scores);
        const std::vector<bool>& flags = iqr.rare_flags;
        std::unique_ptr<bool[]> buf(new bool[flags.size()]);
        for (std::size_t i = 0; i < flags.size(); ++i) buf[i] = flags[i];
        write_scores(cfg.out, scores, std::span<const bool>(buf.get(), flags.size()));
    } else {
        write_scores(cfg.out, scores);
    }
}

void cmd_score_unseen(const RunConfig& cfg) {
    const auto model = load_projection_model(cfg.model);
    const auto loaded = load_csv(cfg.input, cfg.label_col, LabelKind::ClassLabel);
    write_scores(cfg.out, score_unseen(model, loaded.data));
}

void cmd_oscore(const RunConfig& cfg) {
    if (!cfg.label_col) throw UsageError("--label-col is required");
    const auto loaded = load_csv(cfg.input, cfg.label_col, LabelKind::OutlierBinary);
    const auto hist = oscore_histogram(loaded.data, *loaded.labels, OScoreConfig{positive(cfg.phi, "--phi")});
    json outliers = json::array();
    for (std::size_t i = 0; i < hist.outlier_rows.size(); ++i) {
        outliers.push_back({{"row_index", hist.outlier_rows[i]}, {"o_score", hist.outlier_scores[i]}});
    }
    write_text(cfg.out, dump_report({{"phi", cfg.phi},
                                     {"bin_edges", hist.bin_edges},
                                     {"counts", hist.counts},
                                     {"outliers", outliers}}));
}

std::vector<double> read_score_column(const std::string& path) {
    const auto table = read_csv_table(path);
    auto col = table.column("score");
    if (!col) {
        if (table.header.size() != 1) throw DataError("'" + path + "' has no 'score' column");
        col = 0;
    }
    std::vector<double> scores;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        auto v = parse_real(table.rows[i][*col]);
        if (!v) throw DataError("'" + path + "' line " + std::to_string(i + 2) + ": bad score");
        scores.push_back(*v);
    }
    return scores;
}

std::vector<bool> read_outlier_column(const std::string& path, const std::string& name) {
    const auto table = read_csv_table(path);
    auto col = table.column(name);
    if (!col) {
        if (table.header.size() != 1) throw DataError("'" + path + "' has no '" + name + "' column");
        col = 0;
    }
    std::vector<bool> flags;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        auto v = parse_outlier_flag(table.rows[i][*col]);
        if (!v) throw DataError("'" + path + "' line " + std::to_string(i + 2) + ": bad outlier flag");
        flags.push_back(*v);
    }
    return flags;
}

void cmd_eval(const RunConfig& cfg) {
    auto scores = read_score_column(cfg.scores);
    auto truth = read_outlier_column(cfg.labels, cfg.labels_col);
    if (scores.size() != truth.size()) {
        throw DataError("score count " + std::to_string(scores.size()) + " differs from label count " +
                        std::to_string(truth.size()));
    }
    const RankedScores ranked(std::move(scores), std::move(truth));
    const auto r = evaluate_outlier_scores(ranked, cfg.top_n);
    write_text(cfg.out, dump_report({{"n_samples", r.n_samples},
                                     {"n_outliers", r.n_outliers},
                                     {"top_n", r.top_n},
                                     {"precision_at_n", nullable(r.precision_at_n)},
                                     {"adjusted_precision_at_n", nullable(r.adjusted_precision_at_n)},
                                     {"average_precision", nullable(r.average_precision)},
                                     {"adjusted_average_precision", nullable(r.adjusted_average_precision)},
                                     {"roc_auc", nullable(r.roc_auc)}}));
}

MethodMeasureTable read_measure_table(const std::filesystem::path& path, bool higher_is_better) {
    const auto csv = read_csv_table(path.string());
    if (csv.header.size() < 2) throw DataError("'" + path.string() + "' needs a method column and datasets");
    MethodMeasureTable table;
    table.higher_is_better = higher_is_better;
    table.datasets.assign(csv.header.begin() + 1, csv.header.end());
    for (std::size_t r = 0; r < csv.rows.size(); ++r) {
        const auto& row = csv.rows[r];
        table.methods.push_back(row[0]);
        std::vector<std::optional<double>> values;
        for (std::size_t j = 1; j < row.size(); ++j) {
            std::string cell = row[j];
            cell.erase(std::remove_if(cell.begin(), cell.end(), ::isspace), cell.end());
            if (cell.empty() || cell == "NA" || cell == "na" || cell == "nan" || cell == "NaN") {
                values.emplace_back(std::nullopt);
                continue;
            }
            auto v = parse_real(cell);
            if (!v) {
                throw DataError("'" + path.string() + "' line " + std::to_string(r + 2) + ": bad value '" +
                                row[j] + "'");
            }
            values.emplace_back(*v);
        }
        table.values.push_back(std::move(values));
    }
    return table;
}

void cmd_rank(const RunConfig& cfg) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(cfg.tables)) throw IoError("'" + cfg.tables + "' is not a directory");
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(cfg.tables)) {
        if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw DataError("no .csv tables in '" + cfg.tables + "'");

    std::vector<std::string> methods;
    std::vector<std::vector<std::optional<double>>> columns;
    std::vector<std::string> names;
    for (const auto& f : files) {
        const auto table = read_measure_table(f, !cfg.lower_better);
        const auto ranks = friedman_ranks(table);
        std::vector<std::optional<double>> column(methods.size());
        for (std::size_t m = 0; m < table.methods.size(); ++m) {
            auto it = std::find(methods.begin(), methods.end(), table.methods[m]);
            std::size_t idx = static_cast<std::size_t>(it - methods.begin());
            if (it == methods.end()) {
                methods.push_back(table.methods[m]);
                column.emplace_back();
                for (auto& c : columns) c.emplace_back();
            }
            column[idx] = ranks[m];
        }
        columns.push_back(std::move(column));
        names.push_back(f.stem().string());
    }
    std::string out = "method";
    for (const auto& n : names) out += "," + n;
    out += "\n";
    for (std::size_t m = 0; m < methods.size(); ++m) {
        out += methods[m];
        for (const auto& c : columns) {
            out += ",";
            if (c[m]) out += format_real(*c[m]);
        }
        out += "\n";
    }
    write_text(cfg.out, out);
}

EnhashParams enhash_params(const RunConfig& cfg) {
    EnhashParams p;
    p.L = positive(cfg.L.value_or(10), "--L");
    p.bin_width = cfg.bin_width;
    p.lambda = cfg.lambda;
    p.rng = rng_of(cfg);
    auto variant = parse_enhash_variant(cfg.variant);
    if (!variant) throw UsageError("--variant must be full, lambda0 or noweights");
    p.variant = *variant;
    p.validate();
    return p;
}

void cmd_stream(const RunConfig& cfg) {
    if (!cfg.label_col) throw UsageError("--label-col is required");
    const EnhashParams params = enhash_params(cfg);
    const auto loaded = load_csv(cfg.input, cfg.label_col, LabelKind::ClassLabel);
    MatrixStream stream(loaded.data, *loaded.labels);
    const auto r = prequential_evaluate(params, stream, cfg.window);
    json report = {{"params",
                    {{"L", params.L},
                     {"bin_width", params.bin_width},
                     {"lambda", params.lambda},
                     {"variant", to_string(params.variant)},
                     {"seed", params.rng.master_seed}}},
                   {"samples", r.samples},
                   {"mistakes", r.mistakes},
                   {"error", r.error},
                   {"error_percent", 100.0 * r.error},
                   {"accuracy", r.accuracy},
                   {"kappa_m", nullable(r.kappa_m)},
                   {"kappa_t", nullable(r.kappa_t)},
                   {"majority_accuracy", r.majority_accuracy},
                   {"persistence_accuracy", r.persistence_accuracy},
                   {"classes", loaded.labels->registry.labels()}};
    if (cfg.window > 0) {
        report["window"] = cfg.window;
        report["windowed_error"] = r.windowed_error;
    }
    if (cfg.timing) {
        report["wall_seconds"] = r.wall_seconds;
    }
    write_text(cfg.out, dump_report(std::move(report)));
}

void cmd_gen(const RunConfig& cfg) {
    const RngSpec rng = rng_of(cfg);
    if (cfg.kind == "planted") {
        auto spec = PlantedOutlierSpec::defaults(rng);
        if (cfg.n) {
            const std::size_t total = positive(*cfg.n, "--n");
            if (total < 2) throw InvalidArgument("--n must be at least 2 for two clusters");
            spec.clusters[1].size = std::max<std::size_t>(1, total / 5);
            spec.clusters[0].size = total - spec.clusters[1].size;
        }
        spec.global_count = cfg.global_count;
        spec.local_count = cfg.local_count;
        const auto planted = gen_planted(spec);
        std::vector<std::string> names;
        for (std::size_t j = 0; j < planted.data.cols(); ++j) names.push_back("x" + std::to_string(j));
        std::vector<std::string> labels;
        for (auto v : planted.labels.values) labels.push_back(std::to_string(v));
        write_text(cfg.out, format_matrix(planted.data, names, &labels));
        return;
    }
    const auto kind = parse_drift_kind(cfg.kind);
    if (!kind) throw UsageError("--kind must be planted, abrupt, incremental, virtual or recurring");
    DriftStreamSpec spec;
    spec.kind = *kind;
    spec.n = positive(cfg.n.value_or(20000), "--n");
    spec.d = positive(cfg.d, "--d");
    spec.rng = rng;
    spec.classes = cfg.classes;
    spec.drift_points = cfg.drift_at;
    if (spec.drift_points.empty() && (spec.kind == DriftKind::Abrupt || spec.kind == DriftKind::Recurring)) {
        spec.drift_points = {spec.n / 2};
    }
    if (cfg.separation) spec.separation = *cfg.separation;
    if (cfg.noise) spec.noise = *cfg.noise;
    if (cfg.rate) spec.rate = *cfg.rate;
    auto stream = make_drift_stream(spec);
    auto [data, labels] = collect(*stream);
    std::vector<std::string> names;
    for (std::size_t j = 0; j < data.cols(); ++j) names.push_back("x" + std::to_string(j));
    std::vector<std::string> label_text;
    for (auto v : labels.values) label_text.push_back(labels.registry.label(v));
    write_text(cfg.out, format_matrix(data, names, &label_text));
}

DataMatrix bench_matrix(std::size_t n, std::size_t d, const RngSpec& rng, std::size_t trial) {
    Rng gen(rng, 1000003 + trial);
    std::vector<double> values(n * d);
    for (auto& v : values) v = gen.normal();
    return DataMatrix(n, d, std::move(values));
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t mid = v.size() / 2;
    return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

void cmd_bench(const RunConfig& cfg) {
    const RngSpec rng = rng_of(cfg);
    if (cfg.sizes.size() < 2) throw InvalidArgument("--sizes needs at least two entries");
    for (std::size_t i = 0; i < cfg.sizes.size(); ++i) {
        if (cfg.sizes[i] < 1) throw InvalidArgument("bench sizes must be >= 1");
        if (i > 0 && cfg.sizes[i] <= cfg.sizes[i - 1]) {
            throw InvalidArgument("bench sizes must be strictly ascending");
        }
    }
    if (cfg.algo != "fire" && cfg.algo != "fire1" && cfg.algo != "enhash") {
        throw UsageError("--algo must be fire, fire1 or enhash");
    }
    const std::size_t trials = positive(cfg.trials, "--trials");
    const std::size_t d = positive(cfg.d, "--d");

    json rows = json::array();
    double previous = 0.0;
    for (std::size_t n : cfg.sizes) {
        std::vector<double> times;
        for (std::size_t trial = 0; trial < trials; ++trial) {
            double seconds = 0.0;
            if (cfg.algo == "enhash") {
                DriftStreamSpec spec;
                spec.n = n;
                spec.d = d;
                spec.rng = {rng.master_seed, rng.stream_id + trial};
                auto stream = gen_abrupt(spec);
                auto [data, labels] = collect(*stream);
                EnhashParams params;
                params.L = cfg.L.value_or(10);
                params.bin_width = cfg.bin_width;
                params.lambda = cfg.lambda;
                params.rng = rng;
                MatrixStream replay(data, labels);
                if (n >= 2) {
                    seconds = prequential_evaluate(params, replay, 0).wall_seconds;
                } else {
                    EnhashModel model(params, d);
                    const auto start = std::chrono::steady_clock::now();
                    model.step(data.row(0), labels.registry.label(labels.values[0]));
                    seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
                }
            } else {
                const auto data = bench_matrix(n, d, rng, trial);
                const auto start = std::chrono::steady_clock::now();
                if (cfg.algo == "fire") {
                    const auto model = fit_fire(data, cfg.L.value_or(kFireDefaultL),
                                                cfg.M.value_or(kFireDefaultM), cfg.H, rng);
                    (void)score_fire(data, model);
                } else {
                    const auto model = fit_fire1(data, cfg.L.value_or(kFire1DefaultL), cfg.M.value_or(d),
                                                 cfg.bin_width, rng);
                    (void)score_fire1(data, model);
                }
                seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            }
            times.push_back(seconds);
        }
        const double t = median(times);
        json row = {{"n", n}, {"seconds", t}};
        row["ratio"] = previous > 0.0 ? json(t / previous) : json(nullptr);
        rows.push_back(row);
        previous = t;
    }
    write_text(cfg.out, dump_report({{"algo", cfg.algo},
                                     {"trials", trials},
                                     {"d", d},
                                     {"rows", rows}}));
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"Hash-based density scoring, outlier evaluation and streaming classification", "firehash"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_seed = [&](CLI::App* sub) {
        sub->add_option("--seed", cfg.seed, "Master seed (required)");
        sub->add_option("--stream-id", cfg.stream_id, "Seed substream id");
    };

    auto* score = app.add_subcommand("score", "Score every row of a CSV with FiRE or FiRE.1");
    score->add_option("--algo", cfg.algo, "fire | fire1")->required();
    score->add_option("--input", cfg.input, "Input CSV with header")->required();
    score->add_option("--label-col", cfg.label_col, "Column to exclude from the features");
    score->add_option("--L", cfg.L, "Number of estimators (default 100)");
    score->add_option("--M", cfg.M, "Features sampled per estimator (fire: 50, fire1: d)");
    score->add_option("--H", cfg.H, "Prime hash modulus for fire")->capture_default_str();
    score->add_option("--bin-width", cfg.bin_width, "Projection bin width for fire1")->capture_default_str();
    score->add_option("--out", cfg.out, "Output scores CSV ('-' for stdout)")->required();
    score->add_flag("--iqr-flag", cfg.iqr_flag, "Add a rare column: score >= q3 + 1.5 IQR");
    score->add_option("--save-model", cfg.save_model, "Write the fitted model as JSON");
    add_seed(score);

    auto* unseen = app.add_subcommand("score-unseen", "Score new rows against a saved FiRE.1 model");
    unseen->add_option("--model", cfg.model, "Model JSON from score --save-model")->required();
    unseen->add_option("--input", cfg.input, "CSV of new rows")->required();
    unseen->add_option("--label-col", cfg.label_col, "Column to exclude from the features");
    unseen->add_option("--out", cfg.out, "Output scores CSV ('-' for stdout)")->required();

    auto* oscore = app.add_subcommand("oscore", "o-score of each labelled outlier and its 20-bin histogram");
    oscore->add_option("--input", cfg.input, "Input CSV")->required();
    oscore->add_option("--label-col", cfg.label_col, "Outlier flag column (0/1)")->required();
    oscore->add_option("--phi", cfg.phi, "Distances averaged at each end")->capture_default_str();
    oscore->add_option("--out", cfg.out, "Output JSON ('-' for stdout)")->required();

    auto* eval = app.add_subcommand("eval", "P@n, adjusted P@n, AP, adjusted AP and ROC-AUC of a score file");
    eval->add_option("--scores", cfg.scores, "Scores CSV (column 'score')")->required();
    eval->add_option("--labels", cfg.labels, "Labels CSV with a 0/1 outlier column")->required();
    eval->add_option("--label-col", cfg.labels_col, "Outlier column in the labels CSV")->capture_default_str();
    eval->add_option("--n", cfg.top_n, "Cut-off for P@n (default: number of outliers)");
    eval->add_option("--out", cfg.out, "Output JSON ('-' for stdout)")->required();

    auto* rank = app.add_subcommand("rank", "Friedman mean ranks from a directory of method x dataset tables");
    rank->add_option("--tables", cfg.tables, "Directory of CSV tables (method,<dataset>...)")->required();
    rank->add_flag("--lower-better", cfg.lower_better, "Smaller measure values are better");
    rank->add_option("--out", cfg.out, "Output CSV ('-' for stdout)")->required();

    auto* stream = app.add_subcommand("stream", "Prequential evaluation of Enhash on a labelled CSV stream");
    stream->add_option("--input", cfg.input, "Stream CSV in arrival order")->required();
    stream->add_option("--label-col", cfg.label_col, "Class label column")->required();
    stream->add_option("--L", cfg.L, "Number of estimators (default 10)");
    stream->add_option("--bin-width", cfg.bin_width, "Quantization width")->capture_default_str();
    stream->add_option("--lambda", cfg.lambda, "Decay rate")->capture_default_str();
    stream->add_option("--window", cfg.window, "Add a trailing-window error series of this width");
    stream->add_option("--variant", cfg.variant, "full | lambda0 | noweights")->capture_default_str();
    stream->add_flag("--timing", cfg.timing, "Include wall-clock seconds in the report");
    stream->add_option("--out", cfg.out, "Output JSON ('-' for stdout)")->required();
    add_seed(stream);

    auto* gen = app.add_subcommand("gen", "Generate a planted-outlier dataset or a drift stream as CSV");
    gen->add_option("--kind", cfg.kind, "planted | abrupt | incremental | virtual | recurring")->required();
    gen->add_option("--n", cfg.n, "Samples (planted: inliers, default 250; streams: default 20000)");
    gen->add_option("--d", cfg.d, "Stream dimension")->capture_default_str();
    gen->add_option("--drift-at", cfg.drift_at, "Drift points (comma separated)")->delimiter(',');
    gen->add_option("--classes", cfg.classes, "Number of classes")->capture_default_str();
    gen->add_option("--separation", cfg.separation, "Distance between adjacent class means");
    gen->add_option("--noise", cfg.noise, "Gaussian noise per coordinate");
    gen->add_option("--rate", cfg.rate, "Rotation (incremental) or translation (virtual) per sample");
    gen->add_option("--global", cfg.global_count, "Planted global outliers")->capture_default_str();
    gen->add_option("--local", cfg.local_count, "Planted local outliers")->capture_default_str();
    gen->add_option("--out", cfg.out, "Output CSV ('-' for stdout)")->required();
    add_seed(gen);

    auto* bench = app.add_subcommand("bench", "Time a scorer on seeded data of increasing size");
    bench->add_option("--algo", cfg.algo, "fire | fire1 | enhash")->required();
    bench->add_option("--sizes", cfg.sizes, "Strictly ascending sample counts")->delimiter(',')->required();
    bench->add_option("--L", cfg.L, "Number of estimators");
    bench->add_option("--M", cfg.M, "Features per estimator");
    bench->add_option("--H", cfg.H, "Prime hash modulus")->capture_default_str();
    bench->add_option("--bin-width", cfg.bin_width, "Bin width")->capture_default_str();
    bench->add_option("--lambda", cfg.lambda, "Enhash decay rate")->capture_default_str();
    bench->add_option("--d", cfg.d, "Feature count of generated data")->capture_default_str();
    bench->add_option("--trials", cfg.trials, "Trials per size (median reported)")->capture_default_str();
    bench->add_option("--out", cfg.out, "Output JSON (default stdout)");
    add_seed(bench);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }
    if (cfg.out.empty()) cfg.out = "-";

    auto* sub = app.get_subcommands().front();
    try {
        const std::string name = sub->get_name();
        if (name == "score") cmd_score(cfg);
        else if (name == "score-unseen") cmd_score_unseen(cfg);
        else if (name == "oscore") cmd_oscore(cfg);
        else if (name == "eval") cmd_eval(cfg);
        else if (name == "rank") cmd_rank(cfg);
        else if (name == "stream") cmd_stream(cfg);
        else if (name == "gen") cmd_gen(cfg);
        else if (name == "bench") cmd_bench(cfg);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << sub->help();
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitOk;
}

int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args);
}

}  // namespace firehash::cli
