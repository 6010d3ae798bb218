#include "firehash/fire1.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "firehash/detail/density.hpp"
#include "firehash/error.hpp"

namespace firehash {

namespace {

void check_dims(const DataMatrix& data, const ProjectionEnsemble& ensemble) {
    if (data.cols() != ensemble.dims) {
        throw DataError("data has " + std::to_string(data.cols()) + " columns, model was fitted on " +
                        std::to_string(ensemble.dims));
    }
}

}  // namespace

std::vector<std::size_t> subspace_size_grid(std::size_t d) {
    const double dd = static_cast<double>(d);
    std::vector<std::size_t> grid;
    for (double v : {std::ceil(std::log(dd)), std::ceil(std::sqrt(dd)), std::ceil(dd / 2.0), dd,
                     std::ceil(1.5 * dd)}) {
        const auto m = static_cast<std::size_t>(std::max(1.0, v));
        if (std::find(grid.begin(), grid.end(), m) == grid.end()) {
            grid.push_back(m);
        }
    }
    return grid;
}

std::vector<double> bin_width_grid() {
    return {10, 9, 8, 7, 6, 5, 4, 3, 2, 1, 0.1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
}

ProjectionEnsemble fit_fire1(const DataMatrix& data, std::size_t L, std::size_t M, double bin_width,
                             const RngSpec& rng) {
    if (data.empty()) {
        throw DataError("cannot fit on an empty matrix");
    }
    if (L == 0 || M == 0) {
        throw InvalidArgument("L and M must be at least 1");
    }
    if (!(bin_width > 0.0) || !std::isfinite(bin_width)) {
        throw InvalidArgument("bin width must be a positive finite number");
    }
    ProjectionEnsemble ensemble;
    ensemble.L = L;
    ensemble.M = M;
    ensemble.bin_width = bin_width;
    ensemble.rng = rng;
    ensemble.trained_n = data.rows();
    ensemble.dims = data.cols();
    ensemble.estimators.reserve(L);
    ensemble.bucket_tables.reserve(L);
    for (std::size_t l = 0; l < L; ++l) {
        Rng stream(rng, l);
        ensemble.estimators.push_back(
            draw_subspace_projection(stream, data.feature_mins(), data.feature_maxs(), M, bin_width));
        ensemble.bucket_tables.push_back(
            detail::count_buckets(projection_indices(ensemble, l, data)));
    }
    return ensemble;
}

std::vector<std::int64_t> projection_indices(const ProjectionEnsemble& ensemble, std::size_t l,
                                             const DataMatrix& data) {
    const auto& est = ensemble.estimators.at(l);
    std::vector<std::int64_t> ids(data.rows());
    for (std::size_t i = 0; i < data.rows(); ++i) {
        ids[i] = projection_index(est, data.row(i));
    }
    return ids;
}

Fire1ScoreReport score_fire1(const DataMatrix& data, const ProjectionEnsemble& ensemble) {
    check_dims(data, ensemble);
    const std::size_t n = data.rows();
    const std::size_t L = ensemble.estimators.size();
    const double log_n = std::log(static_cast<double>(n));

    Fire1ScoreReport report;
    report.L = L;
    report.neighborhoods.resize(n * L);
    std::vector<detail::CompensatedSum> log_sums(n);
    for (std::size_t l = 0; l < L; ++l) {
        const auto ids = projection_indices(ensemble, l, data);
        const auto table = detail::count_buckets(ids);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t count = table.find(ids[i])->second;
            report.neighborhoods[i * L + l] = static_cast<double>(count) / static_cast<double>(n);
            log_sums[i].add(std::log(static_cast<double>(count)) - log_n);
        }
    }
    report.scores.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        report.scores[i] = detail::finish_score(log_sums[i]);
    }
    return report;
}

std::vector<double> score_unseen(const ProjectionEnsemble& ensemble, const DataMatrix& new_data) {
    check_dims(new_data, ensemble);
    if (ensemble.bucket_tables.size() != ensemble.estimators.size()) {
        throw FormatError("ensemble has no bucket table for some estimator");
    }
    const std::size_t n = new_data.rows();
    const double log_denominator = std::log(1.0 + static_cast<double>(ensemble.trained_n));
    std::vector<detail::CompensatedSum> log_sums(n);
    for (std::size_t l = 0; l < ensemble.estimators.size(); ++l) {
        const auto& table = ensemble.bucket_tables[l];
        const auto ids = projection_indices(ensemble, l, new_data);
        for (std::size_t i = 0; i < n; ++i) {
            const auto it = table.find(ids[i]);
            const std::size_t k = it == table.end() ? 0 : it->second;
            log_sums[i].add(std::log(1.0 + static_cast<double>(k)) - log_denominator);
        }
    }
    std::vector<double> scores(n);
    for (std::size_t i = 0; i < n; ++i) {
        scores[i] = detail::finish_score(log_sums[i]);
    }
    return scores;
}

}  // namespace firehash
