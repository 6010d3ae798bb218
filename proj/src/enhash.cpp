#include "firehash/enhash.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "firehash/error.hpp"

namespace firehash {

void EnhashParams::validate() const {
    if (L == 0) throw InvalidArgument("Enhash needs at least one estimator");
    if (!(bin_width > 0.0) || !std::isfinite(bin_width)) {
        throw InvalidArgument("bin width must be a positive finite number");
    }
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw InvalidArgument("decay rate lambda must be finite and >= 0");
    }
}

double decay_multiplier(double lambda, std::uint64_t dt) {
    if (lambda == 0.0 || dt == 0) {
        return 1.0;
    }
    return std::exp2(-lambda * static_cast<double>(dt));
}

const ClassCell* Bucket::find(std::size_t class_index) const {
    for (const auto& c : cells) {
        if (c.class_index == class_index) return &c;
    }
    return nullptr;
}

ClassCell* Bucket::find(std::size_t class_index) {
    for (auto& c : cells) {
        if (c.class_index == class_index) return &c;
    }
    return nullptr;
}

EnhashModel::EnhashModel(const EnhashParams& params, std::size_t dims) : params_(params), dims_(dims) {
    params_.validate();
    if (dims_ == 0) {
        throw InvalidArgument("Enhash needs at least one feature");
    }
    estimators_.reserve(params_.L);
    for (std::size_t l = 0; l < params_.L; ++l) {
        Rng rng(params_.rng, l);
        estimators_.push_back({draw_gaussian_projection(rng, dims_, params_.bin_width), {}});
    }
    tie_seed_ = substream_seed(params_.rng, params_.L);
}

void EnhashModel::check_dims(std::span<const double> x) const {
    if (x.size() != dims_) {
        throw DataError("sample has " + std::to_string(x.size()) + " features, model expects " +
                        std::to_string(dims_));
    }
}

std::size_t EnhashModel::break_tie(const std::vector<std::size_t>& tied) const {
    if (tied.size() == 1 || params_.variant != EnhashVariant::NoWeights) {
        return tied.front();
    }
    return tied[mix64(tie_seed_ ^ t_) % tied.size()];
}

EnhashPrediction EnhashModel::predict(std::span<const double> x) const {
    check_dims(x);
    EnhashPrediction out;
    out.cweights.assign(classes_.size(), 0.0);
    if (classes_.empty()) {
        return out;
    }
    const double lambda = params_.effective_lambda();
    const bool weigh_by_distance = params_.variant != EnhashVariant::NoWeights;

    for (const auto& est : estimators_) {
        const auto it = est.buckets.find(projection_index(est.hash, x));
        if (it == est.buckets.end() || it->second.cells.empty()) {
            continue;
        }
        const Bucket& bucket = it->second;
        const double decay = decay_multiplier(lambda, t_ - bucket.last_update);
        out.decay_factors.push_back(decay);
        for (const auto& cell : bucket.cells) {
            double v = decay * cell.count;
            if (weigh_by_distance) {
                double sq = 0.0;
                const double inv = 1.0 / static_cast<double>(cell.samples);
                for (std::size_t j = 0; j < dims_; ++j) {
                    const double diff = x[j] - cell.sum[j] * inv;
                    sq += diff * diff;
                }
                v /= std::max(std::sqrt(sq), kEnhashDistanceFloor);
            }
            out.cweights[cell.class_index] += std::log1p(v);
        }
    }

    const double best = *std::max_element(out.cweights.begin(), out.cweights.end());
    std::vector<std::size_t> tied;
    for (std::size_t c = 0; c < out.cweights.size(); ++c) {
        if (out.cweights[c] == best) tied.push_back(c);
    }
    out.class_index = break_tie(tied);
    return out;
}

EnhashUpdateTrace EnhashModel::update(std::span<const double> x, std::string_view label) {
    check_dims(x);
    return update(x, classes_.intern(label));
}

EnhashUpdateTrace EnhashModel::update(std::span<const double> x, std::size_t class_index) {
    check_dims(x);
    if (class_index >= classes_.size()) {
        throw InvalidArgument("class index not registered");
    }
    const double lambda = params_.effective_lambda();
    EnhashUpdateTrace trace;
    trace.buckets.reserve(estimators_.size());
    trace.decay_factors.reserve(estimators_.size());
    trace.weight_sums.reserve(estimators_.size());

    for (auto& est : estimators_) {
        const std::int64_t id = projection_index(est.hash, x);
        Bucket& bucket = est.buckets[id];
        ClassCell* cell = bucket.find(class_index);
        if (cell == nullptr) {
            bucket.cells.push_back(ClassCell{class_index, 0.0, t_, 0, std::vector<double>(dims_, 0.0)});
            cell = &bucket.cells.back();
        }
        const double decay = decay_multiplier(lambda, t_ - cell->tstamp);
        cell->count = 1.0 + decay * cell->count;

        double total = 0.0;
        for (const auto& c : bucket.cells) total += c.count;
        for (auto& c : bucket.cells) c.count /= total;

        cell->tstamp = t_;
        bucket.last_update = std::max(bucket.last_update, t_);
        cell->samples += 1;
        for (std::size_t j = 0; j < dims_; ++j) cell->sum[j] += x[j];

        double check = 0.0;
        for (const auto& c : bucket.cells) check += c.count;
        trace.buckets.push_back(id);
        trace.decay_factors.push_back(decay);
        trace.weight_sums.push_back(check);
    }
    return trace;
}

EnhashPrediction EnhashModel::step(std::span<const double> x, std::string_view label,
                                   EnhashUpdateTrace* trace) {
    auto prediction = predict(x);
    auto done = update(x, label);
    if (trace != nullptr) *trace = std::move(done);
    ++t_;
    return prediction;
}

std::optional<std::string> EnhashModel::label_of(const EnhashPrediction& p) const {
    if (!p.class_index) return std::nullopt;
    return classes_.label(*p.class_index);
}

std::vector<double> windowed_error(const std::vector<bool>& correct, std::size_t window) {
    std::vector<double> series;
    if (window == 0) return series;
    series.reserve(correct.size());
    std::size_t mistakes = 0;
    for (std::size_t i = 0; i < correct.size(); ++i) {
        if (!correct[i]) ++mistakes;
        if (i >= window && !correct[i - window]) --mistakes;
        const std::size_t span = std::min(window, i + 1);
        series.push_back(static_cast<double>(mistakes) / static_cast<double>(span));
    }
    return series;
}

PrequentialReport summarize_prequential(const std::vector<bool>& correct,
                                        const std::vector<std::string>& labels, std::size_t window) {
    if (correct.size() != labels.size()) {
        throw InvalidArgument("outcome and label counts differ");
    }
    if (correct.empty()) {
        throw InvalidArgument("prequential evaluation of an empty stream");
    }
    PrequentialReport r;
    const double n = static_cast<double>(correct.size());
    r.samples = correct.size();
    r.mistakes = static_cast<std::size_t>(std::count(correct.begin(), correct.end(), false));
    r.error = static_cast<double>(r.mistakes) / n;
    r.accuracy = 1.0 - r.error;

    ClassRegistry registry;
    std::vector<std::size_t> freq;
    std::size_t persistence_hits = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const std::size_t c = registry.intern(labels[i]);
        if (c >= freq.size()) freq.resize(c + 1, 0);
        ++freq[c];
        if (i > 0 && labels[i] == labels[i - 1]) ++persistence_hits;
    }
    r.majority_accuracy = static_cast<double>(*std::max_element(freq.begin(), freq.end())) / n;
    r.persistence_accuracy = static_cast<double>(persistence_hits) / n;
    if (r.majority_accuracy < 1.0) {
        r.kappa_m = (r.accuracy - r.majority_accuracy) / (1.0 - r.majority_accuracy);
    }
    if (r.persistence_accuracy < 1.0) {
        r.kappa_t = (r.accuracy - r.persistence_accuracy) / (1.0 - r.persistence_accuracy);
    }
    r.window = window;
    r.windowed_error = windowed_error(correct, window);
    r.correct = correct;
    return r;
}

PrequentialReport prequential_evaluate(const EnhashParams& params, SampleStream& stream,
                                       std::size_t window) {
    EnhashModel model(params, stream.dims());
    std::vector<bool> correct;
    std::vector<std::string> labels;
    const auto start = std::chrono::steady_clock::now();
    while (auto sample = stream.next()) {
        const auto prediction = model.step(sample->x, sample->label);
        const auto predicted = model.label_of(prediction);
        correct.push_back(predicted && *predicted == sample->label);
        labels.push_back(std::move(sample->label));
    }
    const auto stop = std::chrono::steady_clock::now();
    if (correct.size() < 2) {
        throw InvalidArgument("prequential evaluation needs at least two samples");
    }
    auto report = summarize_prequential(correct, labels, window);
    report.wall_seconds = std::chrono::duration<double>(stop - start).count();
    return report;
}

std::optional<EnhashVariant> parse_enhash_variant(const std::string& name) {
    if (name == "full" || name == "default") return EnhashVariant::Full;
    if (name == "lambda0") return EnhashVariant::Lambda0;
    if (name == "noweights") return EnhashVariant::NoWeights;
    return std::nullopt;
}

std::string to_string(EnhashVariant variant) {
    switch (variant) {
        case EnhashVariant::Full: return "full";
        case EnhashVariant::Lambda0: return "lambda0";
        case EnhashVariant::NoWeights: return "noweights";
    }
    return "unknown";
}

}  // namespace firehash
