#include "firehash/streams.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "firehash/error.hpp"

namespace firehash {

MatrixStream::MatrixStream(const DataMatrix& data, const LabelVector& labels)
    : data_(&data), labels_(&labels) {
    if (labels.size() != data.rows()) {
        throw DataError("label count does not match row count");
    }
}

std::optional<StreamSample> MatrixStream::next() {
    if (pos_ >= data_->rows()) {
        return std::nullopt;
    }
    StreamSample s;
    const auto row = data_->row(pos_);
    s.x.assign(row.begin(), row.end());
    const std::size_t v = labels_->values[pos_];
    s.label = labels_->kind == LabelKind::ClassLabel ? labels_->registry.label(v) : std::to_string(v);
    ++pos_;
    return s;
}

// ---------------------------------------------------------------------------

PlantedOutlierSpec PlantedOutlierSpec::defaults(const RngSpec& rng) {
    PlantedOutlierSpec spec;
    spec.clusters = {
        ClusterSpec{{0.0, 0.0}, 0.1, 200},
        ClusterSpec{{2.0, 1.2}, 0.15, 50},
    };
    spec.global_count = 5;
    spec.global_radius = 3.0;
    spec.local_count = 5;
    spec.local_parent = 0;
    spec.rng = rng;
    return spec;
}

namespace {

double distance(std::span<const double> a, std::span<const double> b) {
    double sq = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double diff = a[j] - b[j];
        sq += diff * diff;
    }
    return std::sqrt(sq);
}

/// Uniform direction on the unit sphere.
std::vector<double> random_direction(Rng& rng, std::size_t d) {
    std::vector<double> v(d);
    double norm = 0.0;
    do {
        norm = 0.0;
        for (auto& x : v) {
            x = rng.normal();
            norm += x * x;
        }
    } while (norm == 0.0);
    norm = std::sqrt(norm);
    for (auto& x : v) x /= norm;
    return v;
}

}  // namespace

PlantedDataset gen_planted(const PlantedOutlierSpec& spec) {
    if (spec.clusters.empty()) {
        throw InvalidArgument("planted spec needs at least one cluster");
    }
    const std::size_t d = spec.clusters.front().center.size();
    if (d == 0) {
        throw InvalidArgument("cluster centers must have at least one coordinate");
    }
    for (const auto& c : spec.clusters) {
        if (c.center.size() != d) throw InvalidArgument("cluster centers differ in dimension");
        if (c.size == 0) throw InvalidArgument("zero-size cluster");
        if (!(c.sigma > 0.0)) throw InvalidArgument("cluster sigma must be positive");
    }
    if (spec.local_count > 0 && spec.local_parent >= spec.clusters.size()) {
        throw InvalidArgument("local outlier parent cluster out of range");
    }
    if (spec.local_min_sigma < 0.0 || spec.local_max_sigma < spec.local_min_sigma) {
        throw InvalidArgument("invalid local outlier distance range");
    }

    Rng rng(spec.rng, kDataSubstream);
    std::vector<double> values;
    std::vector<OutlierType> types;

    for (const auto& c : spec.clusters) {
        for (std::size_t i = 0; i < c.size; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                values.push_back(rng.normal(c.center[j], c.sigma));
            }
            types.push_back(OutlierType::Inlier);
        }
    }

    std::vector<double> centroid(d, 0.0);
    for (const auto& c : spec.clusters) {
        for (std::size_t j = 0; j < d; ++j) centroid[j] += c.center[j];
    }
    for (auto& v : centroid) v /= static_cast<double>(spec.clusters.size());

    constexpr int kMaxAttempts = 10000;
    for (std::size_t g = 0; g < spec.global_count; ++g) {
        std::vector<double> point(d);
        bool placed = false;
        for (int attempt = 0; attempt < kMaxAttempts && !placed; ++attempt) {
            const auto dir = random_direction(rng, d);
            const double radius = spec.global_radius * rng.uniform(1.0, 1.5);
            for (std::size_t j = 0; j < d; ++j) point[j] = centroid[j] + radius * dir[j];
            placed = std::all_of(spec.clusters.begin(), spec.clusters.end(), [&](const ClusterSpec& c) {
                return distance(point, c.center) >= 10.0 * c.sigma;
            });
        }
        if (!placed) {
            throw InvalidArgument("global radius too small to keep outliers 10 sigma from every cluster");
        }
        values.insert(values.end(), point.begin(), point.end());
        types.push_back(OutlierType::Global);
    }

    for (std::size_t k = 0; k < spec.local_count; ++k) {
        const auto& parent = spec.clusters[spec.local_parent];
        const auto dir = random_direction(rng, d);
        const double r = parent.sigma * rng.uniform(spec.local_min_sigma, spec.local_max_sigma);
        for (std::size_t j = 0; j < d; ++j) values.push_back(parent.center[j] + r * dir[j]);
        types.push_back(OutlierType::Local);
    }

    PlantedDataset out;
    const std::size_t n = types.size();
    out.data = DataMatrix(n, d, std::move(values));
    std::vector<bool> flags(n);
    for (std::size_t i = 0; i < n; ++i) flags[i] = types[i] != OutlierType::Inlier;
    out.labels = LabelVector::outlier_flags(std::move(flags));
    out.types = std::move(types);
    return out;
}

// ---------------------------------------------------------------------------

DriftStreamSpec DriftStreamSpec::abrupt_default(const RngSpec& rng) {
    DriftStreamSpec spec;
    spec.kind = DriftKind::Abrupt;
    spec.n = 20000;
    spec.d = 2;
    spec.drift_points = {10000};
    spec.rng = rng;
    return spec;
}

namespace {

void validate(const DriftStreamSpec& spec) {
    if (spec.n == 0) throw InvalidArgument("stream length must be at least 1");
    if (spec.d == 0) throw InvalidArgument("stream dimension must be at least 1");
    if (spec.classes < 2) throw InvalidArgument("drift streams need at least two classes");
    if (!std::is_sorted(spec.drift_points.begin(), spec.drift_points.end())) {
        throw InvalidArgument("drift points must be sorted");
    }
    for (std::size_t p : spec.drift_points) {
        if (p >= spec.n) throw InvalidArgument("drift point outside [0, n)");
    }
    if (!(spec.noise >= 0.0) || !std::isfinite(spec.separation) || !std::isfinite(spec.rate)) {
        throw InvalidArgument("stream noise/separation/rate must be finite and noise >= 0");
    }
}

/// Base for the generated streams: counts samples and drift points passed.
class GeneratedStream : public SampleStream {
public:
    explicit GeneratedStream(const DriftStreamSpec& spec) : spec_(spec), rng_(spec.rng, kDataSubstream) {
        validate(spec_);
    }

    std::optional<StreamSample> next() final {
        if (t_ >= spec_.n) return std::nullopt;
        while (next_drift_ < spec_.drift_points.size() && spec_.drift_points[next_drift_] <= t_) {
            ++next_drift_;
        }
        auto s = make(t_, next_drift_);
        ++t_;
        return s;
    }
    std::size_t dims() const final { return spec_.d; }

protected:
    virtual StreamSample make(std::size_t t, std::size_t drifts_passed) = 0;

    double class_offset(std::size_t c) const {
        return spec_.separation * (static_cast<double>(c) - (static_cast<double>(spec_.classes) - 1.0) / 2.0);
    }

    DriftStreamSpec spec_;
    Rng rng_;

private:
    std::size_t t_ = 0;
    std::size_t next_drift_ = 0;
};

/// Fixed Gaussian components; the label assigned to each component changes at
/// every drift point (rotation for abrupt, two-concept alternation for recurring).
class ComponentSwapStream final : public GeneratedStream {
public:
    using GeneratedStream::GeneratedStream;

protected:
    StreamSample make(std::size_t, std::size_t drifts) override {
        const std::size_t c = rng_.index(spec_.classes);
        StreamSample s;
        s.x.resize(spec_.d);
        for (std::size_t j = 0; j < spec_.d; ++j) {
            s.x[j] = (j == 0 ? class_offset(c) : 0.0) + spec_.noise * rng_.normal();
        }
        std::size_t label = 0;
        if (spec_.kind == DriftKind::Recurring) {
            label = drifts % 2 == 0 ? c : spec_.classes - 1 - c;
        } else {
            label = (c + drifts) % spec_.classes;
        }
        s.label = std::to_string(label);
        return s;
    }
};

/// Uniform points in [-1, 1]^d labelled by the side of a hyperplane whose normal
/// rotates in the (x0, x1) plane.
class RotatingHyperplaneStream final : public GeneratedStream {
public:
    explicit RotatingHyperplaneStream(const DriftStreamSpec& spec) : GeneratedStream(spec) {
        if (spec.d < 2) throw InvalidArgument("incremental stream needs d >= 2");
        if (spec.classes != 2) throw InvalidArgument("incremental stream is binary");
    }

protected:
    StreamSample make(std::size_t t, std::size_t) override {
        StreamSample s;
        s.x.resize(spec_.d);
        for (auto& v : s.x) v = rng_.uniform(-1.0, 1.0);
        const double angle = spec_.rate * static_cast<double>(t);
        const double side = std::cos(angle) * s.x[0] + std::sin(angle) * s.x[1];
        s.label = side >= 0.0 ? "1" : "0";
        return s;
    }
};

/// Class means slide along x1 while the class boundaries (fixed thresholds on x0)
/// stay put; the label is read off the boundary.
class TranslatingMeansStream final : public GeneratedStream {
public:
    explicit TranslatingMeansStream(const DriftStreamSpec& spec) : GeneratedStream(spec) {
        if (spec.d < 2) throw InvalidArgument("virtual stream needs d >= 2");
    }

protected:
    StreamSample make(std::size_t t, std::size_t) override {
        const std::size_t c = rng_.index(spec_.classes);
        const double shift = spec_.rate * static_cast<double>(t);
        StreamSample s;
        s.x.resize(spec_.d);
        for (std::size_t j = 0; j < spec_.d; ++j) {
            const double mean = j == 0 ? class_offset(c) : (j == 1 ? shift : 0.0);
            s.x[j] = mean + spec_.noise * rng_.normal();
        }
        s.label = std::to_string(region_of(s.x[0]));
        return s;
    }

private:
    std::size_t region_of(double x0) const {
        // boundaries halfway between adjacent class offsets
        std::size_t region = 0;
        for (std::size_t c = 0; c + 1 < spec_.classes; ++c) {
            if (x0 >= (class_offset(c) + class_offset(c + 1)) / 2.0) region = c + 1;
        }
        return region;
    }
};

}  // namespace

std::unique_ptr<SampleStream> gen_abrupt(const DriftStreamSpec& spec) {
    return std::make_unique<ComponentSwapStream>(spec);
}

std::unique_ptr<SampleStream> gen_incremental(const DriftStreamSpec& spec) {
    return std::make_unique<RotatingHyperplaneStream>(spec);
}

std::unique_ptr<SampleStream> gen_virtual(const DriftStreamSpec& spec) {
    return std::make_unique<TranslatingMeansStream>(spec);
}

std::unique_ptr<SampleStream> make_drift_stream(const DriftStreamSpec& spec) {
    switch (spec.kind) {
        case DriftKind::Abrupt:
        case DriftKind::Recurring:
            return gen_abrupt(spec);
        case DriftKind::Incremental:
            return gen_incremental(spec);
        case DriftKind::Virtual:
            return gen_virtual(spec);
    }
    throw InvalidArgument("unknown drift kind");
}

std::pair<DataMatrix, LabelVector> collect(SampleStream& stream) {
    std::vector<double> values;
    LabelVector labels;
    labels.kind = LabelKind::ClassLabel;
    std::size_t n = 0;
    while (auto s = stream.next()) {
        values.insert(values.end(), s->x.begin(), s->x.end());
        labels.values.push_back(labels.registry.intern(s->label));
        ++n;
    }
    return {DataMatrix(n, stream.dims(), std::move(values)), std::move(labels)};
}

std::optional<DriftKind> parse_drift_kind(const std::string& name) {
    if (name == "abrupt") return DriftKind::Abrupt;
    if (name == "incremental") return DriftKind::Incremental;
    if (name == "virtual") return DriftKind::Virtual;
    if (name == "recurring") return DriftKind::Recurring;
    return std::nullopt;
}

std::string to_string(DriftKind kind) {
    switch (kind) {
        case DriftKind::Abrupt: return "abrupt";
        case DriftKind::Incremental: return "incremental";
        case DriftKind::Virtual: return "virtual";
        case DriftKind::Recurring: return "recurring";
    }
    return "unknown";
}

}  // namespace firehash
