#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "firehash/data.hpp"
#include "firehash/rng.hpp"

namespace firehash {

/// One labelled stream element.
struct StreamSample {
    std::vector<double> x;
    std::string label;
};

/// Single-consumer, sequential source of labelled samples.
class SampleStream {
public:
    virtual ~SampleStream() = default;
    virtual std::optional<StreamSample> next() = 0;
    virtual std::size_t dims() const = 0;
};

/// Replays the rows of a matrix with their class labels.
class MatrixStream final : public SampleStream {
public:
    MatrixStream(const DataMatrix& data, const LabelVector& labels);
    std::optional<StreamSample> next() override;
    std::size_t dims() const override { return data_->cols(); }

private:
    const DataMatrix* data_;
    const LabelVector* labels_;
    std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// planted outliers

struct ClusterSpec {
    std::vector<double> center;
    double sigma = 1.0;
    std::size_t size = 0;
};

struct PlantedOutlierSpec {
    std::vector<ClusterSpec> clusters;
    std::size_t global_count = 0;
    /// Global outliers are drawn at this distance from the centroid of the cluster
    /// centers (times a factor in [1, 1.5]) and kept only if >= 10 sigma from every center.
    double global_radius = 1.0;
    std::size_t local_count = 0;
    /// Cluster whose neighbourhood hosts the local outliers.
    std::size_t local_parent = 0;
    /// Local outliers sit at a distance uniform in [min, max] parent sigmas.
    double local_min_sigma = 2.0;
    double local_max_sigma = 4.0;
    RngSpec rng;

    /// Two 2-D clusters (200 dense, 50 sparse), 5 global and 5 local outliers.
    static PlantedOutlierSpec defaults(const RngSpec& rng);
};

enum class OutlierType { Inlier, Local, Global };

struct PlantedDataset {
    DataMatrix data;
    LabelVector labels;
    std::vector<OutlierType> types;
};

PlantedDataset gen_planted(const PlantedOutlierSpec& spec);

// ---------------------------------------------------------------------------
// drift streams

enum class DriftKind { Abrupt, Incremental, Virtual, Recurring };

struct DriftStreamSpec {
    DriftKind kind = DriftKind::Abrupt;
    std::size_t n = 0;
    std::size_t d = 2;
    std::vector<std::size_t> drift_points;
    RngSpec rng;
    std::size_t classes = 2;
    /// Abrupt/recurring/virtual: distance between adjacent class means.
    double separation = 12.0;
    /// Per-coordinate Gaussian noise around class means.
    double noise = 1.0;
    /// Incremental: hyperplane rotation per sample (radians).
    /// Virtual: translation of every class mean per sample along the boundary.
    double rate = 0.0;

    /// Abrupt stream used for drift-recovery experiments: 20000 samples, label
    /// flip at 10000.
    static DriftStreamSpec abrupt_default(const RngSpec& rng);
};

/// Validates the spec and returns an iterator over its samples.
std::unique_ptr<SampleStream> make_drift_stream(const DriftStreamSpec& spec);

std::unique_ptr<SampleStream> gen_abrupt(const DriftStreamSpec& spec);
std::unique_ptr<SampleStream> gen_incremental(const DriftStreamSpec& spec);
std::unique_ptr<SampleStream> gen_virtual(const DriftStreamSpec& spec);

/// Drains a stream into a matrix plus class labels.
std::pair<DataMatrix, LabelVector> collect(SampleStream& stream);

std::optional<DriftKind> parse_drift_kind(const std::string& name);
std::string to_string(DriftKind kind);

}  // namespace firehash
