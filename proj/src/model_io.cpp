#include "firehash/model_io.hpp"

#include <algorithm>
#include <cstdio>
#include <json.hpp>

#include "firehash/csv.hpp"
#include "firehash/error.hpp"

namespace firehash {

using nlohmann::json;

namespace {

std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

json rng_json(const RngSpec& rng) {
    return {{"master_seed", rng.master_seed}, {"stream_id", rng.stream_id}};
}

RngSpec rng_from(const json& j) {
    return {j.at("master_seed").get<std::uint64_t>(), j.at("stream_id").get<std::uint64_t>()};
}

template <class Table>
json table_json(const Table& table) {
    std::vector<std::pair<typename Table::key_type, std::size_t>> entries(table.begin(), table.end());
    std::sort(entries.begin(), entries.end());
    json out = json::array();
    for (const auto& [id, count] : entries) {
        out.push_back(json::array({id, count}));
    }
    return out;
}

std::string seal(json doc) {
    doc["magic"] = kModelMagic;
    doc["format_version"] = kModelFormatVersion;
    // the checksum covers the compact dump of everything except itself
    const std::string checksum = hex64(fnv1a(doc.dump()));
    doc["checksum"] = checksum;
    return doc.dump(1) + "\n";
}

json unseal(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("model file is truncated or not JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("magic") || doc["magic"] != kModelMagic) {
        throw VersionError("not a firehash model file (bad magic)");
    }
    if (!doc.contains("format_version") || doc["format_version"] != kModelFormatVersion) {
        throw VersionError("unsupported model format_version " +
                           (doc.contains("format_version") ? doc["format_version"].dump() : "<none>") +
                           ", expected " + std::to_string(kModelFormatVersion));
    }
    if (!doc.contains("checksum") || !doc["checksum"].is_string()) {
        throw FormatError("model file has no checksum");
    }
    const std::string stored = doc["checksum"].get<std::string>();
    json body = doc;
    body.erase("checksum");
    if (hex64(fnv1a(body.dump())) != stored) {
        throw ChecksumError("model checksum mismatch; file was modified or corrupted");
    }
    return doc;
}

SketchEnsemble sketch_from(const json& doc) {
    SketchEnsemble m;
    const auto& p = doc.at("params");
    m.L = p.at("L").get<std::size_t>();
    m.M = p.at("M").get<std::size_t>();
    m.H = p.at("H").get<std::uint64_t>();
    m.trained_n = p.at("trained_n").get<std::size_t>();
    m.dims = p.at("dims").get<std::size_t>();
    m.rng = rng_from(doc.at("rng"));
    for (const auto& e : doc.at("estimators")) {
        SketchEstimator est;
        est.feature_indices = e.at("feature_indices").get<std::vector<std::size_t>>();
        est.thresholds = e.at("thresholds").get<std::vector<double>>();
        est.int_weights = e.at("int_weights").get<std::vector<std::uint64_t>>();
        est.modulus = m.H;
        if (est.thresholds.size() != est.size() || est.int_weights.size() != est.size() ||
            est.size() != m.M) {
            throw FormatError("sketch estimator arrays disagree with M");
        }
        for (std::size_t f : est.feature_indices) {
            if (f >= m.dims) throw FormatError("feature index out of range");
        }
        m.estimators.push_back(std::move(est));
    }
    if (m.estimators.size() != m.L || !is_prime(m.H) || m.H >= (1ULL << 63)) {
        throw FormatError("sketch model parameters are inconsistent");
    }
    return m;
}

ProjectionEnsemble projection_from(const json& doc) {
    ProjectionEnsemble m;
    const auto& p = doc.at("params");
    m.L = p.at("L").get<std::size_t>();
    m.M = p.at("M").get<std::size_t>();
    m.bin_width = p.at("bin_width").get<double>();
    m.trained_n = p.at("trained_n").get<std::size_t>();
    m.dims = p.at("dims").get<std::size_t>();
    m.rng = rng_from(doc.at("rng"));
    if (!(m.bin_width > 0.0)) throw FormatError("bin width must be positive");
    for (const auto& e : doc.at("estimators")) {
        ProjectionEstimator est;
        est.feature_indices = e.at("feature_indices").get<std::vector<std::size_t>>();
        est.weights = e.at("weights").get<std::vector<double>>();
        est.bias = e.at("bias").get<double>();
        est.bin_width = m.bin_width;
        if (est.weights.size() != est.size() || est.size() != m.M) {
            throw FormatError("projection estimator arrays disagree with M");
        }
        for (std::size_t f : est.feature_indices) {
            if (f >= m.dims) throw FormatError("feature index out of range");
        }
        m.estimators.push_back(std::move(est));
    }
    for (const auto& t : doc.at("bucket_tables")) {
        ProjectionTable table;
        std::size_t total = 0;
        for (const auto& entry : t) {
            const auto count = entry.at(1).get<std::size_t>();
            table.emplace(entry.at(0).get<std::int64_t>(), count);
            total += count;
        }
        if (total != m.trained_n) throw FormatError("bucket table does not sum to trained_n");
        m.bucket_tables.push_back(std::move(table));
    }
    if (m.estimators.size() != m.L || m.bucket_tables.size() != m.L) {
        throw FormatError("projection model parameters are inconsistent");
    }
    return m;
}

}  // namespace

std::string serialize_model(const SketchEnsemble& model) {
    json doc;
    doc["kind"] = "fire";
    doc["rng"] = rng_json(model.rng);
    doc["params"] = {{"L", model.L}, {"M", model.M}, {"H", model.H},
                     {"trained_n", model.trained_n}, {"dims", model.dims}};
    json ests = json::array();
    for (const auto& e : model.estimators) {
        ests.push_back({{"feature_indices", e.feature_indices},
                        {"thresholds", e.thresholds},
                        {"int_weights", e.int_weights}});
    }
    doc["estimators"] = std::move(ests);
    return seal(std::move(doc));
}

std::string serialize_model(const ProjectionEnsemble& model) {
    json doc;
    doc["kind"] = "fire1";
    doc["rng"] = rng_json(model.rng);
    doc["params"] = {{"L", model.L}, {"M", model.M}, {"bin_width", model.bin_width},
                     {"trained_n", model.trained_n}, {"dims", model.dims}};
    json ests = json::array();
    for (const auto& e : model.estimators) {
        ests.push_back({{"feature_indices", e.feature_indices}, {"weights", e.weights}, {"bias", e.bias}});
    }
    doc["estimators"] = std::move(ests);
    json tables = json::array();
    for (const auto& t : model.bucket_tables) {
        tables.push_back(table_json(t));
    }
    doc["bucket_tables"] = std::move(tables);
    return seal(std::move(doc));
}

AnyModel deserialize_model(std::string_view text) {
    const json doc = unseal(text);
    try {
        const auto kind = doc.at("kind").get<std::string>();
        if (kind == "fire") return sketch_from(doc);
        if (kind == "fire1") return projection_from(doc);
        throw FormatError("unknown model kind '" + kind + "'");
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed model document: ") + e.what());
    }
}

void save_model(const std::string& path, const SketchEnsemble& model) {
    write_text(path, serialize_model(model));
}

void save_model(const std::string& path, const ProjectionEnsemble& model) {
    write_text(path, serialize_model(model));
}

AnyModel load_model(const std::string& path) {
    return deserialize_model(read_text(path));
}

SketchEnsemble load_sketch_model(const std::string& path) {
    auto m = load_model(path);
    if (auto* s = std::get_if<SketchEnsemble>(&m)) return std::move(*s);
    throw FormatError("'" + path + "' holds a FiRE.1 model, expected FiRE");
}

ProjectionEnsemble load_projection_model(const std::string& path) {
    auto m = load_model(path);
    if (auto* p = std::get_if<ProjectionEnsemble>(&m)) return std::move(*p);
    throw FormatError("'" + path + "' holds a FiRE model, expected FiRE.1");
}

}  // namespace firehash
