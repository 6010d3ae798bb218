#include <doctest.h>

#include <filesystem>

#include "firehash/csv.hpp"
#include "firehash/error.hpp"
#include "firehash/fire.hpp"
#include "firehash/fire1.hpp"
#include "firehash/model_io.hpp"

using namespace firehash;

namespace {

DataMatrix random_matrix(std::size_t n, std::size_t d, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> v(n * d);
    for (auto& x : v) x = rng.uniform(-3.0, 3.0);
    return DataMatrix(n, d, std::move(v));
}

std::string replace_once(std::string s, const std::string& from, const std::string& to) {
    const auto pos = s.find(from);
    REQUIRE(pos != std::string::npos);
    return s.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("projection ensemble round trip rescoring is identical") {
    const auto data = random_matrix(100, 4, 1);
    const auto m = fit_fire1(data, 20, 3, 0.2, RngSpec{3, 9});
    const auto text = serialize_model(m);
    const auto back = std::get<ProjectionEnsemble>(deserialize_model(text));
    CHECK(back == m);
    CHECK(score_fire1(data, back).scores == score_fire1(data, m).scores);
    CHECK(score_unseen(back, data) == score_unseen(m, data));
    CHECK(serialize_model(back) == text);
}

TEST_CASE("sketch ensemble round trip keeps hash indices") {
    const auto data = random_matrix(30, 5, 2);
    const auto m = fit_fire(data, 100, 50, kFireDefaultH, RngSpec{4, 0});
    const auto back = std::get<SketchEnsemble>(deserialize_model(serialize_model(m)));
    CHECK(back == m);
    for (std::size_t l = 0; l < m.L; ++l) {
        CHECK(sketch_index(back.estimators[l], data.row(0)) == sketch_index(m.estimators[l], data.row(0)));
    }
}

TEST_CASE("corrupted model files are rejected with distinct errors") {
    const auto data = random_matrix(20, 2, 3);
    const auto text = serialize_model(fit_fire1(data, 3, 2, 0.5, RngSpec{1, 0}));

    CHECK_THROWS_AS(deserialize_model(replace_once(text, "firehash-model", "firehash-modex")), VersionError);
    CHECK_THROWS_AS(deserialize_model(replace_once(text, "\"format_version\": 1", "\"format_version\": 2")),
                    VersionError);
    CHECK_THROWS_AS(deserialize_model(replace_once(text, "\"trained_n\": 20", "\"trained_n\": 21")),
                    ChecksumError);
    CHECK_THROWS_AS(deserialize_model(text.substr(0, text.size() / 2)), FormatError);
    CHECK_THROWS_AS(deserialize_model("[]"), VersionError);
}

TEST_CASE("save and load through files") {
    const std::filesystem::path dir = std::filesystem::path(FIREHASH_TEST_TMP) / "model_io";
    std::filesystem::create_directories(dir);
    const auto data = random_matrix(25, 3, 4);
    const auto fire = fit_fire(data, 4, 3, kFireDefaultH, RngSpec{2, 0});
    const auto proj = fit_fire1(data, 4, 3, 0.1, RngSpec{2, 0});
    save_model((dir / "fire.json").string(), fire);
    save_model((dir / "fire1.json").string(), proj);
    CHECK(load_sketch_model((dir / "fire.json").string()) == fire);
    CHECK(load_projection_model((dir / "fire1.json").string()) == proj);
    CHECK_THROWS_AS(load_projection_model((dir / "fire.json").string()), FormatError);
    CHECK_THROWS_AS(load_model((dir / "missing.json").string()), IoError);
}
