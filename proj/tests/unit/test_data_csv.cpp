#include <doctest.h>

#include <cmath>
#include <limits>

#include "firehash/csv.hpp"
#include "firehash/data.hpp"
#include "firehash/error.hpp"

using namespace firehash;

TEST_CASE("DataMatrix validates shape and values") {
    const auto m = DataMatrix::from_rows({{1.0, -2.0}, {3.0, 4.0}, {0.0, 0.5}});
    CHECK(m.rows() == 3);
    CHECK(m.cols() == 2);
    CHECK(m(1, 0) == 3.0);
    CHECK(m.feature_mins() == std::vector<double>{0.0, -2.0});
    CHECK(m.feature_maxs() == std::vector<double>{3.0, 4.0});

    CHECK_THROWS_AS(DataMatrix(0, 2, {}), DataError);
    CHECK_THROWS_AS(DataMatrix(2, 2, {1.0, 2.0, 3.0}), DataError);
    CHECK_THROWS_AS(DataMatrix(1, 1, {std::numeric_limits<double>::quiet_NaN()}), DataError);
    CHECK_THROWS_AS(DataMatrix(1, 1, {std::numeric_limits<double>::infinity()}), DataError);
    CHECK_THROWS_AS(DataMatrix::from_rows({{1.0, 2.0}, {3.0}}), DataError);

    const std::size_t pick[] = {2, 0};
    const auto s = m.select_rows(pick);
    CHECK(s.rows() == 2);
    CHECK(s(0, 1) == 0.5);
}

TEST_CASE("class registry keeps first-seen order") {
    ClassRegistry r;
    CHECK(r.intern("b") == 0);
    CHECK(r.intern("a") == 1);
    CHECK(r.intern("b") == 0);
    CHECK(r.labels() == std::vector<std::string>{"b", "a"});
    CHECK(!r.find("c"));
}

TEST_CASE("CSV parser handles quotes, CRLF and blank lines") {
    const auto t = parse_csv_text("a,\"b,c\",d\r\n1,\"x \"\"y\"\"\",3\r\n\r\n4,5,6\n");
    REQUIRE(t.header.size() == 3);
    CHECK(t.header[1] == "b,c");
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0][1] == "x \"y\"");
    CHECK(t.rows[1][2] == "6");
    CHECK(t.column("d") == 2);
    CHECK_THROWS_AS(parse_csv_text("a,b\n1,2,3\n"), DataError);
    CHECK_THROWS_AS(parse_csv_text("a,b\n\"1,2\n"), DataError);
}

TEST_CASE("real parsing is strict") {
    CHECK(parse_real("1.5") == 1.5);
    CHECK(parse_real("+2") == 2.0);
    CHECK(parse_real("-1e-3") == -1e-3);
    CHECK(!parse_real(""));
    CHECK(!parse_real("1.5x"));
    CHECK(!parse_real("nan"));
    CHECK(!parse_real("inf"));
    CHECK(parse_outlier_flag("1") == true);
    CHECK(parse_outlier_flag("outlier") == true);
    CHECK(parse_outlier_flag("0") == false);
    CHECK(!parse_outlier_flag("2"));
}

TEST_CASE("load_csv separates the label column") {
    const auto l = load_csv_text("x,label,y\n1,0,2\n3,1,4\n", std::string("label"));
    CHECK(l.data.cols() == 2);
    CHECK(l.feature_names == std::vector<std::string>{"x", "y"});
    REQUIRE(l.labels);
    CHECK(l.labels->outlier_mask() == std::vector<bool>{false, true});
    CHECK(l.labels->outlier_count() == 1);

    const auto c = load_csv_text("x,y\n1,a\n2,b\n3,a\n", std::string("y"), LabelKind::ClassLabel);
    CHECK(c.labels->values == std::vector<std::size_t>{0, 1, 0});
    CHECK(c.labels->registry.size() == 2);
}

TEST_CASE("load_csv reports the offending line and column") {
    try {
        load_csv_text("x,y\n1,2\n3,oops\n");
        FAIL("expected DataError");
    } catch (const DataError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("line 3") != std::string::npos);
        CHECK(msg.find("'y'") != std::string::npos);
    }
    CHECK_THROWS_AS(load_csv_text("x,y\n1,2\n", std::string("z")), DataError);
    CHECK_THROWS_AS(load_csv_text("x,label\n1,2\n", std::string("label")), DataError);
    CHECK_THROWS_AS(load_csv_text("x\n"), DataError);
    CHECK_THROWS_AS(load_csv("/nonexistent/file.csv"), IoError);
}

TEST_CASE("format_real round-trips and keeps a decimal point") {
    CHECK(format_real(2.0) == "2.0");
    CHECK(format_real(0.1) == "0.1");
    const double x = 1.0 / 3.0;
    CHECK(parse_real(format_real(x)) == x);
    CHECK(format_scores(std::vector<double>{1.0, 0.5}) == "row_index,score\n0,1.0\n1,0.5\n");
    const bool flags[] = {true, false};
    CHECK(format_scores(std::vector<double>{1.0, 0.5}, std::span<const bool>(flags)) ==
          "row_index,score,rare\n0,1.0,1\n1,0.5,0\n");
    CHECK_THROWS_AS(format_scores(std::vector<double>{}), InvalidArgument);
}
