#include "fricke/forms.hpp"
#include "fricke/report.hpp"

#include <doctest.h>

using namespace fricke;
using namespace fricke::report;

TEST_CASE("CSV fields are quoted only when needed") {
    CHECK(CsvWriter::field("plain") == "plain");
    CHECK(CsvWriter::field("a,b") == "\"a,b\"");
    CHECK(CsvWriter::field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(CsvWriter::field("two\nlines") == "\"two\nlines\"");

    CsvWriter w({"x", "y"});
    w.row({"1", "a,b"});
    CHECK(w.str() == "x,y\r\n1,\"a,b\"\r\n");
    CHECK_THROWS_AS(w.row({"only one"}), std::logic_error);
}

TEST_CASE("format names") {
    CHECK(parse_format("json") == Format::Json);
    CHECK(parse_format("csv") == Format::Csv);
    CHECK_THROWS_AS(parse_format("xml"), std::invalid_argument);
}

TEST_CASE("series rendering keeps exact coefficients") {
    const auto j = forms::j3_plus(3).series;
    const auto doc = series_json("j3plus", 0, j);
    CHECK(doc["valuation"] == -1);
    CHECK(doc["coefficients"][2] == "783");
    CHECK(doc["integral"] == true);
    CHECK(series_csv(j) == "n,coefficient\r\n-1,1\r\n0,0\r\n1,783\r\n2,8672\r\n3,65367\r\n");
}

TEST_CASE("real text uses a point and fixed digits") {
    PrecisionScope scope(128);
    const std::string s = real_text(Real(1) / Real(3), 5);
    CHECK(s.find('.') != std::string::npos);
    CHECK(s.find(',') == std::string::npos);
    CHECK(s.rfind("3.3333", 0) == 0);
}

TEST_CASE("bounds rendering") {
    PrecisionScope scope(128);
    bounds::BoundReport r;
    r.name = "example, with comma";
    r.printed_value = "0.5";
    r.bound_value = Real("0.25");
    r.computed_extremum = Real("0.25");
    bounds::finalize(r);
    const auto doc = bounds_json({r});
    CHECK(doc["all_pass"] == true);
    CHECK(doc["reports"][0]["status"] == "pass");
    CHECK(bounds_csv({r}).find("\"example, with comma\"") != std::string::npos);
}
