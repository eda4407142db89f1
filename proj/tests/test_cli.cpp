#include "fricke/cli.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <vector>

using fricke::cli::dispatch;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<const char*> args) {
    args.insert(args.begin(), "fricke");
    std::ostringstream out, err;
    const int code = dispatch(static_cast<int>(args.size()), args.data(), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
    ::unsetenv("FRICKE_PRECISION");
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"basis", "--k", "0"}).code == 2);
    CHECK(run({"basis", "--k", "0", "--m", "-99"}).code == 2);
    CHECK(run({"expand", "--form", "nonsense"}).code == 2);
    CHECK(run({"expand", "--form", "delta3r"}).code == 2);
    CHECK(run({"--format", "xml", "expand", "--form", "j3plus"}).code == 2);
    CHECK(run({"contour-check", "--k", "0", "--m", "23", "--theta", "2.5", "--regime", "low"}).code == 2);
}

TEST_CASE("expand prints JSON or CSV") {
    const auto json = run({"expand", "--form", "j3plus", "--order", "3"});
    CHECK(json.code == 0);
    const auto doc = nlohmann::json::parse(json.out);
    CHECK(doc["coefficients"][2] == "783");

    const auto csv = run({"--format", "csv", "expand", "--form", "delta3r", "--r", "14", "--order", "4"});
    CHECK(csv.code == 0);
    CHECK(csv.out == "n,coefficient\r\n1,1\r\n2,-12\r\n3,-729\r\n4,-8048\r\n");
}

TEST_CASE("basis with the polynomial") {
    const auto r = run({"basis", "--k", "0", "--m", "2", "--order", "5", "--emit-poly"});
    CHECK(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["degree"] == 2);
    CHECK(doc.contains("poly"));
}

TEST_CASE("environment supplies defaults and flags win") {
    ::setenv("FRICKE_PRECISION", "300", 1);
    CHECK(fricke::cli::config_from_environment().precision_bits == 300);
    ::setenv("FRICKE_PRECISION", "lots", 1);
    CHECK_THROWS_AS(fricke::cli::config_from_environment(), std::invalid_argument);
    CHECK(run({"expand", "--form", "j3plus"}).code == 2);
    ::setenv("FRICKE_PRECISION", "64", 1);
    CHECK_THROWS_AS(fricke::cli::config_from_environment(), std::invalid_argument);
    ::setenv("FRICKE_PRECISION", "200", 1);
    const auto flagged = run({"contour-check", "--k", "0", "--m", "5", "--theta", "1.8", "--regime", "low",
                              "--bits", "160"});
    CHECK(flagged.code == 0);
    CHECK(nlohmann::json::parse(flagged.out)["lhs"].is_string());
    ::unsetenv("FRICKE_PRECISION");

    const auto dir = std::filesystem::temp_directory_path() / "fricke_cli_cache_test";
    std::filesystem::remove_all(dir);
    ::setenv("FRICKE_CACHE_DIR", dir.c_str(), 1);
    CHECK(run({"basis", "--k", "4", "--m", "3", "--order", "10"}).code == 0);
    CHECK(std::filesystem::exists(dir / "f_k4_m3_N10.json"));
    const auto other = std::filesystem::temp_directory_path() / "fricke_cli_cache_flag";
    std::filesystem::remove_all(other);
    CHECK(run({"--cache-dir", other.c_str(), "basis", "--k", "4", "--m", "3", "--order", "10"}).code == 0);
    CHECK(std::filesystem::exists(other / "f_k4_m3_N10.json"));
    ::unsetenv("FRICKE_CACHE_DIR");
    std::filesystem::remove_all(dir);
    std::filesystem::remove_all(other);
}

TEST_CASE("output file") {
    const auto path = std::filesystem::temp_directory_path() / "fricke_cli_out.json";
    const auto r = run({"--out", path.c_str(), "expand", "--form", "eta-quotient", "--order", "4"});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    CHECK(std::filesystem::exists(path));
    std::filesystem::remove(path);
}
