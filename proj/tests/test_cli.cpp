#include "../tools/cli.hpp"

#include "frnorm/json_io.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace frnorm;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "frnorm");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
public:
    TempDir() {
        path_ = std::filesystem::temp_directory_path() /
                ("frnorm_cli_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }

    std::string write(const std::string& name, const std::string& text) const {
        const auto p = path_ / name;
        std::ofstream(p) << text;
        return p.string();
    }

private:
    std::filesystem::path path_;
};

const char* kDiagonal = R"({"shape": [2], "partitions": [[[1, 1], [1, 1]]]})";
const char* kUniform = R"({"weights": [1.0]})";
const char* kWitness = R"({"shape": [2], "summands": [{"rows": 2, "cols": 2,
    "data": [[1, 0], [2, 0], [2, 0], [1, 0]]}]})";

} // namespace

TEST_CASE("norm of the diagonal witness") {
    TempDir dir;
    const auto r = invoke({"norm", "--subalgebra", dir.write("b.json", kDiagonal), "--weights",
                           dir.write("w.json", kUniform), "--element", dir.write("a.json", kWitness)});
    REQUIRE(r.code == 0);
    const auto j = parse_json(r.out);
    CHECK(j["fr_norm_sq"].get<double>() == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(j["op_norm"].get<double>() == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("norm under a hadamard conjugation") {
    TempDir dir;
    const double h = 1.0 / std::sqrt(2.0);
    json u{{"shape", {2}}, {"summands", {{{"rows", 2}, {"cols", 2}, {"data", {{h, 0}, {h, 0}, {h, 0}, {-h, 0}}}}}}};
    const char* ones = R"({"shape": [2], "summands": [{"rows": 2, "cols": 2,
        "data": [[1, 0], [1, 0], [1, 0], [1, 0]]}]})";
    const auto b = dir.write("b.json", kDiagonal);
    const auto a = dir.write("a.json", ones);
    auto r = invoke({"norm", "--subalgebra", b, "--element", a});
    REQUIRE(r.code == 0);
    CHECK(parse_json(r.out)["fr_norm_sq"].get<double>() == doctest::Approx(2.0));
    r = invoke({"norm", "--subalgebra", b, "--element", a, "--unitary", dir.write("u.json", u.dump())});
    REQUIRE(r.code == 0);
    // ones is diagonal in the Hadamard basis: U B U^* contains it
    CHECK(parse_json(r.out)["fr_norm_sq"].get<double>() == doctest::Approx(4.0));
}

TEST_CASE("expectation methods agree") {
    TempDir dir;
    const auto b = dir.write("b.json", kDiagonal);
    const auto a = dir.write("a.json", kWitness);
    const auto closed = invoke({"expect", "--subalgebra", b, "--element", a});
    const auto gram = invoke({"expect", "--subalgebra", b, "--element", a, "--method", "gram"});
    REQUIRE(closed.code == 0);
    REQUIRE(gram.code == 0);
    const auto e = element_from_json(parse_json(closed.out)["expectation"]);
    CHECK(e[0] == ComplexMatrix{{1, 0}, {0, 1}});
    CHECK(max_abs_diff(e, element_from_json(parse_json(gram.out)["expectation"])) <= 1e-12);
    CHECK(invoke({"expect", "--subalgebra", b, "--element", a, "--method", "other"}).code == 2);
}

TEST_CASE("constants and search") {
    TempDir dir;
    const auto b = dir.write("b.json", R"({"shape": [3], "partitions": [[[2, 1], [1, 1]]]})");
    auto r = invoke({"constants", "--subalgebra", b});
    REQUIRE(r.code == 0);
    auto j = parse_json(r.out);
    CHECK(j["bound"].get<double>() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(j["theorem"] == "distinct-blocks");

    r = invoke({"search", "--subalgebra", b, "--samples", "300", "--seed", "4", "--workers", "2"});
    REQUIRE(r.code == 0);
    j = parse_json(r.out);
    CHECK(j["best_ratio"].get<double>() >= j["bound"].get<double>() - 1e-9);
    CHECK(j["workers"] == 2);
    // byte-identical reruns
    CHECK(invoke({"search", "--subalgebra", b, "--samples", "300", "--seed", "4", "--workers", "2"}).out == r.out);
    CHECK(invoke({"search", "--subalgebra", b, "--samples", "0"}).code == 2);
    CHECK(invoke({"search", "--subalgebra", b, "--workers", "0"}).code == 2);
}

TEST_CASE("table in csv and json") {
    auto r = invoke({"table1", "--theoretical-only"});
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "label,theoretical,empirical,theorem");
    std::getline(lines, line);
    CHECK(line.starts_with("\"B^3_{2,1}\",0.70710678118654"));
    CHECK(line.ends_with(",,distinct-blocks"));
    std::size_t rows = 1;
    while (std::getline(lines, line))
        ++rows;
    CHECK(rows == 16);
    CHECK(r.err.find("B^5_{2,1,1,1}") != std::string::npos);

    r = invoke({"table1", "--theoretical-only", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = parse_json(r.out);
    CHECK(j.size() == 16);
    CHECK(j[0]["empirical"].is_null());
}

TEST_CASE("tower subcommand") {
    auto r = invoke({"effros-shen", "--cf", "1,1,1,1", "--level", "2"});
    REQUIRE(r.code == 0);
    auto j = parse_json(r.out);
    CHECK(j["constant"].get<double>() == doctest::Approx(0.30902).epsilon(1e-5));
    CHECK(j["shape"] == json::array({2, 1}));
    CHECK(j["structural"].contains("gamma"));

    r = invoke({"effros-shen", "--theta", "0.41421356237309503", "--level", "3", "--perturb", "0.4142136,0.45123456789"});
    REQUIRE(r.code == 0);
    j = parse_json(r.out);
    CHECK(j["digits"] == json::array({2, 2, 2, 2}));
    CHECK(j["continuity"].size() == 2);
    CHECK(j["continuity"][0]["prefix_matches"] == true);

    r = invoke({"effros-shen", "--cf", "1", "--level", "1"});
    REQUIRE(r.code == 0);
    CHECK(parse_json(r.out)["constant"].is_null());

    CHECK(invoke({"effros-shen", "--theta", "0.5", "--level", "2"}).code == 2);
    CHECK(invoke({"effros-shen", "--theta", "1.5"}).code == 2);
    CHECK(invoke({"effros-shen", "--cf", "1,0"}).code == 2);
    CHECK(invoke({"effros-shen", "--cf", "1", "--theta", "0.3"}).code == 2);
}

TEST_CASE("baire subcommand") {
    auto r = invoke({"baire", "--cf", "1,1,1,1", "--cf", "1,1,2,1"});
    REQUIRE(r.code == 0);
    auto j = parse_json(r.out);
    CHECK(j["distance"].get<double>() == 0.125);
    CHECK(j["first_disagreement"] == 3);
    r = invoke({"baire", "--cf", "1,1", "--cf", "1,1,1", "--length", "2"});
    REQUIRE(r.code == 0);
    CHECK(parse_json(r.out)["distance"].get<double>() == 0.0);
    CHECK(invoke({"baire", "--cf", "1,1", "--cf", "1,1,1"}).code == 2);
    CHECK(invoke({"baire", "--cf", "1,1"}).code == 2);
}

TEST_CASE("errors are machine readable") {
    TempDir dir;
    auto r = invoke({"norm", "--subalgebra", dir.write("bad.json", "{"), "--element", "x"});
    CHECK(r.code == 2);
    const auto j = parse_json(r.err);
    CHECK(j["error"]["kind"] == "schema");
    CHECK(r.out.empty());

    r = invoke({"bogus"});
    CHECK(r.code == 2);
    CHECK(parse_json(r.err)["error"]["kind"] == "usage");

    CHECK(invoke({}).code == 2);
    CHECK(invoke({"norm"}).code == 2);
    CHECK(invoke({"norm", "--subalgebra", "/nonexistent/b.json", "--element", "x"}).code == 2);
    CHECK(invoke({"--help"}).code == 0);

    // a group whose slots disagree on block size
    const auto mixed = dir.write("mixed.json", R"({"shape": [3, 1], "partitions": [[[2, 1], [1, 1]], [[1, 1]]],
        "groups": [[[1, 1], [2, 1]], [[1, 2]]]})");
    r = invoke({"constants", "--subalgebra", mixed});
    CHECK(r.code == 2);
    CHECK(parse_json(r.err)["error"]["kind"] == "validation");
}

TEST_CASE("selftest passes on a small budget") {
    const auto r = invoke({"selftest", "--samples", "20", "--seed", "3"});
    CHECK(r.code == 0);
    CHECK(r.out.find("selftest passed") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
}
