#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "commands.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace cubicfe;
using namespace cubicfe::cli;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<json> json_lines(const std::string& text) {
  std::vector<json> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(json::parse(line));
  return out;
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("cubicfe_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string write(const std::string& name, const std::string& content) const {
    const auto p = path_ / name;
    std::ofstream(p, std::ios::binary) << content;
    return p.string();
  }
  [[nodiscard]] std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("format_text_number") {
  CHECK(format_text_number(3.0) == "3");
  CHECK(format_text_number(-0.0) == "0");
  CHECK(format_text_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_text_number(2.9999999999999996) == "2.9999999999999996");
  CHECK(format_text_number(1e-20) == "1e-20");
  CHECK(format_text_number(1.5) == "1.5");
}

TEST_CASE("solve") {
  SUBCASE("complex pair as JSON") {
    const auto r = invoke({"solve", "x^3 - 5x^2 + 9x - 9", "--format", "json", "--no-timing"});
    REQUIRE(r.code == kExitOk);
    const auto doc = json::parse(r.out);
    CHECK(doc["classification"] == "one_real_two_complex");
    CHECK(doc["method"] == "fe");
    CHECK(doc["elapsed_us"].is_null());
    CHECK(doc["input"]["coefficients_ascending"] == json::array({-9.0, 9.0, -5.0, 1.0}));
    const auto& roots = doc["roots"];
    CHECK(std::abs(roots[0]["re"].get<double>() - 3.0) <= 1e-12);
    CHECK(std::abs(roots[1]["re"].get<double>() - 1.0) <= 1e-12);
    CHECK(std::abs(roots[1]["im"].get<double>() - std::numbers::sqrt2) <= 1e-12);
    CHECK(std::abs(roots[2]["im"].get<double>() + std::numbers::sqrt2) <= 1e-12);
  }
  SUBCASE("descending coefficients, text output") {
    const auto r = invoke({"solve", "--coeffs", "1,-6,11,-6", "--no-timing"});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out.find("x1 = 3\n  x2 = 2\n  x3 = 1\n") != std::string::npos);
    CHECK(r.out.find("classification: three_real_distinct") != std::string::npos);
    CHECK(r.out.find("elapsed_us") == std::string::npos);
  }
  SUBCASE("timing is reported by default") {
    const auto doc = json::parse(invoke({"solve", "x^3 - 1", "--format", "json"}).out);
    CHECK(doc["elapsed_us"].is_number());
  }
  SUBCASE("quadratic gate") {
    const auto gated = invoke({"solve", "x^2 - 1"});
    CHECK(gated.code == kExitDegreeGate);
    CHECK(gated.err.find("--allow-quadratic") != std::string::npos);
    const auto r = invoke({"solve", "x^2 - 1", "--allow-quadratic", "--format", "json"});
    REQUIRE(r.code == kExitOk);
    const auto doc = json::parse(r.out);
    CHECK(doc["classification"] == "two_real_distinct");
    CHECK(doc["roots"][0]["re"] == 1.0);
    CHECK(doc["roots"][1]["re"] == -1.0);
    CHECK(doc["invariants"]["Q"].is_null());
    CHECK(invoke({"solve", "--coeffs", "0,1,0,-1"}).code == kExitDegreeGate);
    CHECK(invoke({"solve", "3x + 1", "--allow-quadratic"}).code == kExitDegreeGate);
  }
  SUBCASE("parse error with caret") {
    const auto r = invoke({"solve", "x^3 + y"});
    CHECK(r.code == kExitInputError);
    CHECK(r.out.empty());
    CHECK(r.err == "error: DuplicateVariable at position 6: second variable 'y' in a single-variable polynomial\n"
                   "  x^3 + y\n"
                   "        ^\n");
  }
  SUBCASE("bad coefficient lists") {
    CHECK(invoke({"solve", "--coeffs", "1,2,3,4,5"}).code == kExitInputError);
    CHECK(invoke({"solve", "--coeffs", "1,,3"}).code == kExitInputError);
    CHECK(invoke({"solve", "--coeffs", "1,nan,3"}).code == kExitInputError);
  }
  SUBCASE("usage errors") {
    CHECK(invoke({}).code == kExitInputError);
    CHECK(invoke({"solve"}).code == kExitInputError);
    CHECK(invoke({"solve", "x^3", "--coeffs", "1,0,0,0"}).code == kExitInputError);
    CHECK(invoke({"solve", "x^3", "--method", "newton"}).code == kExitInputError);
    CHECK(invoke({"solve", "x^3", "--format", "xml"}).code == kExitInputError);
    CHECK(invoke({"solve", "--help"}).code == kExitOk);
  }
  SUBCASE("leading minus sign") {
    const auto r = invoke({"solve", "-x^3 + 1", "--format", "json"});
    REQUIRE(r.code == kExitOk);
    CHECK(json::parse(r.out)["input"]["coefficients_ascending"] == json::array({1.0, 0.0, 0.0, -1.0}));
    CHECK(invoke({"solve", "--coeffs", "-1,0,0,1"}).code == kExitOk);
  }
  SUBCASE("every method") {
    for (const char* m : {"fe", "classic", "oracle"}) {
      CAPTURE(m);
      const auto doc = json::parse(invoke({"solve", "x^3 - 15x - 4", "--method", m, "--format", "json"}).out);
      CHECK(doc["method"] == m);
      CHECK(doc["classification"] == "three_real_distinct");
      CHECK(std::abs(doc["roots"][0]["re"].get<double>() - 4.0) <= 1e-12);
    }
    const auto all = json::parse(invoke({"solve", "x^3 - 15x - 4", "--method", "all", "--format", "json"}).out);
    CHECK(all["reports"].size() == 3);
    CHECK(all["max_pairwise_root_distance"].get<double>() <= 1e-10);
  }
  SUBCASE("no-polish and tol-d are passed through") {
    const std::string poly = "x^3 - 4x^2 + 5x - 2.0000001";
    CHECK(json::parse(invoke({"solve", poly, "--format", "json"}).out)["classification"] == "one_real_two_complex");
    const auto r = invoke({"solve", poly, "--tol-d", "1e-3", "--format", "json"});
    CHECK(json::parse(r.out)["classification"] == "real_with_double");
    CHECK(invoke({"solve", "x^3 - 2", "--no-polish"}).code == kExitOk);
    CHECK(invoke({"solve", "x^3 - 2", "--tol-d", "-1"}).code == kExitInputError);
  }
  SUBCASE("output file") {
    TempDir dir;
    const auto path = dir.file("report.json");
    const auto r = invoke({"solve", "x^3 - 1", "--format", "json", "--output", path});
    CHECK(r.code == kExitOk);
    CHECK(r.out.empty());
    CHECK(json::parse(read_file(path))["classification"] == "one_real_two_complex");
  }
}

TEST_CASE("compare") {
  SUBCASE("all methods agree") {
    const auto r = invoke({"compare", "x^3 - 15x - 4", "--format", "json", "--no-timing"});
    CHECK(r.code == kExitOk);
    const auto doc = json::parse(r.out);
    CHECK(doc["max_pairwise_root_distance"].get<double>() <= 1e-10);
    CHECK(doc["agree"] == true);
    CHECK(doc["agree_tol"] == 1e-8);
  }
  SUBCASE("triple root") {
    const auto r = invoke({"compare", "--coeffs", "1,0,0,0", "--format", "json"});
    CHECK(r.code == kExitOk);
    for (const auto& rep : json::parse(r.out)["reports"]) CHECK(rep["classification"] == "triple_root");
  }
  SUBCASE("exit code follows the agreement tolerance") {
    const std::string poly = "x^3 - 3x^2 + 3x - 1.0000001";
    CHECK(invoke({"compare", poly, "--agree-tol", "0"}).code == kExitDisagreement);
    CHECK(invoke({"compare", poly, "--agree-tol", "1e-3"}).code == kExitOk);
  }
  SUBCASE("text output") {
    const auto r = invoke({"compare", "x^3 - 6x^2 + 11x - 6", "--no-timing"});
    CHECK(r.out.find("method: classic") != std::string::npos);
    CHECK(r.out.find("method: oracle") != std::string::npos);
    CHECK(r.out.find("methods agree within 1e-08") != std::string::npos);
  }
}

TEST_CASE("batch") {
  TempDir dir;
  SUBCASE("worked examples") {
    const auto in = dir.write("in.jsonl",
                              "{\"id\": \"ex1\", \"poly\": \"x^3 - 6x^2 + 11x - 6\"}\n"
                              "{\"id\": \"ex2\", \"coeffs\": [1, 0, -15, -4]}\n"
                              "\n"
                              "{\"id\": \"ex3\", \"poly\": \"x^3 - 5x^2 + 9x - 9\"}\n");
    const auto r = invoke({"batch", "--input", in, "--no-timing"});
    REQUIRE(r.code == kExitOk);
    const auto lines = json_lines(r.out);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0]["id"] == "ex1");
    CHECK(lines[1]["id"] == "ex2");
    CHECK(lines[2]["id"] == "ex3");
    CHECK(lines[2]["classification"] == "one_real_two_complex");
    const auto& counts = lines[3]["summary"]["classification_counts"];
    CHECK(counts["three_real_distinct"] == 2);
    CHECK(counts["one_real_two_complex"] == 1);
    CHECK(lines[3]["summary"]["max_residual"].get<double>() <= 1e-10);
  }
  SUBCASE("empty file") {
    const auto r = invoke({"batch", "--input", dir.write("empty.jsonl", "")});
    CHECK(r.code == kExitOk);
    const auto lines = json_lines(r.out);
    REQUIRE(lines.size() == 1);
    CHECK(lines[0]["summary"]["lines"] == 0);
    for (const auto& [tag, n] : lines[0]["summary"]["classification_counts"].items()) CHECK(n == 0);
  }
  SUBCASE("per-line errors do not stop the batch") {
    const auto in = dir.write("mixed.jsonl",
                              "{\"id\": \"a\", \"poly\": \"x^5\"}\n"
                              "{\"id\": \"b\", \"poly\": \"x^3 - 1\"}\n"
                              "{\"id\": \"c\", \"poly\": \"x^2 - 1\"}\n"
                              "{\"id\": \"d\", \"coeffs\": [1, \"two\", 3]}\n"
                              "{\"id\": \"e\"}\n");
    const auto r = invoke({"batch", "--input", in});
    CHECK(r.code == kExitOk);
    const auto lines = json_lines(r.out);
    REQUIRE(lines.size() == 6);
    CHECK(lines[0]["error"]["kind"] == "DegreeTooHigh");
    CHECK(lines[0]["error"]["position"] == 2);
    CHECK(lines[1]["classification"] == "one_real_two_complex");
    CHECK(lines[2]["error"]["kind"] == "DegreeGate");
    CHECK(lines[3]["error"]["kind"] == "MalformedNumber");
    CHECK(lines[3]["error"]["position"] == 1);
    CHECK(lines[4]["error"]["kind"] == "InvalidLine");
    CHECK(lines[5]["summary"]["errors"] == 4);
  }
  SUBCASE("malformed lines are reported and fail the run") {
    const auto in = dir.write("bad.jsonl", "{\"poly\": \"x^3\"}\nnot json\n[1, 2]\n{\"poly\": \"x^3 - 8\"}\n");
    const auto r = invoke({"batch", "--input", in});
    CHECK(r.code == kExitInputError);
    const auto lines = json_lines(r.out);
    REQUIRE(lines.size() == 5);
    CHECK(lines[1]["error"]["kind"] == "MalformedLine");
    CHECK(lines[1]["line"] == 2);
    CHECK(lines[2]["error"]["kind"] == "MalformedLine");
    CHECK(lines[3]["classification"] == "one_real_two_complex");
  }
  SUBCASE("missing input file") {
    CHECK(invoke({"batch", "--input", dir.file("nope.jsonl")}).code == kExitInputError);
    CHECK(invoke({"batch"}).code == kExitInputError);
  }
  SUBCASE("parallel runs preserve order and bytes") {
    std::string content;
    for (int i = 0; i < 500; ++i) {
      content += "{\"id\": \"" + std::to_string(i) + "\", \"coeffs\": [" + std::to_string(1 + i % 7) + ", " +
                 std::to_string(i % 13 - 6) + ", " + std::to_string(i % 5 - 2) + ", " + std::to_string(i - 250) +
                 "]}\n";
    }
    const auto in = dir.write("many.jsonl", content);
    const auto serial = invoke({"batch", "--input", in, "--no-timing", "--method", "all"});
    const auto parallel = invoke({"batch", "--input", in, "--no-timing", "--method", "all", "--jobs", "8"});
    REQUIRE(serial.code == kExitOk);
    CHECK(parallel.out == serial.out);
    const auto lines = json_lines(parallel.out);
    for (int i = 0; i < 500; ++i) CHECK(lines[static_cast<std::size_t>(i)]["id"] == std::to_string(i));
  }
  SUBCASE("output file") {
    const auto in = dir.write("one.jsonl", "{\"poly\": \"x^3 - 1\"}\n");
    const auto out = dir.file("out.jsonl");
    const auto r = invoke({"batch", "--input", in, "--output", out});
    CHECK(r.code == kExitOk);
    CHECK(json_lines(read_file(out)).size() == 2);
  }
}
