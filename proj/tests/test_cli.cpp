#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "ltl/evaluate.hpp"
#include "ltl/trace_io.hpp"

using namespace ltl;

namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "ltl_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string write_file(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> formula_lines(const std::string& text) {
  std::vector<std::string> out;
  for (const auto& l : lines(text))
    if (l.starts_with("formula := ")) out.push_back(l.substr(11));
  return out;
}

Sample load(const std::string& path) {
  std::ifstream in(path);
  return read_sample(in);
}

const std::string kPvsEmpty = ".props: p\n.positive:\n|1\n.negative:\n|0\n";
const std::string kXpFp = ".props: p\n.positive:\n0|1\n.negative:\n|0\n";

}  // namespace

TEST_CASE("learn prints the minimal formula") {
  const auto path = write_file("p.trace", kPvsEmpty);
  const Run r = run({"learn", "--input", path});
  CHECK(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() >= 3);
  CHECK(ls[0] == "formula := p");
  CHECK(ls[1] == "size := 1");
  CHECK(ls[2].starts_with("stat n=1 "));
}

TEST_CASE("learn with --count and json-lines statistics") {
  const auto path = write_file("xf.trace", kXpFp);
  const Run r = run({"learn", "--input", path, "--count", "5", "--stats", "json-lines"});
  CHECK(r.code == 0);
  auto fs_ = formula_lines(r.out);
  std::sort(fs_.begin(), fs_.end());
  CHECK(fs_ == std::vector<std::string>{"(F p)", "(X p)"});
  int records = 0;
  for (const auto& l : lines(r.out)) {
    if (!l.starts_with("{")) continue;
    const auto j = nlohmann::json::parse(l);
    CHECK(j.contains("n"));
    CHECK(j.contains("verdict"));
    CHECK(j.contains("primary_variables"));
    ++records;
  }
  CHECK(records == 2);
}

TEST_CASE("exit codes") {
  const auto xf = write_file("xf.trace", kXpFp);
  const Run capped = run({"learn", "--input", xf, "--max-size", "1"});
  CHECK(capped.code == 2);
  CHECK(capped.err.find("budget") != std::string::npos);

  CHECK(run({"learn", "--input", "/nonexistent.trace"}).code == 1);
  CHECK(run({"learn"}).code == 1);
  CHECK(run({}).code == 1);
  CHECK(run({"learn", "--input", xf, "--strategy", "gamma"}).code == 1);
  CHECK(run({"learn", "--input", xf, "--ops", "W"}).code == 1);
  CHECK(run({"learn", "--input", xf, "--solver", "minisat"}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);

  const auto bad = write_file("bad.trace", ".props: p\n.positive:\n1|\n");
  const Run parse_error = run({"learn", "--input", bad});
  CHECK(parse_error.code == 1);
  CHECK(parse_error.err.find("line 3") != std::string::npos);

  const auto contra = write_file("contra.trace", ".props: p\n.positive:\n|1\n.negative:\n1|1\n");
  CHECK(run({"learn", "--input", contra}).code == 1);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("learn-dt and --mode dt") {
  const auto path = scratch() / "g.trace";
  REQUIRE(run({"gen", "--pattern", "2", "--size", "40", "--seed", "4", "--output", path.string()}).code == 0);
  const Sample s = load(path.string());
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"learn-dt", "--input", path.string(), "--seed", "3"},
           {"learn", "--mode", "dt", "--input", path.string(), "--seed", "3"},
           {"learn-dt", "--input", path.string(), "--strategy", "beta", "--subset-size", "2"}}) {
    const Run r = run(args);
    REQUIRE(r.code == 0);
    const auto f = formula_lines(r.out);
    REQUIRE(f.size() == 1);
    CHECK(is_consistent(parse(f[0]), s));
    CHECK(r.out.find("tree:\n") != std::string::npos);
    CHECK(r.out.find("inner-nodes := ") != std::string::npos);
    CHECK(r.out.find("primitive[0] := ") != std::string::npos);
  }
}

TEST_CASE("output is reproducible") {
  const auto path = scratch() / "r.trace";
  REQUIRE(run({"gen", "--pattern", "5", "--size", "40", "--seed", "2", "--output", path.string()}).code == 0);
  auto strip = [](const std::string& text) {
    std::string out;
    for (const auto& l : lines(text)) {
      const auto cut = l.find(" seconds=");
      out += (cut == std::string::npos ? l : l.substr(0, cut)) + "\n";
    }
    return out;
  };
  const std::vector<std::string> args = {"learn-dt", "--input", path.string(), "--seed", "8"};
  CHECK(strip(run(args).out) == strip(run(args).out));
  std::ifstream a(path);
  const std::string first((std::istreambuf_iterator<char>(a)), {});
  REQUIRE(run({"gen", "--pattern", "5", "--size", "40", "--seed", "2", "--output", path.string()}).code == 0);
  std::ifstream b(path);
  CHECK(first == std::string((std::istreambuf_iterator<char>(b)), {}));
}

TEST_CASE("eval") {
  const auto path = write_file("e.trace", ".props: p0\n.positive:\n|0\n0|0;1\n.negative:\n1|0\n");
  const Run r = run({"eval", "--formula", "G (! p0)", "--input", path});
  CHECK(r.code == 0);
  CHECK(r.out == "true\nfalse\nfalse\n");
  CHECK(run({"eval", "--formula", "G (! q)", "--input", path}).code == 1);
  CHECK(run({"eval", "--formula", "G (", "--input", path}).code == 1);
}

TEST_CASE("export-cnf") {
  const auto path = write_file("xf.trace", kXpFp);
  const Run r = run({"export-cnf", "--input", path, "--size", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("p cnf ") != std::string::npos);
  CHECK(r.out.find("x[2,X]") != std::string::npos);
  const auto out = scratch() / "xf.cnf";
  CHECK(run({"export-cnf", "--input", path, "--size", "1", "--output", out.string()}).code == 0);
  CHECK(fs::file_size(out) > 0);
}

TEST_CASE("gen suite writes a manifest") {
  const fs::path dir = scratch() / "suite";
  fs::remove_all(dir);
  const Run r = run({"gen", "--suite", "--sizes", "10,12", "--seeds", "1", "--length", "6", "--out-dir", dir.string()});
  CHECK(r.code == 0);
  const auto manifest = lines([&] {
    std::ifstream in(dir / "manifest.txt");
    return std::string((std::istreambuf_iterator<char>(in)), {});
  }());
  CHECK(manifest.size() == 18);
  for (const auto& l : manifest) {
    const auto file = l.substr(l.rfind('\t') + 1);
    CHECK(fs::exists(file));
  }
  CHECK(run({"gen", "--pattern", "10"}).code == 1);
}

TEST_CASE("external solver through the CLI") {
  const auto path = write_file("xf.trace", kXpFp);
  const Run r = run({"learn", "--input", path, "--solver", std::string("dimacs:") + LTL_SAT_TOOL});
  CHECK(r.code == 0);
  CHECK(lines(r.out).at(1) == "size := 2");
}

TEST_CASE("printed formulas re-parse and are consistent") {
  const auto path = scratch() / "c.trace";
  for (const std::string pattern : {"1", "3", "8"}) {
    REQUIRE(run({"gen", "--pattern", pattern, "--size", "30", "--output", path.string()}).code == 0);
    const Sample s = load(path.string());
    const Run r = run({"learn", "--input", path.string()});
    REQUIRE(r.code == 0);
    for (const auto& f : formula_lines(r.out)) CHECK(is_consistent(parse(f), s));
  }
}
