#include "doctest.h"
#include "cli_runner.hpp"
#include "oracles.hpp"

#include <json.hpp>

#include <cmath>
#include <numbers>

using nlohmann::json;
namespace fs = std::filesystem;

TEST_CASE("inverse of the k = 2 generator") {
  const auto dir = cli::scratch("inverse");
  const auto r = cli::run("inverse --k 2 --out \"" + dir.string() + "\"", dir);
  REQUIRE(r.code == 0);
  const std::string csv = cli::slurp(dir / "inverse.csv");
  CHECK(csv.rfind("n,re,im\n1,1,0\n2,-0.25,0\n3,-0.1111111111111111,0\n4,0,0\n", 0) == 0);
  CHECK(cli::read_rows(dir / "inverse.csv").size() == 64);
}

TEST_CASE("figure of the unit generator is the sine basis") {
  const auto dir = cli::scratch("figure_delta");
  const auto r = cli::run("figure --delta --out \"" + dir.string() + "\"", dir);
  REQUIRE(r.code == 0);
  const auto rows = cli::read_rows(dir / "figure.csv");
  REQUIRE(rows.size() == 512);
  for (const auto& row : rows) {
    REQUIRE(row.size() == 6);
    for (int n = 1; n <= 5; ++n)
      CHECK(std::abs(row[n] - std::numbers::sqrt2 * std::sin(n * std::numbers::pi * row[0])) <= 4e-15);
  }
  CHECK(fs::exists(dir / "figure.svg"));
}

TEST_CASE("figure for k = 2") {
  const auto dir = cli::scratch("figure_k2");
  const auto r = cli::run("figure --out \"" + dir.string() + "\"", dir);
  REQUIRE(r.code == 0);
  const auto rows = cli::read_rows(dir / "figure.csv");
  REQUIRE(rows.size() == 512);
  for (double v : rows[0])
    CHECK(v == 0.0);
  CHECK(rows[256][0] == 0.5);
  CHECK(std::abs(rows[256][1] - std::numbers::sqrt2 * oracle::kCatalan) <= 1e-8);
  const std::string svg = cli::slurp(dir / "figure.svg");
  CHECK(svg.rfind("<svg", 0) == 0);
  std::size_t polylines = 0;
  for (std::size_t pos = 0; (pos = svg.find("<polyline", pos)) != std::string::npos; ++pos)
    ++polylines;
  CHECK(polylines == 5);
}

TEST_CASE("gram json") {
  const auto dir = cli::scratch("gram");
  REQUIRE(cli::run("gram --delta --gram-size 8 --trunc 64 --entries --out \"" + dir.string() + "\"", dir).code == 0);
  const json j = json::parse(cli::slurp(dir / "gram.json"));
  CHECK(j["M"] == 8);
  CHECK(j["K"] == 64);
  CHECK(j["lambda_min"].get<double>() == doctest::Approx(1.0));
  CHECK(j["lambda_max"].get<double>() == doctest::Approx(1.0));
  CHECK(j.contains("cond"));
  CHECK(j.contains("tail_bound"));
  CHECK(cli::read_rows(dir / "gram_entries.csv").size() == 64);

  REQUIRE(cli::run("gram --k 2 --gram-size 4 --out \"" + dir.string() + "\"", dir).code == 0);
  const json k2 = json::parse(cli::slurp(dir / "gram.json"));
  CHECK(k2["K"] == 4 * 65536);
}

TEST_CASE("scan verdicts") {
  const auto dir = cli::scratch("scan");
  REQUIRE(cli::run("scan --k 0.6 --out \"" + dir.string() + "\"", dir).code == 0);
  const json j = json::parse(cli::slurp(dir / "scan.json"));
  CHECK(j["verdict"] == "UNBOUNDED_SUSPECTED");
  CHECK(std::abs(j["argmax"][0].get<double>() - 0.4) <= 0.05);
  CHECK(j["masked_cells"].size() >= 1);
  for (const char* field : {"region", "step", "min_abs", "max_abs", "argmin", "argmax", "thresholds"})
    CHECK(j.contains(field));

  REQUIRE(cli::run("scan --delta --step 0.5 --out \"" + dir.string() + "\"", dir).code == 0);
  const json d = json::parse(cli::slurp(dir / "scan.json"));
  CHECK(d["verdict"] == "BOUNDED");
  CHECK(d["min_abs"] == 1.0);
  CHECK(d["max_abs"] == 1.0);
}

TEST_CASE("expansion files") {
  const auto dir = cli::scratch("expand");
  REQUIRE(cli::run("expand --k 2 --target parabola --modes 255 --out \"" + dir.string() + "\"", dir).code == 0);
  const json j = json::parse(cli::slurp(dir / "expansion.json"));
  CHECK(j["method"] == "dst");
  CHECK(j["N"] == 255);
  CHECK(j["residual_l2"].get<double>() <= 1e-12);
  CHECK(cli::read_rows(dir / "expansion.csv").size() == 255);
  CHECK(cli::slurp(dir / "expansion.csv").rfind("n,c_re,c_im\n", 0) == 0);
}

TEST_CASE("coefficient file families") {
  const auto dir = cli::scratch("coeffs");
  {
    std::ofstream f(dir / "a.csv");
    f << "n,re,im\n1,2,0\n2,1,0\n3,0,0.5\n4,0.25,0\n";
  }
  const std::string file = "--coeffs \"" + (dir / "a.csv").string() + "\"";
  REQUIRE(cli::run("inverse " + file + " --modes 4 --out \"" + dir.string() + "\"", dir).code == 0);
  const auto rows = cli::read_rows(dir / "inverse.csv");
  REQUIRE(rows.size() == 4);
  CHECK(rows[0][1] == 0.5);
  CHECK(rows[1][1] == -0.25);

  CHECK(cli::run("check " + file + " --modes 64 --decay-k 1 --out \"" + dir.string() + "\"", dir).code != 1);
  REQUIRE(cli::run("expand " + file + " --target random --modes 64 --out \"" + dir.string() + "\"", dir).code == 0);
  const json j = json::parse(cli::slurp(dir / "expansion.json"));
  CHECK(j["normalization"][0] == 2.0);
  REQUIRE(cli::run("scan " + file + " --decay-k 1.5 --re-min 0.5 --re-max 1 --im-max 2 --step 0.25 --out \"" +
                       dir.string() + "\"",
                   dir)
              .code == 0);
}

TEST_CASE("check table") {
  const auto dir = cli::scratch("check");
  const auto d = cli::run("check --delta", dir);
  CHECK(d.code == 0);
  CHECK(d.out.find("FAIL") == std::string::npos);
  CHECK(d.out.find("15/15 checks passed") != std::string::npos);

  // k = 2 exceeds the critical-line corridor at M = 32 and 64
  const auto k2 = cli::run("check --k 2", dir);
  CHECK(k2.code == 2);
  CHECK(k2.out.find("corridor containment M=16") != std::string::npos);
  CHECK(k2.out.find("conditioning growth k=0.6") != std::string::npos);
}

TEST_CASE("exit codes") {
  const auto dir = cli::scratch("codes");
  CHECK(cli::run("", dir).code == 1);
  CHECK(cli::run("bogus", dir).code == 1);
  CHECK(cli::run("inverse --k 2 --delta", dir).code == 1);
  CHECK(cli::run("gram --gram-size 0", dir).code == 1);
  CHECK(cli::run("inverse --coeffs /nonexistent/a.csv", dir).code == 1);
  CHECK(cli::run("inverse --out /proc/riesz_unwritable", dir).code == 1);
  CHECK(cli::run("scan --re-min 0 --out \"" + dir.string() + "\"", dir).code == 1);
  CHECK(cli::run("--help", dir).code == 0);
  // the series of n^{-1.01} cannot reach the figure tolerance within its term budget
  CHECK(cli::run("figure --k 1.01 --out \"" + dir.string() + "\"", dir).code == 2);
}

TEST_CASE("outputs do not depend on the worker count") {
  const auto one = cli::scratch("workers_1");
  const auto three = cli::scratch("workers_3");
  const std::string args = " --k 0.6 --step 0.1 --im-max 20 --out ";
  const auto a = cli::run("scan" + args + "\"" + one.string() + "\"", one, "RIESZ_WORKERS=1");
  const auto b = cli::run("scan" + args + "\"" + three.string() + "\"", three, "RIESZ_WORKERS=3");
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(cli::slurp(one / "scan.json") == cli::slurp(three / "scan.json"));

  const auto g1 = cli::run("gram --k 1.2 --gram-size 16 --entries --out \"" + one.string() + "\"", one, "RIESZ_WORKERS=1");
  const auto g3 = cli::run("gram --k 1.2 --gram-size 16 --entries --out \"" + three.string() + "\"", three, "RIESZ_WORKERS=4");
  REQUIRE(g1.code == 0);
  REQUIRE(g3.code == 0);
  CHECK(cli::slurp(one / "gram.json") == cli::slurp(three / "gram.json"));
  CHECK(cli::slurp(one / "gram_entries.csv") == cli::slurp(three / "gram_entries.csv"));
}
