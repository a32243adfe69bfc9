#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "doctest.h"
#include "json.hpp"
#include "nbcrw.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "nbcrw");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = nbcrw::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempFile {
 public:
  explicit TempFile(const std::string& text) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("nbcrw_cli_test_" + std::to_string(counter++) + ".txt");
    std::ofstream(path_) << text;
  }
  ~TempFile() { std::filesystem::remove(path_); }
  std::string str() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

std::string rose2_text() {
  std::ostringstream s;
  nbcrw::write_edge_list(s, nbcrw::make_rose({2, 4}), {});
  return s.str();
}

}  // namespace

TEST_CASE("cli centrality") {
  const TempFile rose(rose2_text());
  const auto r = cli({"centrality", rose.str()});
  REQUIRE(r.code == 0);
  const auto doc = json::parse(r.out);
  CHECK(doc["kappa"].get<double>() == doctest::Approx(1.3160740129524924).epsilon(1e-9));
  CHECK(doc["manifest"]["command"] == "centrality");
  CHECK(doc["manifest"]["inputs"][0]["sha256"].get<std::string>().size() == 64);
  CHECK_FALSE(doc["manifest"].contains("timing_ms"));

  const TempFile k4("0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
  const auto d4 = json::parse(cli({"centrality", k4.str()}).out);
  CHECK(d4["kappa"].get<double>() == doctest::Approx(2.0));
  for (const auto& v : d4["x"]) CHECK(v.get<double>() == doctest::Approx(d4["x"][0].get<double>()));
}

TEST_CASE("cli error taxonomy") {
  const TempFile p3("0 1\n1 2\n");
  const auto r = cli({"centrality", p3.str()});
  CHECK(r.code == 2);
  CHECK(json::parse(r.err)["error"] == "tree_graph");

  const TempFile split("0 1\n1 2\n2 0\n3 4\n4 5\n5 3\n");
  CHECK(cli({"centrality", split.str()}).code == 3);

  const TempFile loop("0 0\n");
  const auto bad = cli({"centrality", loop.str()});
  CHECK(bad.code != 0);
  CHECK(json::parse(bad.err).contains("error"));

  const TempFile garbage("0 x\n");
  CHECK(cli({"centrality", garbage.str()}).code == 1);

  CHECK(cli({"centrality", "/nonexistent/graph.txt"}).code == 6);
  CHECK(cli({"no-such-command"}).code == 6);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("cli stationary and hitting on the rose") {
  const TempFile rose(rose2_text());
  const auto st = json::parse(cli({"stationary", rose.str(), "--check"}).out);
  for (const auto& w : st["walks"]) {
    CHECK(w["check"]["linear_solve_gap"].get<double>() <= 1e-9);
    CHECK(w["check"]["detailed_balance"].get<double>() <= 1e-9);
    if (w["kind"] == "nbcrw") {
      CHECK(w["pi"][0].get<double>() == doctest::Approx(0.267949).epsilon(1e-6));
    }
  }

  const auto hub = json::parse(cli({"hitting", rose.str(), "--walk", "turw"}).out);
  CHECK(hub["walks"][0]["hub"]["t_hub"].get<double>() == doctest::Approx(10.0 / 3.0));

  const auto both =
      json::parse(cli({"hitting", rose.str(), "--walk", "nbcrw", "--method", "both"}).out);
  CHECK(both["walks"][0]["linear_solve"]["max_abs_gap"].get<double>() <= 1e-8);

  const auto one = json::parse(cli({"hitting", rose.str(), "--target", "3"}).out);
  CHECK(one["walks"][0]["nodes"][0]["node"] == 3);
}

TEST_CASE("cli verbatim prefactor flag only applies to nbcrw") {
  const TempFile rose(rose2_text());
  const auto r = cli({"hitting", rose.str(), "--walk", "merw", "--verbatim-eq26"});
  CHECK(r.code == 6);
}

TEST_CASE("cli rose oracle, scaling and compare") {
  const auto o = json::parse(cli({"rose-oracle", "5"}).out);
  CHECK(o["walks"]["nbcrw"]["t_hub"].get<double>() == doctest::Approx(38.0 / 15.0));
  CHECK(o["edge_count"] == 20);

  const auto s = cli({"scaling", "--kind", "turw", "--m-range", "10:20", "--format", "csv"});
  REQUIRE(s.code == 0);
  CHECK(s.out.rfind("# manifest ", 0) == 0);
  CHECK(s.out.find("# slope turw ") != std::string::npos);
  CHECK(cli({"scaling", "--m-range", "20:10"}).code == 6);

  const TempFile rose(rose2_text());
  const auto c = json::parse(cli({"compare", rose.str()}).out);
  const auto oracle = nbcrw::rose4_oracle(2);
  const auto& row = c["rows"][0];
  CHECK(row["size"] == 7);
  CHECK(row["t_hub_turw"].get<double>() == doctest::Approx(oracle.turw.t_hub));
  CHECK(row["t_hub_nbcrw"].get<double>() == doctest::Approx(oracle.nbcrw.t_hub));
  CHECK(row["t_hub_merw"].get<double>() == doctest::Approx(oracle.merw.t_hub));
  CHECK(row["t_global_turw"].get<double>() == doctest::Approx(oracle.turw.t_global));
  CHECK(row["t_global_nbcrw"].get<double>() == doctest::Approx(oracle.nbcrw.t_global));
  CHECK(row["t_global_merw"].get<double>() == doctest::Approx(oracle.merw.t_global));
}

TEST_CASE("cli output is reproducible") {
  const auto a = cli({"generate", "ba", "--n", "100", "--m-attach", "2", "--seed", "1"});
  const auto b = cli({"generate", "ba", "--n", "100", "--m-attach", "2", "--seed", "1"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("# model ba(n=100,m_attach=2,seed=1)") != std::string::npos);
  const auto g = nbcrw::parse_edge_list(a.out);
  CHECK(g.edge_count() == 197);

  const TempFile ba(a.out);
  const auto h1 = cli({"hitting", ba.str(), "--threads", "1", "--method", "linear"});
  const auto h4 = cli({"hitting", ba.str(), "--threads", "4", "--method", "linear"});
  auto strip = [](const std::string& s) {
    auto doc = json::parse(s);
    doc.erase("manifest");
    return doc.dump();
  };
  CHECK(strip(h1.out) == strip(h4.out));
}

TEST_CASE("cli simulate reports the exact value") {
  const TempFile k5("0 1\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n");
  const auto r = json::parse(cli({"simulate", k5.str(), "--walk", "turw", "--source", "0",
                                  "--target", "1", "--trials", "20000", "--threads", "3"})
                                 .out);
  CHECK(r["exact"].get<double>() == doctest::Approx(4.0));
  CHECK(std::abs(r["z_score"].get<double>()) < 4.0);
  CHECK(r["manifest"]["rng"]["algorithm"].is_string());
}

TEST_CASE("cli environment overrides") {
  const TempFile rose(rose2_text());
  setenv("NBCRW_FORMAT", "csv", 1);
  const auto r = cli({"centrality", rose.str()});
  unsetenv("NBCRW_FORMAT");
  CHECK(r.out.rfind("# manifest ", 0) == 0);
}
