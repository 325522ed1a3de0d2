#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "extomo/cli.hpp"
#include "extomo/config.hpp"
#include "extomo/report.hpp"

using namespace extomo;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("extomo_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "extomo");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Tolerance, Kinds) {
  EXPECT_TRUE((Tolerance{"le", 1}).check(1));
  EXPECT_FALSE((Tolerance{"le", 1}).check(1.0000001));
  EXPECT_TRUE((Tolerance{"ge", 2}).check(3));
  EXPECT_TRUE((Tolerance{"abs_le", 0.1, 4}).check(4.05));
  EXPECT_FALSE((Tolerance{"rel_le", 0.01, 100}).check(98));
  EXPECT_FALSE((Tolerance{"le", 1}).check(NAN));
  EXPECT_THROW((Tolerance{"near", 1}).check(0), InvalidArgument);
}

TEST(Report, EvaluateAndFirstFailure) {
  ExperimentReport r;
  r.metric("a", 0.5);
  r.require("a", {"le", 1});
  EXPECT_TRUE(r.evaluate());
  r.require("missing", {"le", 1});
  EXPECT_FALSE(r.evaluate());
  EXPECT_NE(r.first_failure().find("missing"), std::string::npos);
}

TEST(Report, JsonRoundTripIsExact) {
  ExperimentReport r;
  r.name = "x";
  r.seed = 12345678901234ull;
  r.metric("third", 1.0 / 3);
  r.metric("inf", INFINITY);
  r.param("p", 0.1);
  r.flags.push_back("note");
  r.sweeps["s"] = GrowthFit::fit("R", {16, 32, 64}, "v", {0.1, 0.7 / 3, std::sqrt(2.0)}, "log", "id");
  r.require("third", {"rel_le", 1e-3, 1.0 / 3});
  r.evaluate();
  ExperimentReport b = ExperimentReport::from_json(json::parse(r.to_json().dump()));
  EXPECT_EQ(b.name, "x");
  EXPECT_EQ(b.seed, r.seed);
  EXPECT_EQ(b.metrics.at("third"), 1.0 / 3);
  EXPECT_TRUE(std::isinf(b.metrics.at("inf")));
  EXPECT_EQ(b.sweeps.at("s").y_raw, r.sweeps.at("s").y_raw);
  EXPECT_EQ(b.sweeps.at("s").slope, r.sweeps.at("s").slope);
  EXPECT_EQ(b.pass, r.pass);
  EXPECT_EQ(b.flags, r.flags);
}

TEST(GrowthFit, ExactLineAndBackTransform) {
  GrowthFit f = GrowthFit::fit("R", {2, 4, 8, 16}, "v", {3, 6, 12, 24}, "log", "log");
  EXPECT_NEAR(f.slope, 1.0, 1e-14);
  EXPECT_NEAR(f.r_squared, 1.0, 1e-14);
  EXPECT_NEAR(f.fit_value(2), 12.0, 1e-12);
  GrowthFit g = GrowthFit::fit("d", {0.1, 0.01, 0.001}, "v", {1, 2, 3}, "neglog", "id");
  EXPECT_NEAR(g.slope, 1 / std::log(10.0), 1e-12);
  EXPECT_THROW(GrowthFit::fit("x", {1, 2}, "y", {1}), InvalidArgument);
}

TEST(Config, TypedKeysAndFiles) {
  RunConfig c("demo", {{"n", KeyType::integer, "3", "dim"},
                       {"eps", KeyType::real, "0.5", "eps"},
                       {"list", KeyType::reals, "1,2", "list"},
                       {"mode", KeyType::text, "a", "mode", {"a", "b"}},
                       {"on", KeyType::boolean, "false", "flag"},
                       {"seed", KeyType::integer, "1", "seed"}});
  EXPECT_EQ(c.integer("n"), 3);
  c.load_text("experiment = demo\n# comment\nn = 7\nlist = 1, inf\nmode=b\ntol.err = 1e-3\n");
  EXPECT_EQ(c.integer("n"), 7);
  EXPECT_TRUE(std::isinf(c.reals("list")[1]));
  EXPECT_EQ(c.text("mode"), "b");
  EXPECT_EQ(c.tolerance_overrides.at("err"), 1e-3);
  EXPECT_THROW(c.set("nope", "1"), InvalidArgument);
  EXPECT_THROW(c.set("n", "2.5"), InvalidArgument);
  EXPECT_THROW(c.set("mode", "c"), InvalidArgument);
  EXPECT_THROW(c.set("on", "maybe"), InvalidArgument);
  EXPECT_THROW(c.load_text("experiment = other\n"), InvalidArgument);
  EXPECT_THROW(c.load_text("unknown_key = 1\n"), InvalidArgument);
  EXPECT_THROW(c.load_text("just text\n"), InvalidArgument);
  EXPECT_NE(c.echo().find("n=7"), std::string::npos);
  EXPECT_THROW(parse_vector("1,2,3,4"), InvalidArgument);
}

TEST(Cli, RegistryCoversCommands) {
  std::set<std::string> cmds;
  for (const auto& e : experiment_registry()) cmds.insert(e.command);
  for (const char* c : {"verify", "sweep", "knapp", "tubes", "extremize", "transform"}) EXPECT_TRUE(cmds.count(c)) << c;
  EXPECT_EQ(find_experiment("rotcurv").command, "verify");
  EXPECT_THROW(find_experiment("nope"), InvalidArgument);
}

TEST(Cli, PlotCsvRoundTripIsBitExact) {
  GrowthFit f = GrowthFit::fit("R", {16, 32.5, 1e-300, 7.0 / 3}, "value", {0.1, 1.0 / 3, 2e300, -5e-17});
  fs::path d = scratch("plot");
  std::string path = (d / "s.csv").string();
  write_atomic(path, plot_csv(f));
  auto rows = read_plot_csv(path);
  ASSERT_EQ(rows.size(), 4u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].abscissa, f.x_raw[i]);
    EXPECT_EQ(rows[i].ordinate, f.y_raw[i]);
    EXPECT_EQ(rows[i].fit_value, f.fit_value(i));
  }
  EXPECT_EQ(slurp(path).substr(0, 21), "R,value,fit_value\n16,");
}

TEST(Cli, PlotDataWithoutSweepIsMissingData) {
  fs::path d = scratch("nosweep");
  ExperimentReport r;
  r.name = "x";
  write_atomic((d / "report.json").string(), r.to_json().dump());
  try {
    emit_plot_data((d / "report.json").string(), d.string());
    FAIL() << "expected missing-data";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "missing-data");
  }
}

TEST(Cli, RunWritesDirectoryAndExitCodes) {
  fs::path d = scratch("run");
  EXPECT_EQ(cli({"verify", "rotcurv", "--out", d.string()}), 0);
  for (const char* f : {"config.txt", "version.txt", "summary.txt", "report.json"}) EXPECT_TRUE(fs::exists(d / f)) << f;
  json j = json::parse(slurp(d / "report.json"));
  EXPECT_TRUE(j.at("pass").get<bool>());
  EXPECT_NE(slurp(d / "config.txt").find("experiment=rotcurv"), std::string::npos);

  EXPECT_EQ(cli({"verify", "rotcurv", "--no-such-flag", "1"}), 2);
  EXPECT_EQ(cli({"verify", "rotcurv", "--out", d.string(), "--tol", "min_rotcurv=2"}), 1);
  EXPECT_EQ(cli({"verify", "rotcurv", "--out", d.string(), "--tol", "nosuch=1"}), 2);
  EXPECT_EQ(cli({"verify", "rotcurv", "--out", d.string(), "--n_samples", "x"}), 2);

  write_atomic((d / "bad.cfg").string(), "experiment = rotcurv\nbogus = 1\n");
  EXPECT_EQ(cli({"verify", "rotcurv", "--config", (d / "bad.cfg").string()}), 2);
  write_atomic((d / "good.cfg").string(), "experiment = rotcurv\neta = 0.02\n");
  EXPECT_EQ(cli({"verify", "rotcurv", "--config", (d / "good.cfg").string(), "--out", d.string()}), 0);
  EXPECT_NE(slurp(d / "config.txt").find("eta=0.02"), std::string::npos);
}

TEST(Cli, SweepReportFeedsPlotData) {
  fs::path d = scratch("tdelta");
  ASSERT_EQ(cli({"sweep", "t-delta", "--out", d.string()}), 0);
  fs::path p = d / "plots";
  fs::create_directories(p);
  EXPECT_EQ(cli({"transform", "plot-data", "--report", (d / "report.json").string(), "--out", p.string()}), 0);
  EXPECT_FALSE(fs::is_empty(p));
  ExperimentReport r = ExperimentReport::from_json(json::parse(slurp(d / "report.json")));
  ASSERT_EQ(r.sweeps.size(), 1u);
  for (const auto& entry : fs::directory_iterator(p)) {
    auto rows = read_plot_csv(entry.path().string());
    ASSERT_FALSE(rows.empty());
    const GrowthFit& f = r.sweeps.begin()->second;
    EXPECT_EQ(rows[0].ordinate, f.y_raw[0]);
  }
  EXPECT_EQ(cli({"transform", "plot-data", "--report", (d / "config.txt").string(), "--out", p.string()}), 2);
}
