// Runs the acceptance criteria through the experiment registry and prints one
// PASS/FAIL line per criterion. Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "extomo/cli.hpp"

using namespace extomo;
using Clock = std::chrono::steady_clock;

namespace {

using Overrides = std::vector<std::pair<std::string, std::string>>;

struct Case {
  ExperimentReport report;
  double seconds = 0;
  std::string error;
};

Case run(const std::string& name, const Overrides& set = {}) {
  Case c;
  const ExperimentEntry& e = find_experiment(name);
  RunConfig cfg(name, e.keys);
  auto t0 = Clock::now();
  try {
    for (const auto& [k, v] : set) cfg.set(k, v);
    Artifacts extra;
    c.report = e.run(cfg, extra);
    c.report.evaluate();
  } catch (const std::exception& ex) {
    c.error = ex.what();
  }
  c.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  std::string label = name;
  for (const auto& [k, v] : set) label += " " + k + "=" + v;
  std::printf("  %-70s %s %.1fs\n", label.c_str(),
              !c.error.empty() ? ("error: " + c.error).c_str() : (c.report.pass ? "ok" : c.report.first_failure().c_str()),
              c.seconds);
  std::fflush(stdout);
  return c;
}

bool ok(const Case& c) { return c.error.empty() && c.report.pass; }

double metric(const Case& c, const std::string& k) {
  auto it = c.report.metrics.find(k);
  return it == c.report.metrics.end() ? NAN : it->second;
}

bool has_flag(const Case& c, const std::string& needle) {
  return std::any_of(c.report.flags.begin(), c.report.flags.end(),
                     [&](const std::string& f) { return f.find(needle) != std::string::npos; });
}

int failures = 0;

void verdict(int id, const std::string& what, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::printf("criterion %2d %s: %s (%s)\n", id, pass ? "PASS" : "FAIL", what.c_str(), detail.c_str());
  std::fflush(stdout);
}

std::string num(double x) {
  char b[64];
  std::snprintf(b, sizeof b, "%.6g", x);
  return b;
}

}  // namespace

int main() {
  auto start = Clock::now();

  {
    bool pass = true;
    double worst = 0, slowest = 0;
    for (const char* preset : {"constant", "cap", "random"}) {
      for (bool doubled : {false, true}) {
        Overrides o{{"preset", preset}};
        if (doubled) o.insert(o.end(), {{"doubled", "true"}, {"tolerance", "0.005"}});
        Case c = run("xray-identity", o);
        pass = pass && ok(c) && c.seconds <= 120;
        worst = std::max(worst, metric(c, "rel_err"));
        slowest = std::max(slowest, c.seconds);
      }
    }
    verdict(1, "X-ray identity, n = 3", pass, "max rel_err " + num(worst) + ", slowest " + num(slowest) + "s");
  }

  {
    bool pass = true;
    double worst = 0;
    for (const char* n : {"2", "3"}) {
      Case c = run("radon-identity", {{"n", n}});
      pass = pass && ok(c);
      worst = std::max({worst, metric(c, "rel_err"), metric(c, "spread")});
    }
    verdict(2, "Radon identity, n = 2, 3", pass, "max rel_err/spread " + num(worst));
  }

  {
    Case c = run("sharp-constant");
    bool flagged = has_flag(c, "2 pi^2");
    verdict(3, "sharp constant 4 pi^2 by two paths", ok(c) && flagged,
            "direct " + num(metric(c, "direct")) + ", slice " + num(metric(c, "slice")) +
                (flagged ? ", 2 pi^2 flagged" : ", 2 pi^2 not flagged"));
  }

  {
    Case c = run("t-delta");
    GrowthFit f;
    if (!c.report.sweeps.empty()) f = c.report.sweeps.begin()->second;
    verdict(4, "T_delta log law", ok(c), "slope " + num(f.slope) + ", r^2 " + num(f.r_squared));
  }

  {
    Case a = run("radon-growth");
    Case b = run("radon-growth", {{"family", "knapp"}, {"p", "2"}, {"q", "inf"}, {"probe", "true"}});
    verdict(5, "Radon growth and Knapp probe", ok(a) && ok(b),
            "band " + num(metric(a, "band")) + ", probe slope " + num(metric(b, "power_slope")));
  }

  {
    Case c = run("isometry");
    verdict(6, "isometry constancy", ok(c), "cv " + num(metric(c, "cv")));
  }

  {
    Case c = run("bilinear");
    verdict(7, "BA_t generic vs closed form", ok(c), "max_diff " + num(metric(c, "max_diff")));
  }

  {
    Case c = run("tubes");
    verdict(8, "tube wave packets", ok(c),
            "c_min " + num(metric(c, "c_min")) + ", khintchine z " + num(metric(c, "khintchine_z")));
  }

  {
    Case c = run("weighted");
    verdict(9, "weighted constants and the q = 3 probe", ok(c),
            "max constant " + num(metric(c, "max_constant")) + ", doubling " + num(metric(c, "max_doubling_ratio")) +
                ", q3 slope " + num(metric(c, "q3_power_slope")));
  }

  {
    Case st = run("power-weight");
    Case kn = run("power-weight", {{"preset", "knapp"},
                                   {"q", "2.6666666666666667"},
                                   {"L_list", "64,128,256,512"},
                                   {"h", "0.5"}});
    Case lx = run("lemma-x", {{"q", "1"}});
    verdict(10, "power-weight boxes and the lemma-x q = 1 identity", ok(st) && ok(kn) && ok(lx),
            "last_change " + num(metric(st, "last_change")) + " / " + num(metric(kn, "last_change")) +
                ", equality rel_err " + num(metric(lx, "equality_rel_err")));
  }

  {
    Case c = run("rotcurv");
    verdict(11, "rotational curvature of Phi_0", ok(c),
            "origin " + num(metric(c, "rotcurv_origin")) + ", min " + num(metric(c, "min_rotcurv")));
  }

  double total = std::chrono::duration<double>(Clock::now() - start).count();
  verdict(12, "suite wall time", total <= 1800, num(total) + "s of 1800s");

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
