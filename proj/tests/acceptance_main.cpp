// Acceptance suite: one pass/fail line per criterion, exit 0 only if all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "czlab/constructions.hpp"
#include "czlab/experiments.hpp"
#include "czlab/factorization.hpp"
#include "czlab/operators.hpp"
#include "czlab/spaces.hpp"
#include "czlab/symbols.hpp"

using namespace czlab;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;
int failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

void verdict(int criterion, const std::string& name, bool pass, const std::string& detail) {
  std::printf("%s criterion %d (%s): %s\n", pass ? "PASS" : "FAIL", criterion, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(double v) { return format_g17(v); }

// --- criterion 1: Hilbert-transform oracle ---------------------------------
void criterion_1() {
  Timer timer;
  const double h = 1e-3;
  const std::size_t n = 8001;  // window (-4.0005, 4.0005): 0 sits on a midpoint
  const double origin = -4.0 - h / 2;
  LipschitzCurve flat = flat_curve();
  std::mt19937_64 rng(424242);
  std::uniform_real_distribution<double> endpoint(-2.0, 2.0);

  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    double a = endpoint(rng), b = endpoint(rng);
    if (b < a) std::swap(a, b);
    if (b - a < 0.05) b = a + 0.05;
    // endpoints snapped to cell boundaries so the sampled indicator and the
    // closed form describe the same interval
    GridFunction probe = GridFunction::zeros(origin, h, n);
    SnappedInterval snapped = snap_to_cells(probe, Interval::from_endpoints(a, b));
    a = snapped.interval.left();
    b = snapped.interval.right();
    GridFunction f = GridFunction::indicator(origin, h, n, snapped.interval);
    GridFunction image = pv_cauchy_image(flat, f);
    for (std::size_t i = 0; i < image.size(); ++i) {
      double x = image.midpoint(i);
      if (std::min(std::abs(x - a), std::abs(x - b)) < 0.1) continue;
      cplx expect(0.0, std::log(std::abs((x - a) / (x - b))) / kPi);
      worst = std::max(worst, std::abs(image[i] - expect));
    }
  }
  double elapsed = timer.seconds();
  verdict(1, "hilbert oracle", worst <= 1e-3 && elapsed < 60.0,
          "max |pv - closed form| = " + fmt(worst) + " (tol 1e-3), " + fmt(elapsed) + "s");
}

// --- criterion 2: kernel estimates ------------------------------------------
void criterion_2() {
  Timer timer;
  Config cfg;
  ExperimentReport report = run_experiment("kernelcheck", cfg);
  bool pass = report.all_pass();
  std::string detail = "kernelcheck checks:";
  for (const auto& c : report.checks)
    if (!c.pass) detail += " FAIL " + c.name;
  double elapsed = timer.seconds();
  pass = pass && elapsed < 60.0;
  verdict(2, "kernel estimates", pass, detail + " " + fmt(elapsed) + "s");
}

// --- criterion 3: median property (2.1) -------------------------------------
void criterion_3() {
  const double h = 1.0 / 64;
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> center(1.0, 7.0), radius(0.25, 1.0);
  bool exact = true;
  for (int sym = 0; sym < 100 && exact; ++sym) {
    GridFunction b = random_step_symbol(Interval(4.0, 4.0), h, 3000 + sym, 11,
                                        Interval(4.0, 3.5), 2.0);
    for (int iv = 0; iv < 10; ++iv) {
      Interval I(center(rng), radius(rng));
      SnappedInterval s = snap_to_cells(b, I);
      CellRange r = cells_in(b, s.interval);
      if (r.empty()) continue;
      double alpha = median(b, s.interval);
      std::size_t above = 0, below = 0;
      for (std::size_t i = r.first; i < r.last; ++i) {
        if (b[i].real() > alpha) ++above;
        if (b[i].real() < alpha) ++below;
      }
      if (2 * above > r.count() || 2 * below > r.count()) exact = false;
    }
  }
  verdict(3, "median level sets", exact, "both strict level sets <= |I|/2, 100 symbols x 10 intervals");
}

// --- criterion 4: oscillation-set construction ------------------------------
void criterion_4() {
  const double h = 1.0 / 64;
  std::mt19937_64 rng(888);
  std::uniform_real_distribution<double> center(8.0, 12.0), radius(0.25, 1.0);
  bool ok = true;
  std::string why;
  for (int sym = 0; sym < 100 && ok; ++sym) {
    GridFunction b = random_step_symbol(Interval(16.0, 16.0), h, 3100 + sym, 11,
                                        Interval(10.0, 8.0), 2.0);
    Interval I(center(rng), radius(rng));  // 5I stays inside the window
    OscillationSets os = oscillation_sets(b, I);
    const Interval& snapped = os.interval;
    if (!os.degenerate) {
      if (std::abs(os.e_set.measure() - snapped.measure() / 16.0) > h + 1e-12) {
        ok = false;
        why = "measure(E)";
      }
      if (std::abs(os.f_set.measure() - os.i_tilde.measure() / 2.0) > h + 1e-12) {
        ok = false;
        why = "measure(F)";
      }
    }
    if (os.e_set.measure() * os.f_set.measure() <
        snapped.measure() * snapped.measure() / 64.0 - 1e-12) {
      ok = false;
      why = "|G| >= |I|^2/64";
    }
    for (std::size_t ei : os.e_set.cells) {
      for (std::size_t fi : os.f_set.cells) {
        double diff = b[ei].real() - b[fi].real();
        if (os.sign * diff < -1e-12) {
          ok = false;
          why = "sign constancy";
        }
        if (!os.degenerate && std::abs(diff) < os.omega - 1e-12) {
          ok = false;
          why = "oscillation domination";
        }
      }
      if (!ok) break;
    }
  }
  verdict(4, "oscillation sets", ok,
          ok ? "measure, domination and sign conclusions exact on the corpus" : "violated: " + why);
}

// --- criterion 5: annulus bounds --------------------------------------------
void criterion_5() {
  Timer timer;
  Config cfg;
  ExperimentReport report = run_experiment("lowerbound", cfg);
  bool pass = report.all_pass();
  std::string detail;
  for (const auto& c : report.checks) detail += (c.pass ? "" : " FAIL " + c.name);
  double elapsed = timer.seconds();
  pass = pass && elapsed < 300.0;
  verdict(5, "oscillation test function and annulus fits", pass,
          (detail.empty() ? "all lowerbound checks pass" : detail) + ", " + fmt(elapsed) + "s");
}

// --- criterion 6: factorization contraction ---------------------------------
void criterion_6() {
  Timer timer;
  Config cfg;
  cfg.set("experiment.n", "1024");
  cfg.set("experiment.rounds", "4");
  cfg.set("experiment.refine", "false");
  ExperimentReport report = run_experiment("factorization", cfg);
  bool pass = report.all_pass();
  std::string detail;
  for (const auto& c : report.checks)
    detail += (detail.empty() ? "" : ", ") + c.name + "=" + fmt(c.value);
  double elapsed = timer.seconds();
  pass = pass && elapsed < 600.0;
  verdict(6, "factorization contraction", pass, detail + ", " + fmt(elapsed) + "s");
}

// --- criterion 7: homogeneity bound (2.2) ------------------------------------
void criterion_7() {
  const long cells = 32;
  const double r = 1.0, h = r / cells;
  GridFunction f = GridFunction::zeros(-r - 2 * h, h, 2 * cells + 4);
  CellRange right = cells_in(f, Interval::from_endpoints(0.0, r));
  CellRange left = cells_in(f, Interval::from_endpoints(-r, 0.0));
  for (std::size_t i = right.first; i < right.last; ++i) f[i] = 1.0 / r;
  for (std::size_t i = left.first; i < left.last; ++i) f[i] = -1.0 / r;
  Atom atom = make_atom(f, Interval(0.0, r));

  bool pass = true;
  std::string detail;
  double flat_err_small = 0.0, flat_err_big = 0.0;
  for (int ci = 0; ci < 4; ++ci) {
    LipschitzCurve curve = ci == 0   ? flat_curve()
                           : ci == 1 ? sawtooth_curve(0.5, 1.0, -4200.0, 4200.0)
                           : ci == 2 ? sawtooth_curve(1.0, 1.0, -4200.0, 4200.0)
                                     : bump_curve(0.9, 2.0, 129);
    for (int n = 16; n <= 1024; n *= 2) {
      FactorPair pair = make_pair(curve, atom, n);
      double value = static_cast<double>(n) * std::abs(pair.denominator);
      if (value < 0.3) {
        pass = false;
        detail += " N|Cg|=" + fmt(value) + " at N=" + std::to_string(n) + " curve " +
                  std::to_string(ci);
      }
      if (ci == 0 && n == 16) flat_err_small = std::abs(value - 2.0 / kPi);
      if (ci == 0 && n == 1024) flat_err_big = std::abs(value - 2.0 / kPi);
    }
  }
  if (flat_err_big > 0.02 * (2.0 / kPi)) {
    pass = false;
    detail += " flat N=1024 value off by " + fmt(flat_err_big);
  }
  if (flat_err_big > flat_err_small + 1e-12) {
    pass = false;
    detail += " no convergence toward 2/pi";
  }
  verdict(7, "homogeneity bound", pass,
          pass ? "N |C_G g(x0)| >= 0.3 on all curves, flat value -> 2/pi" : detail);
}

// --- criterion 8: compactness dichotomy --------------------------------------
void criterion_8() {
  Timer timer;
  Config cfg;
  ExperimentReport report = run_experiment("compactness", cfg);
  bool pass = report.all_pass();
  std::string detail;
  for (const auto& c : report.checks)
    detail += (detail.empty() ? "" : ", ") + c.name + (c.pass ? " ok" : " FAIL");
  double elapsed = timer.seconds();
  pass = pass && elapsed < 600.0;
  verdict(8, "compactness dichotomy", pass, detail + ", " + fmt(elapsed) + "s");
}

// --- criterion 9: boundedness ratio band -------------------------------------
void criterion_9() {
  Config cfg;
  ExperimentReport report = run_experiment("boundedness", cfg);
  bool pass = report.all_pass();
  std::string detail;
  for (const auto& c : report.checks)
    detail += (detail.empty() ? "" : ", ") + c.name + "=" + fmt(c.value);
  verdict(9, "boundedness ratio band", pass, detail);
}

// --- criterion 10: determinism -----------------------------------------------
void criterion_10() {
  struct Job {
    const char* name;
    std::vector<std::pair<std::string, std::string>> sets;
  };
  std::vector<Job> jobs = {
      {"kernelcheck", {{"experiment.samples", "2000"}}},
      {"boundedness",
       {{"grid.step", "0.03125"},
        {"corpus.symbols", "heaviside random-step:3"},
        {"params.p_list", "2"},
        {"params.lambda_list", "0.5"},
        {"lattice.depth", "7"}}},
      {"compactness",
       {{"grid.equicontinuity_step", "0.0078125"},
        {"grid.equicontinuity_halfwidth", "4"},
        {"grid.tail_step", "0.0625"},
        {"grid.tail_halfwidth", "64"},
        {"grid.witness_step", "0.00390625"},
        {"grid.witness_halfwidth", "8"},
        {"experiment.family", "4"},
        {"experiment.alpha_list", "4 8 16"},
        {"experiment.count", "3"}}},
      {"factorization",
       {{"experiment.n", "64"}, {"experiment.rounds", "1"}, {"experiment.refine", "false"}}},
      {"lowerbound",
       {{"grid.step", "0.0625"},
        {"experiment.k_min", "4"},
        {"experiment.k_max", "5"},
        {"corpus.symbols", "heaviside"}}},
  };
  bool pass = true;
  std::string detail;
  for (const Job& job : jobs) {
    std::vector<std::string> dumps;
    for (int run = 0; run < 2; ++run) {
      Config cfg;
      for (const auto& [k, v] : job.sets) cfg.set(k, v);
      ExperimentReport report = run_experiment(job.name, cfg);
      std::ostringstream all;
      report.write_json(all);
      all << report.resolved_config;
      for (const auto& t : report.tables) all << t.filename << '\n' << t.content;
      dumps.push_back(all.str());
    }
    if (dumps[0] != dumps[1]) {
      pass = false;
      detail += std::string(" ") + job.name + " not byte-identical";
    }
  }
  verdict(10, "determinism", pass, pass ? "all five experiments rerun byte-identical" : detail);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
