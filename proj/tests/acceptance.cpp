// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <variant>

#include "ifcdms/classify.hpp"
#include "ifcdms/cli.hpp"
#include "ifcdms/gaussian.hpp"
#include "ifcdms/info.hpp"
#include "ifcdms/io.hpp"
#include "ifcdms/regions.hpp"
#include "ifcdms/testbed.hpp"

using namespace ifcdms;
using ld = long double;
namespace fs = std::filesystem;

namespace {

const GaussianParams kRef{6.0, 6.0, std::sqrt(0.3), std::sqrt(0.3)};

ld hl(ld x) { return 0.5L * std::log2(x); }

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* f, double a = 0, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

struct Criterion {
  int id;
  std::string title;
  double budget_s;
  std::function<Outcome()> body;
};

// Shared between the type-C and implication-chain criteria.
std::vector<IFCChannel> g_feasible;

Outcome capacity_corners() {
  const auto c1 = capacity_t1_corner(kRef, 1.0);
  const auto c0 = capacity_t1_corner(kRef, 0.0);
  const ld e1 = std::fabs(c1.r1 - hl(7)), e2 = std::fabs(c1.r2 - hl(8.8L / 2.8L));
  const ld e3 = std::fabs(c0.r2 - hl(1 + 1.8L + 2 * std::sqrt(0.3L) * 6 + 6));
  const double worst = static_cast<double>(std::max({e1, e2, e3}));
  return {worst <= 1e-9, fmt("alpha=1 (%.9f, %.9f), alpha=0 r2 %.9f", c1.r1, c1.r2, c0.r2) + fmt(", max error %.2e", worst)};
}

Outcome kramer_sum() {
  const double s = to_region(kramer_polytope(kRef)).max_sum_rate();
  const double err = static_cast<double>(std::fabs(s - hl(22)));
  return {err <= 1e-9, fmt("sum rate %.12f, error %.2e", s, err)};
}

Outcome dpc_identity() {
  double worst = 0;
  for (int k = 0; k <= 1000; ++k) {
    const double al = k / 1000.0;
    const auto a = capacity_t1_corner(kRef, al), b = dpc12_corner(kRef, al);
    worst = std::max({worst, std::abs(a.r1 - b.r1), std::abs(a.r2 - b.r2)});
  }
  return {worst <= 1e-12, fmt("max |t1 - dpc12| = %.2e over 1001 alphas", worst)};
}

Outcome dpc_union() {
  auto check = [](const GaussianParams& g) {
    return subset_check(convex_downset_hull(sweep(g, GaussCurve::dpc12)),
                        convex_downset_hull(sweep(g, GaussCurve::dpc21)), 1e-6);
  };
  const auto ref = check(kRef);
  SplitMix64 rng(2024);
  int failures = 0;
  double worst = ref.max_violation;
  GaussianParams worst_g = kRef;
  for (int t = 0; t < 50; ++t) {
    const GaussianParams g{20 * (1 - rng.uniform()), 20 * (1 - rng.uniform()), 2 * rng.uniform() - 1,
                           2 * rng.uniform() - 1};
    const auto rep = check(g);
    if (!rep.ok) ++failures;
    if (rep.max_violation > worst) {
      worst = rep.max_violation;
      worst_g = g;
    }
  }
  std::string d = std::string("reference set ") + (ref.ok ? "ok" : "violated") + fmt(", %g of 50 draws violated", failures);
  d += fmt(", worst gap %.4f bit at P1=%.3f P2=%.3f", worst, worst_g.p1, worst_g.p2) + fmt(" b=%.3f", worst_g.b);
  return {ref.ok && failures == 0, d};
}

Outcome t1_beyond_kramer() {
  const Polytope k = kramer_polytope(kRef);
  double best = -INFINITY;
  RatePair at;
  for (const auto& p : sweep(kRef, GaussCurve::t1).points)
    if (const double v = violation(k, p.rate); v > best) {
      best = v;
      at = p.rate;
    }
  // independent margin over the four constraints at the reference parameters
  const ld single = hl(7), sum = hl(22);
  const ld margin = std::max({at.r1 - single, at.r2 - single, at.r1 + at.r2 - sum});
  return {best > 0.01 && std::fabs(margin - best) < 1e-12,
          fmt("margin %.4f bit at (%.4f, %.4f)", best, at.r1, at.r2)};
}

Outcome kramer_crossings() {
  const auto xs = boundary_crossings(to_region(kramer_polytope(kRef)), intersection_region(kRef), 10000);
  std::string d = fmt("%g crossing intervals", static_cast<double>(xs.size()));
  for (const auto& x : xs) d += fmt(" near (%.4f, %.4f)", x.p_hi.r1, x.p_hi.r2);
  return {xs.size() >= 2, d};
}

Outcome type_c_exactness() {
  SplitMix64 rng(7);
  int feasible = 0, infeasible = 0;
  double worst = 0;
  g_feasible.clear();
  for (int t = 0; t < 50; ++t) {
    const std::size_t nx = 2 + rng.below(2), ny1 = 2 + rng.below(2), ny2 = 2 + rng.below(2);
    const auto cc = composed_degraded_channel(rng, nx, nx, ny1, ny2);
    const auto v = check_type_c(cc.channel, Direction::one_to_two);
    if (const auto* f = std::get_if<Feasible>(&v); f && f->residual <= 1e-9) {
      ++feasible;
      worst = std::max(worst, f->residual);
      g_feasible.push_back(cc.channel);
    }
  }
  for (int t = 0; t < 20; ++t)
    if (std::holds_alternative<Infeasible>(check_type_c(anti_degraded_channel(rng, 2 + rng.below(2)), Direction::one_to_two)))
      ++infeasible;
  return {feasible == 50 && infeasible == 20,
          fmt("%g/50 Feasible (max residual %.1e), %g/20 Infeasible", feasible, worst, infeasible)};
}

Outcome implication_chain() {
  int holds = 0;
  for (const auto& ch : g_feasible) {
    const auto b = check_type_b(ch, Direction::one_to_two, default_u_card(ch));
    const auto a = check_type_a(ch, Direction::one_to_two);
    if (std::holds_alternative<HoldsOnTestedSet>(b) && std::holds_alternative<HoldsOnTestedSet>(a)) ++holds;
  }
  const auto n = static_cast<double>(g_feasible.size());
  return {n == 50 && holds == 50, fmt("%g/%g channels hold for type B and type A", holds, n)};
}

Outcome csiszar() {
  SplitMix64 rng(9);
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + static_cast<std::size_t>(t % 3);
    const auto j = random_joint(rng, std::vector<std::size_t>(2 * n + 1, 2));
    const auto s = csiszar_sum_check(j, n);
    worst = std::max(worst, std::abs(s.lhs.bits() - s.rhs.bits()));
  }
  return {worst <= 1e-12, fmt("max |lhs - rhs| = %.2e bit over 100 joints", worst)};
}

Outcome sandwich() {
  SplitMix64 rng(10);
  int ok_rin = 0, ok_rstar = 0;
  double worst_rin = 0, worst_rstar = 0;
  for (int t = 0; t < 20; ++t) {
    const auto ch = random_channel(rng, 2, 2, 2, 2);
    const std::size_t uc = default_u_card(2, 2);
    const auto rep = verify_sandwich(ch, uc, default_v_card(uc, 2));
    worst_rin = std::max(worst_rin, rep.rin_violation);
    if (rep.rin_violation <= 1e-6) ++ok_rin;
  }
  for (int t = 0; t < 10; ++t) {
    const auto cc = composed_degraded_channel(rng, 2, 2, 2, 2);
    const std::size_t uc = default_u_card(2, 2);
    const auto rep = verify_sandwich(cc.channel, uc, default_v_card(uc, 2));
    worst_rstar = std::max(worst_rstar, rep.rstar_violation);
    if (rep.type_c && rep.rstar_violation <= 1e-6) ++ok_rstar;
  }
  return {ok_rin == 20 && ok_rstar == 10, fmt("R_in inside on %g/20 (worst %.1e), ", ok_rin, worst_rin) +
                                              fmt("R* inside on %g/10 (worst %.1e)", ok_rstar, worst_rstar)};
}

Outcome gamma_opt() {
  double worst_steps = 0;
  for (double al : {0.0, 0.25, 0.5, 0.75}) {
    const double want = std::sqrt((1 - al) * 36.0);
    const double step = 2 * want / 10000;
    worst_steps = std::max(worst_steps, std::abs(optimize_gamma(kRef, al, 10001) - want) / step);
  }
  return {worst_steps <= 1.0, fmt("largest offset %.3f grid steps", worst_steps)};
}

Outcome epi() {
  double worst = 0;
  for (int k = 0; k <= 1000; ++k) {
    const auto e = epi_corner_check(kRef, k / 1000.0);
    worst = std::max(worst, std::abs(e.achieved - e.lower_bound));
  }
  return {worst <= 1e-9, fmt("max |achieved - bound| = %.2e over 1001 alphas", worst)};
}

Outcome cauchy() {
  SplitMix64 rng(13);
  double worst = -INFINITY;
  for (int t = 0; t < 100; ++t) {
    const double a11 = 4 * rng.uniform() - 2, a12 = 4 * rng.uniform() - 2;
    const double a21 = 4 * rng.uniform() - 2, a22 = 4 * rng.uniform() - 2;
    const auto r = cauchy_corr_bound_check(a11 * a11 + a12 * a12, a11 * a21 + a12 * a22, a21 * a21 + a22 * a22);
    worst = std::max(worst, r.lhs - r.rhs);
  }
  return {worst <= 1e-12, fmt("max lhs - rhs = %.2e over 100 matrices", worst)};
}

std::map<int, bool> g_results;

Outcome substitution() {
  const bool ok = g_results[3] && g_results[12];
  return {ok, "Gaussian optimality is not sampled; covered by criteria 3 and 12, which " +
                  std::string(ok ? "pass" : "do not both pass")};
}

Outcome determinism() {
  const fs::path base = fs::temp_directory_path() / "ifcdms_acceptance_compare";
  fs::remove_all(base);
  const std::vector<std::string> args{"gauss-compare", "--p1", "6", "--p2", "6", "--a", "0.5477225575",
                                      "--b", "0.5477225575", "--out-dir", (base / "out").string()};
  auto snapshot = [&](std::string& stdout_text) {
    std::ostringstream out, err;
    if (run_cli(args, out, err) != 0) return std::map<std::string, std::string>{};
    stdout_text = out.str();
    std::map<std::string, std::string> files;
    for (const auto& e : fs::directory_iterator(base / "out")) files[e.path().filename().string()] = read_file(e.path().string());
    return files;
  };
  std::string s1, s2;
  const auto a = snapshot(s1);
  const auto b = snapshot(s2);
  fs::remove_all(base);
  const bool ok = !a.empty() && a == b && s1 == s2;
  return {ok, fmt("%g files and the report compared", static_cast<double>(a.size()))};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Gaussian capacity corners", 1, capacity_corners},
      {2, "Kramer sum rate", 1, kramer_sum},
      {3, "capacity corner equals DPC12 corner", 1, dpc_identity},
      {4, "DPC12 region inside DPC21 region", 5, dpc_union},
      {5, "T1 capacity region exceeds the Kramer bound", 1, t1_beyond_kramer},
      {6, "Kramer boundary crosses the T1/T2 intersection", 5, kramer_crossings},
      {7, "type C LP exactness", 10, type_c_exactness},
      {8, "type C implies type B and type A on tested sets", 60, implication_chain},
      {9, "Csiszar sum identity", 10, csiszar},
      {10, "R_in and R* inside the sampled R_o envelope", 300, sandwich},
      {11, "gamma optimization", 1, gamma_opt},
      {12, "entropy-power corner equality", 1, epi},
      {13, "correlation bound", 1, cauchy},
      {14, "Gaussian max-entropy step (property substitution)", 1, substitution},
      {15, "gauss-compare determinism", 60, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = o.passed && dt < c.budget_s;
    g_results[c.id] = pass;
    if (!pass) ++failed;
    std::printf("%s  criterion %2d  %s: %s [%.2f s, budget %g s]\n", pass ? "PASS" : "FAIL", c.id, c.title.c_str(),
                o.detail.c_str(), dt, c.budget_s);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
