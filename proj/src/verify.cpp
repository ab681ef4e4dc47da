#include "ifcdms/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <variant>

#include "ifcdms/classify.hpp"
#include "ifcdms/errors.hpp"
#include "ifcdms/gaussian.hpp"
#include "ifcdms/info.hpp"
#include "ifcdms/regions.hpp"
#include "ifcdms/testbed.hpp"

namespace ifcdms {

namespace {

PropertyResult upper(std::string name, double worst, double tol, std::string detail = {}) {
  std::ostringstream d;
  d.precision(3);
  d << "max " << worst << " (tol " << tol << ")";
  if (!detail.empty()) d << "; " << detail;
  return {std::move(name), worst <= tol, worst, d.str()};
}

PropertyResult count_ok(std::string name, std::size_t good, std::size_t total) {
  return {std::move(name), good == total, static_cast<double>(total - good),
          std::to_string(good) + "/" + std::to_string(total) + " as expected"};
}

const GaussianParams kSection4{6.0, 6.0, std::sqrt(0.3), std::sqrt(0.3)};

std::vector<PropertyResult> info_suite(std::uint64_t seed) {
  std::vector<PropertyResult> out;
  SplitMix64 rng(seed, 11);

  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + static_cast<std::size_t>(t % 3);
    const auto j = random_joint(rng, std::vector<std::size_t>(2 * n + 1, 2));
    const auto s = csiszar_sum_check(j, n);
    worst = std::max(worst, std::abs(s.lhs.nats - s.rhs.nats));
  }
  out.push_back(upper("Csiszar sum identity, 100 joints, n in {1,2,3}", worst, 1e-12));

  worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto j = random_joint(rng, {2, 3, 2});
    const double lhs = conditional_mutual_information(j, {0}, {1, 2}, {}).nats;
    const double rhs =
        conditional_mutual_information(j, {0}, {1}, {}).nats + conditional_mutual_information(j, {0}, {2}, {1}).nats;
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  out.push_back(upper("chain rule I(A;BC) = I(A;B) + I(A;C|B)", worst, 1e-12));

  worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto j = random_joint(rng, {3, 2});
    const double ab = conditional_mutual_information(j, {0}, {1}, {}).nats;
    const double ba = conditional_mutual_information(j, {1}, {0}, {}).nats;
    worst = std::max({worst, std::abs(ab - ba), -ab});
  }
  out.push_back(upper("mutual information symmetric and nonnegative", worst, 1e-12));

  worst = -INFINITY;
  for (int t = 0; t < 100; ++t) {
    const auto j = random_joint(rng, {3, 3});
    const Axes a{0}, ab{0, 1}, b{1};
    worst = std::max(worst, (j.entropy_of(ab) - j.entropy_of(b)) - j.entropy_of(a));
  }
  out.push_back(upper("conditioning reduces entropy", worst, 1e-12));
  return out;
}

std::vector<PropertyResult> classify_suite(std::uint64_t seed) {
  std::vector<PropertyResult> out;
  SplitMix64 rng(seed, 12);

  double worst = 0.0;
  std::size_t good = 0;
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 2);
    const auto cc = composed_degraded_channel(rng, n, n, n, n);
    const auto v = check_type_c(cc.channel, Direction::one_to_two);
    if (const auto* f = std::get_if<Feasible>(&v)) {
      ++good;
      worst = std::max(worst, f->residual);
    }
  }
  out.push_back(count_ok("type C feasible on 20 composed channels", good, 20));
  out.push_back(upper("type C composition residual", worst, 1e-9));

  good = 0;
  for (int t = 0; t < 10; ++t) {
    const auto ch = anti_degraded_channel(rng, 2 + static_cast<std::size_t>(t % 2));
    if (std::holds_alternative<Infeasible>(check_type_c(ch, Direction::one_to_two))) ++good;
  }
  out.push_back(count_ok("type C infeasible on 10 anti-degraded channels", good, 10));

  {
    const auto k = random_stochastic(rng, 4, 2);
    std::vector<double> p(16, 0.0);
    for (std::size_t x = 0; x < 4; ++x)
      for (std::size_t y = 0; y < 2; ++y) p[(x * 2 + y) * 2 + y] = k(x, y);
    const IFCChannel ch(2, 2, 2, 2, std::move(p));
    const auto v = check_type_c(ch, Direction::one_to_two);
    double dev = INFINITY;
    if (const auto* f = std::get_if<Feasible>(&v)) {
      dev = 0.0;
      for (std::size_t x2 = 0; x2 < 2; ++x2)
        for (std::size_t y1 = 0; y1 < 2; ++y1)
          for (std::size_t y2 = 0; y2 < 2; ++y2)
            dev = std::max(dev, std::abs(f->kernel(x2 * 2 + y1, y2) - (y1 == y2 ? 1.0 : 0.0)));
    }
    out.push_back(upper("identical outputs give the identity kernel", dev, 1e-9));
  }

  SearchConfig quick;
  quick.grid = 4;
  quick.restarts = 8;
  quick.seed = seed;
  good = 0;
  for (int t = 0; t < 3; ++t) {
    const auto cc = composed_degraded_channel(rng, 2, 2, 2, 2);
    const bool c = std::holds_alternative<Feasible>(check_type_c(cc.channel, Direction::one_to_two));
    const bool b = std::holds_alternative<HoldsOnTestedSet>(
        check_type_b(cc.channel, Direction::one_to_two, default_u_card(cc.channel), quick));
    const bool a = std::holds_alternative<HoldsOnTestedSet>(check_type_a(cc.channel, Direction::one_to_two, quick));
    if (c && b && a) ++good;
  }
  out.push_back(count_ok("type C implies type B and type A (3 channels)", good, 3));

  {
    const auto ch = anti_degraded_channel(rng, 2);
    const auto v = check_type_a(ch, Direction::one_to_two, quick);
    const auto* ce = std::get_if<Counterexample>(&v);
    out.push_back({"noiseless Y2 violates type A", ce != nullptr && ce->gap_nats > 0.0,
                   ce ? -ce->gap_nats : 0.0, ce ? "gap " + std::to_string(ce->gap_nats) + " nats" : "no witness"});
  }
  return out;
}

std::vector<PropertyResult> regions_suite(std::uint64_t seed) {
  std::vector<PropertyResult> out;
  SplitMix64 rng(seed, 13);

  double worst = 0.0;
  double dominance = -INFINITY;
  for (int t = 0; t < 30; ++t) {
    const auto ch = random_channel(rng, 2, 2, 2, 2);
    const ChainEvaluator ev(ch);
    const std::size_t nu = 1 + static_cast<std::size_t>(t % 3);
    const std::size_t nv = 1 + static_cast<std::size_t>(t % 4);
    std::vector<double> xa, xg;
    for (auto b : aux_blocks(2, 2, nu)) {
      std::vector<double> blk(b);
      random_simplex_point(rng, blk);
      xa.insert(xa.end(), blk.begin(), blk.end());
    }
    for (auto b : gp_blocks(2, 2, nu, nv)) {
      std::vector<double> blk(b);
      random_simplex_point(rng, blk);
      xg.insert(xg.end(), blk.begin(), blk.end());
    }
    const auto aux = aux_chain_from_flat(2, 2, nu, xa);
    const AuxInfo fa = ev.aux(nu, xa);
    const RatePair rs = rstar_corner(ch, aux);
    const OuterBounds ob = router_corner(ch, aux);
    worst = std::max({worst, std::abs(fa.i_x1y1_ux2 - rs.r1), std::abs(fa.i_ux2_y2 - rs.r2),
                      std::abs(fa.i_x1y1_x2 - ob.r1_max)});
    const GPInfo fg = ev.gp(nu, nv, xg);
    const RinCorner rc = rin_corner(ch, gp_chain_from_flat(2, 2, nu, nv, xg));
    worst = std::max({worst, std::abs(std::max(0.0, fg.i_v_y1 - fg.i_v_ux2) - rc.rate.r1),
                      std::abs(fg.i_ux2_y2 - rc.rate.r2)});
    dominance = std::max({dominance, rs.r1 - (ob.sum_max - rs.r2), rs.r2 - ob.r2_max});
  }
  out.push_back(upper("direct chain evaluation matches joint assembly", worst, 1e-12));
  out.push_back(upper("R* corner inside the R_o pentagon of its chain", dominance, 1e-12));

  GridConfig small;
  small.resolution = 2;
  small.restarts = 4;
  small.targets = 3;
  small.ascent_evals = 100;
  small.seed = seed;
  {
    const auto ch = random_channel(rng, 2, 2, 2, 2);
    const auto r1 = convex_downset_hull(rstar_region(ch, 1, small).corners);
    const auto r2 = convex_downset_hull(rstar_region(ch, 2, small).corners);
    const auto rep = subset_check(r1, r2, 1e-9);
    out.push_back(upper("R* region monotone in |U|", std::max(rep.max_violation, 0.0), 1e-9));

    GridConfig serial = small;
    serial.policy = ExecPolicy::serial;
    const auto a = rin_region(ch, 2, 2, small).corners.points;
    const auto b = rin_region(ch, 2, 2, serial).corners.points;
    bool same = a.size() == b.size();
    for (std::size_t i = 0; same && i < a.size(); ++i) same = a[i].rate == b[i].rate;
    out.push_back({"parallel and serial exploration agree", same, same ? 0.0 : 1.0, std::to_string(a.size()) + " corners"});
  }

  worst = -INFINITY;
  for (int t = 0; t < 3; ++t) {
    const auto ch = random_channel(rng, 2, 2, 2, 2);
    worst = std::max(worst, verify_sandwich(ch, 2, 3, small).rin_violation);
  }
  {
    const auto cc = composed_degraded_channel(rng, 2, 2, 2, 2);
    const auto rep = verify_sandwich(cc.channel, 2, 3, small);
    worst = std::max({worst, rep.rin_violation, rep.rstar_violation});
  }
  out.push_back(upper("sandwich: R_in and R* corners inside the R_o sample", worst, 1e-6, "reduced grid"));
  return out;
}

std::vector<PropertyResult> gaussian_suite(std::uint64_t seed) {
  std::vector<PropertyResult> out;
  const auto& g = kSection4;

  double worst = 0.0, forms = 0.0, mono = -INFINITY;
  RatePair prev{};
  for (int k = 0; k <= 1000; ++k) {
    const double a = k / 1000.0;
    const auto c = capacity_t1_corner(g, a);
    const auto d = dpc12_corner(g, a);
    worst = std::max({worst, std::abs(c.r1 - d.r1), std::abs(c.r2 - d.r2)});
    forms = std::max(forms, std::abs(c.r2 - capacity_t1_r2_covariance(g, a)));
    if (k > 0) mono = std::max({mono, prev.r1 - c.r1, c.r2 - prev.r2});
    prev = c;
  }
  out.push_back(upper("capacity T1 equals DPC12 on 1001 alphas", worst, 1e-12));
  out.push_back(upper("explicit and covariance r2 forms agree", forms, 1e-12));
  out.push_back(upper("T1 tradeoff monotone in alpha", std::max(mono, 0.0), 1e-12));

  SplitMix64 rng(seed, 14);
  worst = -INFINITY;
  for (int t = 0; t <= 50; ++t) {
    GaussianParams p = g;
    if (t > 0) p = {20.0 * (1.0 - rng.uniform()), 20.0 * (1.0 - rng.uniform()), 4.0 * rng.uniform() - 2.0,
                    2.0 * rng.uniform() - 1.0};
    const auto r12 = convex_downset_hull(sweep(p, GaussCurve::dpc12));
    const auto r21 = convex_downset_hull(sweep(p, GaussCurve::dpc21));
    worst = std::max(worst, subset_check(r12, r21).max_violation);
  }
  out.push_back(upper("DPC12 region inside DPC21 region (51 parameter sets)", worst, 1e-6));

  const double kramer = to_region(kramer_polytope(g)).max_sum_rate();
  out.push_back(upper("Kramer sum rate equals 1/2 log2 22", std::abs(kramer - 0.5 * std::log2(22.0)), 1e-9));

  worst = 0.0;
  for (double a : {0.0, 0.25, 0.5, 0.75}) {
    const double lim = std::sqrt((1.0 - a) * 36.0);
    const double step = 2.0 * lim / 10000.0;
    const double dev = std::abs(optimize_gamma(g, a, 10001) - lim);
    worst = std::max(worst, step > 0.0 ? dev / step : dev);
  }
  out.push_back(upper("gamma optimum within one grid step (in steps)", worst, 1.0));

  worst = 0.0;
  for (int k = 0; k <= 1000; ++k) {
    const auto e = epi_corner_check(g, k / 1000.0);
    worst = std::max(worst, std::abs(e.achieved - e.lower_bound));
  }
  out.push_back(upper("entropy-power bound attained by the DPC scheme", worst, 1e-9));

  worst = -INFINITY;
  for (int t = 0; t < 100; ++t) {
    const double a = 2 * rng.uniform() - 1, b = 2 * rng.uniform() - 1, c = 2 * rng.uniform() - 1,
                 d = 2 * rng.uniform() - 1;
    const auto r = cauchy_corr_bound_check(a * a + b * b, a * c + b * d, c * c + d * d);
    worst = std::max(worst, r.lhs - r.rhs);
  }
  out.push_back(upper("correlation bound on 100 PSD matrices", worst, 1e-12));

  {
    const Polytope kp = kramer_polytope(g);
    double margin = -INFINITY;
    for (const auto& p : sweep(g, GaussCurve::t1).points) margin = std::max(margin, violation(kp, p.rate));
    out.push_back({"T1 capacity region exceeds the Kramer bound", margin > 0.01, margin,
                   "largest excess " + std::to_string(margin) + " bits"});
  }
  {
    const auto cr = boundary_crossings(to_region(kramer_polytope(g)), intersection_region(g), 10000);
    out.push_back({"Kramer boundary meets the T1/T2 intersection", cr.size() >= 2, 0.0,
                   std::to_string(cr.size()) + " crossing intervals"});
  }
  return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"info", "classify", "regions", "gaussian", "all"};
  return names;
}

std::vector<PropertyResult> run_suite(const std::string& suite, std::uint64_t seed) {
  if (suite == "info") return info_suite(seed);
  if (suite == "classify") return classify_suite(seed);
  if (suite == "regions") return regions_suite(seed);
  if (suite == "gaussian") return gaussian_suite(seed);
  if (suite == "all") {
    std::vector<PropertyResult> all;
    for (const char* s : {"info", "classify", "regions", "gaussian"}) {
      auto part = run_suite(s, seed);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  throw InvalidInput("unknown suite '" + suite + "'");
}

}  // namespace ifcdms
