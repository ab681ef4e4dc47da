#include "ifcdms/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <json.hpp>
#include <map>
#include <variant>

#include "ifcdms/classify.hpp"
#include "ifcdms/errors.hpp"
#include "ifcdms/gaussian.hpp"
#include "ifcdms/io.hpp"
#include "ifcdms/regions.hpp"
#include "ifcdms/verify.hpp"

namespace ifcdms {

namespace {

using nlohmann::json;

struct Common {
  std::string report_path;
  bool timing = false;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--report", c.report_path, "Write the JSON run report to FILE instead of stdout");
  sub->add_flag("--timing", c.timing, "Include wall-clock time in the report (breaks byte-identical reruns)");
}

void emit_report(json report, const Common& c, std::chrono::steady_clock::time_point t0, std::ostream& out) {
  if (c.timing)
    report["wall_clock_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const std::string text = report.dump(2) + "\n";
  if (c.report_path.empty())
    out << text;
  else
    write_file(c.report_path, text);
}

json rate_json(RatePair p) { return json::array({p.r1, p.r2}); }

json subset_json(const SubsetReport& r) {
  return {{"ok", r.ok}, {"max_violation_bits", r.max_violation}, {"witness", rate_json(r.witness)}};
}

json verdict_json(const ClassificationVerdict& v) {
  json j{{"verdict", verdict_name(v)}};
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, HoldsOnTestedSet>) {
          j["resolution"] = x.resolution;
          j["restarts"] = x.restarts;
          j["points_tested"] = x.points_tested;
          j["max_gap_nats"] = x.max_gap_nats;
        } else if constexpr (std::is_same_v<T, Counterexample>) {
          j["inequality"] = x.inequality;
          j["gap_nats"] = x.gap_nats;
          j["gap_bits"] = x.gap_nats / std::log(2.0);
          json w = json::array();
          for (const auto& d : x.witness)
            w.push_back({{"shape", std::vector<std::size_t>(d.shape().begin(), d.shape().end())},
                         {"p", std::vector<double>(d.probs().begin(), d.probs().end())}});
          j["witness"] = w;
        } else if constexpr (std::is_same_v<T, Feasible>) {
          j["residual"] = x.residual;
          json rows = json::array();
          for (std::size_t r = 0; r < x.kernel.rows(); ++r)
            rows.push_back(std::vector<double>(x.kernel.row(r).begin(), x.kernel.row(r).end()));
          j["kernel"] = rows;
        } else {
          j["block"] = x.block;
          j["phase1_objective"] = x.phase1_objective;
        }
      },
      v);
  return j;
}

json params_json(const GaussianParams& g) { return {{"p1", g.p1}, {"p2", g.p2}, {"a", g.a}, {"b", g.b}}; }

// Region named by --which, as a curve for CSV output.
CornerCurve gauss_curve(const GaussianParams& g, const std::string& which, std::size_t steps, double& sum_rate) {
  static const std::map<std::string, GaussCurve> sweeps{
      {"t1", GaussCurve::t1}, {"t2", GaussCurve::t2}, {"dpc12", GaussCurve::dpc12}, {"dpc21", GaussCurve::dpc21}};
  if (auto it = sweeps.find(which); it != sweeps.end()) {
    CornerCurve c = sweep(g, it->second, steps);
    sum_rate = convex_downset_hull(c).max_sum_rate();
    return c;
  }
  RateRegion r;
  if (which == "strong")
    r = to_region(strong_capacity_polytope(g));
  else if (which == "kramer")
    r = to_region(kramer_polytope(g));
  else
    r = intersection_region(g, steps);
  sum_rate = r.max_sum_rate();
  return polyline_curve(r);
}

std::vector<RatePair> rates(const CornerCurve& c) {
  std::vector<RatePair> out;
  for (const auto& p : c.points) out.push_back(p.rate);
  return out;
}

IFCChannel load_channel(const std::string& path) { return parse_channel(read_file(path)); }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rate regions of two-user interference channels with degraded message sets", "ifcdms"};
  app.require_subcommand(1);
  const auto t0 = std::chrono::steady_clock::now();

  GaussianParams g;
  std::size_t steps = 1001;
  std::string which, out_path, svg_path, out_dir;
  Common common;

  auto add_gauss = [&](CLI::App* sub) {
    sub->add_option("--p1", g.p1, "Power of transmitter 1")->required();
    sub->add_option("--p2", g.p2, "Power of transmitter 2")->required();
    sub->add_option("--a", g.a, "Cross gain from X2 to Y1");
    sub->add_option("--b", g.b, "Cross gain from X1 to Y2");
    sub->add_option("--alpha-steps", steps, "Power-split sweep resolution")->check(CLI::Range(2, 10000000));
    add_common(sub, common);
  };

  auto* gr = app.add_subcommand("gauss-region", "Write one Gaussian region boundary as CSV");
  add_gauss(gr);
  gr->add_option("--which", which, "Region")
      ->required()
      ->check(CLI::IsMember({"t1", "t2", "dpc12", "dpc21", "strong", "kramer", "intersect"}));
  gr->add_option("--out", out_path, "CSV output file")->required();
  gr->add_option("--svg", svg_path, "Optional SVG plot");

  auto* gc = app.add_subcommand("gauss-compare", "Compare the Gaussian regions and bounds");
  add_gauss(gc);
  gc->add_option("--out-dir", out_dir, "Output directory")->required();

  std::string channel_path, direction = "12", region;
  std::size_t u_card = 0, v_card = 0;
  int grid = -1, restarts = -1, targets = 5;
  std::uint64_t seed = 0;

  auto* cl = app.add_subcommand("classify", "Classify a discrete channel");
  cl->add_option("--channel", channel_path, "Channel JSON file")->required();
  cl->add_option("--direction", direction, "Cross link: 12 or 21")->check(CLI::IsMember({"12", "21"}));
  cl->add_option("--u-card", u_card, "Auxiliary cardinality for type B (default nx1*nx2+1)");
  cl->add_option("--grid", grid, "Lattice resolution of the search (default 8)");
  cl->add_option("--restarts", restarts, "Random restarts (default 64)");
  cl->add_option("--seed", seed, "Random seed");
  add_common(cl, common);

  auto* dr = app.add_subcommand("dmc-region", "Sample a discrete-channel rate region");
  dr->add_option("--channel", channel_path, "Channel JSON file")->required();
  dr->add_option("--region", region, "Region")->required()->check(CLI::IsMember({"rin", "ro", "rstar"}));
  dr->add_option("--u-card", u_card, "|U| (default nx1*nx2+1)");
  dr->add_option("--v-card", v_card, "|V| (default |U|*nx1+1)");
  dr->add_option("--grid", grid, "Lattice resolution (default 4)");
  dr->add_option("--restarts", restarts, "Ascent restarts per cardinality (default 16)");
  dr->add_option("--targets", targets, "Rate targets per restart")->check(CLI::PositiveNumber);
  dr->add_option("--seed", seed, "Random seed");
  dr->add_option("--out", out_path, "CSV output file")->required();
  add_common(dr, common);

  std::string suite;
  auto* vf = app.add_subcommand("verify", "Run a property suite");
  vf->add_option("--suite", suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));
  vf->add_option("--seed", seed, "Random seed");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_code::usage;
  }

  json command = args;
  try {
    if (gr->parsed()) {
      double sum_rate = 0.0;
      const CornerCurve c = gauss_curve(g, which, steps, sum_rate);
      write_file(out_path, to_csv(c));
      if (!svg_path.empty()) write_file(svg_path, render_svg(which, {{which, rates(c), "#1f77b4"}}));
      emit_report({{"command", command},
                   {"seed", 0},
                   {"config", {{"params", params_json(g)}, {"which", which}, {"alpha_steps", steps}}},
                   {"rows", c.size()},
                   {"max_sum_rate_bits", sum_rate}},
                  common, t0, out);
      return exit_code::ok;
    }

    if (gc->parsed()) {
      g.validate();
      if (std::abs(g.a) > 1.0 || std::abs(g.b) > 1.0)
        throw DomainError("gauss-compare requires |a|≤1 and |b|≤1");
      std::filesystem::create_directories(out_dir);
      const auto path = [&](const char* f) { return (std::filesystem::path(out_dir) / f).string(); };
      const CornerCurve t1 = sweep(g, GaussCurve::t1, steps), t2 = sweep(g, GaussCurve::t2, steps),
                        d12 = sweep(g, GaussCurve::dpc12, steps), d21 = sweep(g, GaussCurve::dpc21, steps);
      const RateRegion h1 = convex_downset_hull(t1), h2 = convex_downset_hull(t2),
                       h12 = convex_downset_hull(d12), h21 = convex_downset_hull(d21);
      const Polytope kp = kramer_polytope(g);
      const RateRegion kr = to_region(kp);
      const RateRegion inter = intersect(h1, h2);
      const CornerCurve kc = polyline_curve(kr), ic = polyline_curve(inter);

      write_file(path("t1.csv"), to_csv(t1));
      write_file(path("t2.csv"), to_csv(t2));
      write_file(path("dpc12.csv"), to_csv(d12));
      write_file(path("dpc21.csv"), to_csv(d21));
      write_file(path("kramer.csv"), to_csv(kc));
      write_file(path("intersection.csv"), to_csv(ic));
      write_file(path("compare.svg"), render_svg("Gaussian interference channel regions",
                                                 {{"capacity T1", rates(t1), "#1f77b4"},
                                                  {"capacity T2", rates(t2), "#ff7f0e"},
                                                  {"DPC12", rates(d12), "#2ca02c"},
                                                  {"DPC21", rates(d21), "#d62728"},
                                                  {"Kramer bound", rates(kc), "#000000"},
                                                  {"T1 and T2 intersection", rates(ic), "#9467bd"}}));

      const auto crossings = boundary_crossings(kr, inter, 10000);
      json cr = json::array();
      for (const auto& c : crossings)
        cr.push_back({{"t", {c.t_lo, c.t_hi}},
                      {"from", to_string(c.from)},
                      {"to", to_string(c.to)},
                      {"point", rate_json(c.p_hi)}});
      double t1_over_kramer = -INFINITY;
      RatePair t1_witness;
      for (const auto& p : t1.points)
        if (const double v = violation(kp, p.rate); v > t1_over_kramer) {
          t1_over_kramer = v;
          t1_witness = p.rate;
        }
      emit_report({{"command", command},
                   {"seed", 0},
                   {"config", {{"params", params_json(g)}, {"alpha_steps", steps}, {"crossing_sweep", 10000}}},
                   {"max_sum_rate_bits",
                    {{"t1", h1.max_sum_rate()},
                     {"t2", h2.max_sum_rate()},
                     {"dpc12", h12.max_sum_rate()},
                     {"dpc21", h21.max_sum_rate()},
                     {"kramer", kr.max_sum_rate()},
                     {"intersection", inter.max_sum_rate()}}},
                   {"symmetric_rate_bits", {{"kramer", kr.symmetric_rate()}, {"intersection", inter.symmetric_rate()}}},
                   {"subset_dpc12_in_dpc21", subset_json(subset_check(h12, h21))},
                   {"subset_kramer_in_intersection", subset_json(subset_check(kr, inter))},
                   {"subset_intersection_in_kramer", subset_json(subset_check(inter, kp))},
                   {"t1_excess_over_kramer_bits", {{"max", t1_over_kramer}, {"witness", rate_json(t1_witness)}}},
                   {"boundary_crossings", {{"count", crossings.size()}, {"intervals", cr}}}},
                  common, t0, out);
      return exit_code::ok;
    }

    if (cl->parsed()) {
      const IFCChannel ch = load_channel(channel_path);
      const Direction dir = direction == "12" ? Direction::one_to_two : Direction::two_to_one;
      SearchConfig sc;
      if (grid > 0) sc.grid = grid;
      if (restarts >= 0) sc.restarts = restarts;
      sc.seed = seed;
      const std::size_t uc = u_card > 0 ? u_card : default_u_card(ch);
      emit_report({{"command", command},
                   {"seed", seed},
                   {"config",
                    {{"direction", direction},
                     {"u_card", uc},
                     {"grid", sc.grid},
                     {"restarts", sc.restarts},
                     {"ascent_step", sc.step},
                     {"ascent_iterations", sc.iterations},
                     {"tolerance_nats", sc.tol}}},
                   {"type_c", verdict_json(check_type_c(ch, dir))},
                   {"type_b", verdict_json(check_type_b(ch, dir, uc, sc))},
                   {"type_a", verdict_json(check_type_a(ch, dir, sc))},
                   {"strong", verdict_json(check_strong_interference(ch, sc))}},
                  common, t0, out);
      return exit_code::ok;
    }

    if (dr->parsed()) {
      const IFCChannel ch = load_channel(channel_path);
      GridConfig gcfg;
      if (grid > 0) gcfg.resolution = grid;
      if (restarts >= 0) gcfg.restarts = restarts;
      gcfg.targets = targets;
      gcfg.seed = seed;
      const std::size_t uc = u_card > 0 ? u_card : default_u_card(ch.nx1(), ch.nx2());
      const std::size_t vc = v_card > 0 ? v_card : default_v_card(uc, ch.nx1());
      RegionResult res;
      std::string label;
      if (region == "rstar") {
        res = rstar_region(ch, uc, gcfg);
        label = "sampled R* corners";
      } else if (region == "ro") {
        res = ro_region(ch, uc, gcfg);
        label = "sampled R_o pentagon corners (inner approximation of R_o)";
      } else {
        res = rin_region(ch, uc, vc, gcfg);
        label = "sampled R_in corners";
      }
      const CornerCurve front = pareto_frontier(res.corners);
      write_file(out_path, to_csv(front));
      json cfg{{"region", region},
               {"u_card", uc},
               {"resolution", gcfg.resolution},
               {"restarts", gcfg.restarts},
               {"targets", gcfg.targets},
               {"ascent_evals", gcfg.ascent_evals},
               {"max_grid_chains", gcfg.max_grid_chains}};
      if (region == "rin") cfg["v_card"] = vc;
      emit_report({{"command", command},
                   {"seed", seed},
                   {"config", cfg},
                   {"label", label},
                   {"grid_chains", res.grid_chains},
                   {"ascent_chains", res.ascent_chains},
                   {"grid_exhaustive", res.grid_exhaustive},
                   {"corners", res.corners.size()},
                   {"frontier_points", front.size()},
                   {"clamped_r1", res.clamped},
                   {"max_sum_rate_bits", convex_downset_hull(res.corners).max_sum_rate()}},
                  common, t0, out);
      return exit_code::ok;
    }

    if (vf->parsed()) {
      const auto results = run_suite(suite, seed);
      bool all = true;
      std::size_t width = 8;
      for (const auto& r : results) width = std::max(width, r.name.size());
      for (const auto& r : results) {
        all = all && r.passed;
        out << (r.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(static_cast<int>(width)) << r.name
            << "  " << r.detail << "\n";
      }
      out << (all ? "all properties passed" : "some properties FAILED") << " (" << results.size() << " checked)\n";
      return all ? exit_code::ok : exit_code::verify_failed;
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::domain;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::parse;
  } catch (const LpFailure& e) {
    err << "error: LP failure: " << e.what() << "\n";
    return exit_code::lp_failure;
  } catch (const BudgetExceeded& e) {
    err << "error: budget exceeded: " << e.what() << "\n";
    return exit_code::budget;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::domain;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::io;
  }
  return exit_code::usage;
}

}  // namespace ifcdms
