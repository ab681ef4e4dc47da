#include "ifcdms/classify.hpp"

#include <algorithm>
#include <cmath>

#include "ifcdms/errors.hpp"
#include "ifcdms/lp.hpp"
#include "ifcdms/search.hpp"

namespace ifcdms {

std::string verdict_name(const ClassificationVerdict& v) {
  struct {
    std::string operator()(const HoldsOnTestedSet&) const { return "HoldsOnTestedSet"; }
    std::string operator()(const Counterexample&) const { return "Counterexample"; }
    std::string operator()(const Feasible&) const { return "Feasible"; }
    std::string operator()(const Infeasible&) const { return "Infeasible"; }
  } visitor;
  return std::visit(visitor, v);
}

std::size_t default_u_card(const IFCChannel& ch) { return ch.nx1() * ch.nx2() + 1; }

// ---------------------------------------------------------------------------
// Type C: one LP per value of the conditioning input.

ClassificationVerdict check_type_c(const IFCChannel& ch, Direction dir, double tol) {
  const auto [k1, k2] = marginal_kernels(ch);
  const bool fwd = dir == Direction::one_to_two;
  // Forward: observed = Y1 (degrades into target Y2), block over x2, equations over x1.
  const std::size_t n_block = fwd ? ch.nx2() : ch.nx1();
  const std::size_t n_eq_in = fwd ? ch.nx1() : ch.nx2();
  const std::size_t n_src = fwd ? ch.ny1() : ch.ny2();
  const std::size_t n_dst = fwd ? ch.ny2() : ch.ny1();
  const StochasticMatrix& src = fwd ? k1 : k2;
  const StochasticMatrix& dst = fwd ? k2 : k1;
  auto row_of = [&](std::size_t blk, std::size_t other) {
    return fwd ? other * ch.nx2() + blk : blk * ch.nx2() + other;
  };

  LpOptions opts;
  opts.feasibility_tol = tol;
  std::vector<double> kernel(n_block * n_src * n_dst, 0.0);
  double residual = 0.0;

  for (std::size_t blk = 0; blk < n_block; ++blk) {
    const std::size_t n_vars = n_src * n_dst;  // q(d | s) at s * n_dst + d
    DenseMatrix a(n_eq_in * n_dst + n_src, n_vars);
    std::vector<double> b(a.rows, 0.0);
    std::size_t r = 0;
    for (std::size_t o = 0; o < n_eq_in; ++o) {
      const std::size_t x = row_of(blk, o);
      for (std::size_t d = 0; d < n_dst; ++d, ++r) {
        for (std::size_t s = 0; s < n_src; ++s) a(r, s * n_dst + d) = src(x, s);
        b[r] = dst(x, d);
      }
    }
    for (std::size_t s = 0; s < n_src; ++s, ++r) {
      for (std::size_t d = 0; d < n_dst; ++d) a(r, s * n_dst + d) = 1.0;
      b[r] = 1.0;
    }

    const LpResult res = lp_feasibility(a, b, n_vars, opts);
    if (const auto* inf = std::get_if<LpInfeasible>(&res)) return Infeasible{blk, inf->phase1_objective};
    const auto& sol = std::get<LpFeasible>(res);
    for (std::size_t s = 0; s < n_src; ++s) {
      double sum = 0.0;
      for (std::size_t d = 0; d < n_dst; ++d) sum += sol.x[s * n_dst + d];
      for (std::size_t d = 0; d < n_dst; ++d)
        kernel[(blk * n_src + s) * n_dst + d] = sol.x[s * n_dst + d] / sum;
    }
  }

  // Residual of the defining identity with the normalized kernel.
  for (std::size_t blk = 0; blk < n_block; ++blk)
    for (std::size_t o = 0; o < n_eq_in; ++o) {
      const std::size_t x = row_of(blk, o);
      for (std::size_t d = 0; d < n_dst; ++d) {
        double acc = -dst(x, d);
        for (std::size_t s = 0; s < n_src; ++s) acc += src(x, s) * kernel[(blk * n_src + s) * n_dst + d];
        residual = std::max(residual, std::abs(acc));
      }
    }
  if (residual > tol) throw LpFailure("check_type_c: recovered kernel misses the residual tolerance");
  return Feasible{StochasticMatrix(n_block * n_src, n_dst, std::move(kernel)), residual};
}

// ---------------------------------------------------------------------------
// Falsification searches.

namespace {

using Term = MiGapObjective::Term;
using Output = MiGapObjective::Output;

enum class Group { x1x2, x1, x2, ux1, ux2 };

Term make_term(const IFCChannel& ch, std::size_t nu, double sign, Output out, Group g) {
  const std::size_t nx1 = ch.nx1(), nx2 = ch.nx2();
  Term t{sign, out, std::vector<std::size_t>(nu * nx1 * nx2), 0};
  for (std::size_t u = 0; u < nu; ++u)
    for (std::size_t x1 = 0; x1 < nx1; ++x1)
      for (std::size_t x2 = 0; x2 < nx2; ++x2) {
        std::size_t w = 0;
        switch (g) {
          case Group::x1x2: w = x1 * nx2 + x2; t.n_groups = nx1 * nx2; break;
          case Group::x1: w = x1; t.n_groups = nx1; break;
          case Group::x2: w = x2; t.n_groups = nx2; break;
          case Group::ux1: w = u * nx1 + x1; t.n_groups = nu * nx1; break;
          case Group::ux2: w = u * nx2 + x2; t.n_groups = nu * nx2; break;
        }
        t.group_of_state[(u * nx1 + x1) * nx2 + x2] = w;
      }
  return t;
}

// I(X1;Y2|X2) - I(X1;Y1|X2), or the mirrored gap.
std::vector<Term> type_a_terms(const IFCChannel& ch, Direction dir) {
  if (dir == Direction::one_to_two)
    return {make_term(ch, 1, +1, Output::y2, Group::x1x2), make_term(ch, 1, -1, Output::y2, Group::x2),
            make_term(ch, 1, -1, Output::y1, Group::x1x2), make_term(ch, 1, +1, Output::y1, Group::x2)};
  return {make_term(ch, 1, +1, Output::y1, Group::x1x2), make_term(ch, 1, -1, Output::y1, Group::x1),
          make_term(ch, 1, -1, Output::y2, Group::x1x2), make_term(ch, 1, +1, Output::y2, Group::x1)};
}

std::vector<Term> negate(std::vector<Term> terms) {
  for (auto& t : terms) t.sign = -t.sign;
  return terms;
}

FalsifyConfig to_falsify(const SearchConfig& s) {
  FalsifyConfig f;
  f.resolution = s.grid;
  f.restarts = s.restarts;
  f.ascent.step = s.step;
  f.ascent.iterations = s.iterations;
  f.max_grid_points = s.max_grid_points;
  f.seed = s.seed;
  f.policy = s.policy;
  return f;
}

ProductInput product_from_point(const IFCChannel& ch, const std::vector<double>& x) {
  ProductInput in{std::vector<double>(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(ch.nx1())),
                  std::vector<double>(x.begin() + static_cast<std::ptrdiff_t>(ch.nx1()), x.end())};
  for (auto* p : {&in.p1, &in.p2}) {
    double s = 0.0;
    for (double v : *p) s += v;
    for (double& v : *p) v /= s;
  }
  return in;
}

// Reference evaluation through the generic joint-distribution path.
double reference_gap_a(const IFCChannel& ch, Direction dir, const ProductInput& in) {
  const JointDistribution j = induced_joint(ch, in);  // axes x1 x2 y1 y2
  if (dir == Direction::one_to_two)
    return conditional_mutual_information(j, {0}, {3}, {1}).nats -
           conditional_mutual_information(j, {0}, {2}, {1}).nats;
  return conditional_mutual_information(j, {1}, {2}, {0}).nats -
         conditional_mutual_information(j, {1}, {3}, {0}).nats;
}

double reference_gap_b(const IFCChannel& ch, Direction dir, const JointDistribution& p_ux1x2) {
  const JointDistribution j = induced_joint(ch, p_ux1x2);  // axes u x1 x2 y1 y2
  if (dir == Direction::one_to_two)
    return conditional_mutual_information(j, {0, 2}, {4}, {}).nats -
           conditional_mutual_information(j, {0, 2}, {3}, {}).nats;
  return conditional_mutual_information(j, {0, 1}, {3}, {}).nats -
         conditional_mutual_information(j, {0, 1}, {4}, {}).nats;
}

std::vector<JointDistribution> product_witness(const ProductInput& in) {
  return {JointDistribution({in.p1.size()}, in.p1), JointDistribution({in.p2.size()}, in.p2)};
}

ClassificationVerdict product_verdict(const SearchConfig& search,
                                      double gap, std::size_t tested, const ProductInput& in,
                                      std::string inequality) {
  if (gap > search.tol) return Counterexample{std::move(inequality), product_witness(in), gap};
  return HoldsOnTestedSet{search.grid, search.restarts, tested, gap};
}

}  // namespace

ClassificationVerdict check_type_a(const IFCChannel& ch, Direction dir, const SearchConfig& search) {
  const MiGapObjective obj(ch, MiGapObjective::Param::product, 1, type_a_terms(ch, dir));
  const SearchOutcome out = falsify(obj, to_falsify(search));
  const ProductInput in = product_from_point(ch, out.best_point);
  const double gap = reference_gap_a(ch, dir, in);
  return product_verdict(search, gap, out.points_tested, in,
                         dir == Direction::one_to_two ? "I(X1;Y2|X2) <= I(X1;Y1|X2)"
                                                      : "I(X2;Y1|X1) <= I(X2;Y2|X1)");
}

ClassificationVerdict check_strong_interference(const IFCChannel& ch, const SearchConfig& search) {
  // Each strong inequality is the negated type-A gap of the matching direction.
  const MiGapObjective obj1(ch, MiGapObjective::Param::product, 1,
                            negate(type_a_terms(ch, Direction::one_to_two)));
  const MiGapObjective obj2(ch, MiGapObjective::Param::product, 1,
                            negate(type_a_terms(ch, Direction::two_to_one)));
  const SearchOutcome out1 = falsify(obj1, to_falsify(search));
  const SearchOutcome out2 = falsify(obj2, to_falsify(search));
  const ProductInput in1 = product_from_point(ch, out1.best_point);
  const ProductInput in2 = product_from_point(ch, out2.best_point);
  const double gap1 = -reference_gap_a(ch, Direction::one_to_two, in1);
  const double gap2 = -reference_gap_a(ch, Direction::two_to_one, in2);
  const std::size_t tested = out1.points_tested + out2.points_tested;
  if (gap1 >= gap2)
    return product_verdict(search, gap1, tested, in1, "I(X1;Y1|X2) <= I(X1;Y2|X2)");
  return product_verdict(search, gap2, tested, in2, "I(X2;Y2|X1) <= I(X2;Y1|X1)");
}

ClassificationVerdict check_type_b(const IFCChannel& ch, Direction dir, std::size_t u_card,
                                   const SearchConfig& search) {
  if (u_card == 0) throw InvalidInput("check_type_b: u_card must be >= 1");
  std::vector<Term> terms;
  if (dir == Direction::one_to_two)
    terms = {make_term(ch, u_card, +1, Output::y2, Group::ux2),
             make_term(ch, u_card, -1, Output::y1, Group::ux2)};
  else
    terms = {make_term(ch, u_card, +1, Output::y1, Group::ux1),
             make_term(ch, u_card, -1, Output::y2, Group::ux1)};
  const MiGapObjective obj(ch, MiGapObjective::Param::joint, u_card, std::move(terms));
  const SearchOutcome out = falsify(obj, to_falsify(search));

  std::vector<double> law = out.best_point;
  double s = 0.0;
  for (double v : law) s += v;
  for (double& v : law) v /= s;
  JointDistribution witness({u_card, ch.nx1(), ch.nx2()}, std::move(law));
  const double gap = reference_gap_b(ch, dir, witness);
  if (gap > search.tol)
    return Counterexample{dir == Direction::one_to_two ? "I(U,X2;Y2) <= I(U,X2;Y1)" : "I(U,X1;Y1) <= I(U,X1;Y2)",
                          {std::move(witness)}, gap};
  return HoldsOnTestedSet{search.grid, search.restarts, out.points_tested, gap};
}

}  // namespace ifcdms
