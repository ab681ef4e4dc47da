#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "ifcdms/channel.hpp"
#include "ifcdms/exec.hpp"
#include "ifcdms/info.hpp"

namespace ifcdms {

/// Which cross link is tested. one_to_two: receiver 2 is the weaker
/// observer of X1 (conditions on X2); two_to_one is the mirror image.
enum class Direction { one_to_two, two_to_one };

/// Knobs of the falsification search used for the universally quantified
/// conditions. Defaults: lattice step 1/8, 64 restarts, ascent step 0.1 for
/// 200 iterations, violation tolerance 1e-9 nats.
struct SearchConfig {
  int grid = 8;
  int restarts = 64;
  double step = 0.1;
  int iterations = 200;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  std::size_t max_grid_points = 20000;
  ExecPolicy policy = ExecPolicy::parallel;
};

struct HoldsOnTestedSet {
  int resolution = 0;
  int restarts = 0;
  std::size_t points_tested = 0;
  double max_gap_nats = 0.0;  // largest (non-violating) gap seen
};

struct Counterexample {
  std::string inequality;                   // the violated inequality, human readable
  std::vector<JointDistribution> witness;   // p1, p2 for product inputs; p(u,x1,x2) otherwise
  double gap_nats = 0.0;                    // > 0
};

struct Feasible {
  StochasticMatrix kernel;  // q1(y2 | x2, y1) rows x2*ny1+y1, or q2(y1 | x1, y2) rows x1*ny2+y2
  double residual = 0.0;
};

struct Infeasible {
  std::size_t block = 0;  // the x2 (or x1) value whose system has no solution
  double phase1_objective = 0.0;
};

using ClassificationVerdict = std::variant<HoldsOnTestedSet, Counterexample, Feasible, Infeasible>;

std::string verdict_name(const ClassificationVerdict& v);

/// Exact test for stochastic degradedness of the cross link. The system
/// decouples across the conditioning input: one LP per value.
/// Throws LpFailure on numerical breakdown.
ClassificationVerdict check_type_c(const IFCChannel& ch, Direction dir, double tol = 1e-9);

/// Searches product inputs for I(X1;Y2|X2) > I(X1;Y1|X2) (one_to_two) or
/// I(X2;Y1|X1) > I(X2;Y2|X1) (two_to_one). One-sided verdict.
ClassificationVerdict check_type_a(const IFCChannel& ch, Direction dir, const SearchConfig& search = {});

/// Searches joints p(u, x1, x2) with |U| = u_card for
/// I(U,X2;Y2) > I(U,X2;Y1) (one_to_two) or I(U,X1;Y1) > I(U,X1;Y2)
/// (two_to_one). One-sided verdict.
ClassificationVerdict check_type_b(const IFCChannel& ch, Direction dir, std::size_t u_card,
                                   const SearchConfig& search = {});

/// Default auxiliary cardinality nx1 * nx2 + 1.
std::size_t default_u_card(const IFCChannel& ch);

/// Searches product inputs for a violation of either strong-interference
/// inequality I(X1;Y1|X2) <= I(X1;Y2|X2), I(X2;Y2|X1) <= I(X2;Y1|X1).
ClassificationVerdict check_strong_interference(const IFCChannel& ch, const SearchConfig& search = {});

}  // namespace ifcdms
