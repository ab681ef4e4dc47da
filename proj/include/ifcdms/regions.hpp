#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ifcdms/channel.hpp"
#include "ifcdms/exec.hpp"
#include "ifcdms/geometry.hpp"
#include "ifcdms/info.hpp"

namespace ifcdms {

/// p(u, x2) p(x1 | u) p(y1, y2 | x1, x2).
struct AuxChain {
  JointDistribution p_ux2;        // shape {|U|, nx2}
  StochasticMatrix p_x1_given_u;  // |U| x nx1
};

/// p(u, x2) p(v | u, x2) p(x1 | v, u, x2) p(y1, y2 | x1, x2).
struct GPChain {
  JointDistribution p_ux2;            // shape {|U|, nx2}
  StochasticMatrix p_v_given_ux2;     // rows u * nx2 + x2, |V| columns
  StochasticMatrix p_x1_given_vux2;   // rows (v * |U| + u) * nx2 + x2, nx1 columns
};

/// Pentagon {r1 <= r1_max, r2 <= r2_max, r1 + r2 <= sum_max}.
struct OuterBounds {
  double r1_max = 0.0;
  double r2_max = 0.0;
  double sum_max = 0.0;
};

struct RinCorner {
  RatePair rate;
  bool clamped = false;  // the raw r1 was negative beyond rounding
};

/// (I(X1;Y1|U,X2), I(U,X2;Y2)) in bits, through the induced joint.
RatePair rstar_corner(const IFCChannel& ch, const AuxChain& chain);

/// (I(X1;Y1|X2), I(U,X2;Y2), I(X1;Y1|U,X2) + I(U,X2;Y2)) in bits.
OuterBounds router_corner(const IFCChannel& ch, const AuxChain& chain);

/// (max(0, I(V;Y1) - I(V;U,X2)), I(U,X2;Y2)) in bits.
RinCorner rin_corner(const IFCChannel& ch, const GPChain& chain);

/// The two upper corners of a pentagon; its down-closed hull is the pentagon.
std::pair<RatePair, RatePair> pentagon_corners(const OuterBounds& b);

// Flat chain parameters: a concatenation of probability blocks, each on its
// own simplex. AuxChain: [p(u,x2) | p(x1|u) rows]. GPChain: [p(u,x2) |
// p(v|u,x2) rows | p(x1|v,u,x2) rows].

std::vector<std::size_t> aux_blocks(std::size_t nx1, std::size_t nx2, std::size_t nu);
std::vector<std::size_t> gp_blocks(std::size_t nx1, std::size_t nx2, std::size_t nu, std::size_t nv);

std::vector<double> flatten(const AuxChain& chain);
std::vector<double> flatten(const GPChain& chain);
AuxChain aux_chain_from_flat(std::size_t nx1, std::size_t nx2, std::size_t nu, std::span<const double> x);
GPChain gp_chain_from_flat(std::size_t nx1, std::size_t nx2, std::size_t nu, std::size_t nv,
                           std::span<const double> x);

/// AuxChain with U' = (U, X2) and p(x1|u') = sum_v p(v|u,x2) p(x1|v,u,x2). It
/// induces the same law of (U, X1, X2, Y1, Y2) as the GPChain.
std::vector<double> companion_aux_flat(std::size_t nx1, std::size_t nx2, std::size_t nu, std::size_t nv,
                                       std::span<const double> gp_flat);

struct AuxInfo {
  double i_x1y1_x2 = 0.0;   // I(X1;Y1|X2)
  double i_x1y1_ux2 = 0.0;  // I(X1;Y1|U,X2)
  double i_ux2_y2 = 0.0;    // I(U,X2;Y2)
};

struct GPInfo {
  double i_v_y1 = 0.0;    // I(V;Y1)
  double i_v_ux2 = 0.0;   // I(V;U,X2)
  double i_ux2_y2 = 0.0;  // I(U,X2;Y2)
};

/// Direct evaluation of the chain information quantities (bits) from flat
/// parameters, without materializing the joint. Values within 1e-12 of zero
/// are reported as zero.
class ChainEvaluator {
 public:
  explicit ChainEvaluator(const IFCChannel& ch);

  [[nodiscard]] AuxInfo aux(std::size_t nu, std::span<const double> x) const;
  [[nodiscard]] GPInfo gp(std::size_t nu, std::size_t nv, std::span<const double> x) const;

  [[nodiscard]] std::size_t nx1() const { return nx1_; }
  [[nodiscard]] std::size_t nx2() const { return nx2_; }

 private:
  std::size_t nx1_, nx2_, ny1_, ny2_;
  std::vector<double> k1_, k2_;  // rows x1 * nx2 + x2
  std::vector<double> h1_, h2_;  // row entropies in nats
};

std::vector<AuxInfo> evaluate_aux_batch(const ChainEvaluator& ev, std::size_t nu,
                                        const std::vector<std::vector<double>>& chains, ExecPolicy policy);
std::vector<GPInfo> evaluate_gp_batch(const ChainEvaluator& ev, std::size_t nu, std::size_t nv,
                                      const std::vector<std::vector<double>>& chains, ExecPolicy policy);

/// Region exploration knobs. Each cardinality level enumerates the product
/// lattice of step 1/resolution when it has at most max_grid_chains points
/// (otherwise samples that many lattice chains), then runs restarts x targets
/// randomized coordinate ascents that maximize r2 subject to r1 >= target.
struct GridConfig {
  int resolution = 4;
  int restarts = 16;
  int targets = 5;
  int ascent_evals = 300;
  std::size_t max_grid_chains = 4096;
  std::uint64_t seed = 0;
  ExecPolicy policy = ExecPolicy::parallel;
};

struct ChainRecord {
  std::size_t nu = 0;
  std::size_t nv = 0;  // 0 for AuxChains
  std::vector<double> x;
};

struct RegionResult {
  CornerCurve corners;               // param = running chain index
  std::size_t grid_chains = 0;
  std::size_t ascent_chains = 0;
  bool grid_exhaustive = true;       // every level enumerated its full lattice
  std::size_t clamped = 0;           // R_in corners whose raw r1 was negative
  std::vector<ChainRecord> chains;   // filled only when requested
};

/// Default cardinalities nx1 nx2 + 1 and |U| nx1 + 1.
std::size_t default_u_card(std::size_t nx1, std::size_t nx2);
std::size_t default_v_card(std::size_t nu, std::size_t nx1);

/// Sampled R* corners. Every cardinality 1..u_card is explored, so the
/// result for u_card contains the result for any smaller value.
RegionResult rstar_region(const IFCChannel& ch, std::size_t u_card, const GridConfig& grid = {},
                          bool keep_chains = false);

/// Sampled R_o pentagon corners (two per chain). An inner approximation of R_o.
RegionResult ro_region(const IFCChannel& ch, std::size_t u_card, const GridConfig& grid = {},
                       bool keep_chains = false);

/// Sampled R_in corners over all cardinality pairs up to (u_card, v_card).
RegionResult rin_region(const IFCChannel& ch, std::size_t u_card, std::size_t v_card, const GridConfig& grid = {},
                        bool keep_chains = false);

struct SandwichReport {
  double rin_violation = 0.0;              // against the full R_o sample
  RatePair rin_witness;
  double rin_violation_independent = 0.0;  // against the independently sampled R_o chains only
  bool type_c = false;
  double rstar_violation = 0.0;            // meaningful when type_c
  RatePair rstar_witness;
  std::size_t rin_corners = 0;
  std::size_t ro_corners = 0;
  std::size_t rstar_corners = 0;
  std::size_t clamped = 0;

  [[nodiscard]] bool ok(double tol = 1e-6) const {
    return rin_violation <= tol && (!type_c || rstar_violation <= tol);
  }
};

/// Checks sampled R_in corners (and R* corners for stochastically degraded
/// channels) against the sampled R_o envelope. The R_o sample is the union of
/// independently explored chains, the companion chain of every R_in chain and
/// the chain of every R* corner. Alphabets above 3 raise BudgetExceeded.
SandwichReport verify_sandwich(const IFCChannel& ch, std::size_t u_card, std::size_t v_card,
                               const GridConfig& grid = {});

}  // namespace ifcdms
