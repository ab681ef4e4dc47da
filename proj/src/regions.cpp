#include "ifcdms/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "ifcdms/classify.hpp"
#include "ifcdms/errors.hpp"
#include "ifcdms/simplex.hpp"

namespace ifcdms {

namespace {

constexpr double kZeroBits = 1e-12;
constexpr std::size_t kMaxAlphabet = 4;
constexpr std::size_t kMaxSandwichAlphabet = 3;

double to_bits(double nats) { return nats / std::numbers::ln2; }

double snap(double bits) { return std::abs(bits) < kZeroBits ? 0.0 : std::max(bits, 0.0); }

double plogp_sum(std::span<const double> p) {
  double h = 0.0;
  for (double v : p)
    if (v > 0.0) h -= v * std::log(v);
  return h;
}

// H(cols | rows) for a rows x cols table of joint probabilities.
double cond_entropy(std::span<const double> t, std::size_t rows, std::size_t cols) {
  double h = plogp_sum(t);
  for (std::size_t r = 0; r < rows; ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < cols; ++c) s += t[r * cols + c];
    if (s > 0.0) h += s * std::log(s);
  }
  return h;
}

void check_chain_shapes(const IFCChannel& ch, const JointDistribution& p_ux2) {
  if (p_ux2.rank() != 2 || p_ux2.shape()[1] != ch.nx2() || p_ux2.shape()[0] == 0)
    throw InvalidInput("p(u, x2) must have shape {|U|, nx2}");
}

JointDistribution aux_input_law(const IFCChannel& ch, const AuxChain& c) {
  check_chain_shapes(ch, c.p_ux2);
  const std::size_t nu = c.p_ux2.shape()[0];
  if (c.p_x1_given_u.rows() != nu || c.p_x1_given_u.cols() != ch.nx1())
    throw InvalidInput("p(x1 | u) must be |U| x nx1");
  std::vector<double> p(nu * ch.nx1() * ch.nx2());
  for (std::size_t u = 0; u < nu; ++u)
    for (std::size_t x1 = 0; x1 < ch.nx1(); ++x1)
      for (std::size_t x2 = 0; x2 < ch.nx2(); ++x2)
        p[(u * ch.nx1() + x1) * ch.nx2() + x2] = c.p_ux2.at({u, x2}) * c.p_x1_given_u(u, x1);
  return JointDistribution({nu, ch.nx1(), ch.nx2()}, std::move(p));
}

double cmi_bits(const JointDistribution& j, const Axes& a, const Axes& b, const Axes& c) {
  return conditional_mutual_information(j, a, b, c).bits();
}

void guard_alphabets(const IFCChannel& ch, std::size_t limit) {
  for (std::size_t n : {ch.nx1(), ch.nx2(), ch.ny1(), ch.ny2()})
    if (n > limit)
      throw BudgetExceeded("region exploration supports alphabets of size at most " + std::to_string(limit));
}

// One evaluated chain: the corners it contributes plus the point used to
// steer the ascent.
struct Sample {
  RatePair score;
  RatePair pts[2];
  int n_pts = 1;
  bool clamped = false;
};

bool better(const RatePair& a, const RatePair& b, double target) {
  const bool fa = a.r1 >= target;
  const bool fb = b.r1 >= target;
  if (fa != fb) return fa;
  if (fa) return a.r2 > b.r2 || (a.r2 == b.r2 && a.r1 > b.r1);
  return a.r1 > b.r1;
}

struct LevelOut {
  std::vector<Sample> samples;
  std::vector<std::vector<double>> chains;
  std::size_t grid = 0;
  std::size_t ascent = 0;
  bool exhaustive = true;
};

template <typename Eval>
LevelOut explore_level(const std::vector<std::size_t>& blocks, const GridConfig& cfg, std::uint64_t level_seed,
                       const Eval& eval) {
  if (cfg.resolution < 1 || cfg.restarts < 0 || cfg.targets < 1 || cfg.ascent_evals < 0)
    throw InvalidInput("invalid grid configuration");
  std::size_t dim = 0;
  for (auto b : blocks) dim += b;

  // Grid phase.
  std::size_t count = 1;
  for (auto b : blocks) {
    const std::size_t c = lattice_count(b, cfg.resolution);
    count = (c != 0 && count > std::numeric_limits<std::size_t>::max() / c) ? std::numeric_limits<std::size_t>::max()
                                                                          : count * c;
  }
  LevelOut out;
  std::vector<std::vector<double>> grid;
  if (count <= cfg.max_grid_chains) {
    std::map<std::size_t, std::vector<std::vector<double>>> lists;
    for (auto b : blocks)
      if (!lists.count(b)) lists[b] = lattice_points(b, cfg.resolution);
    std::vector<std::size_t> digit(blocks.size(), 0);
    grid.reserve(count);
    for (std::size_t n = 0; n < count; ++n) {
      std::vector<double> x;
      x.reserve(dim);
      for (std::size_t k = 0; k < blocks.size(); ++k) {
        const auto& pt = lists[blocks[k]][digit[k]];
        x.insert(x.end(), pt.begin(), pt.end());
      }
      grid.push_back(std::move(x));
      for (std::size_t k = blocks.size(); k-- > 0;) {
        if (++digit[k] < lists[blocks[k]].size()) break;
        digit[k] = 0;
      }
    }
  } else {
    out.exhaustive = false;
    SplitMix64 rng(level_seed, 1);
    grid.reserve(cfg.max_grid_chains);
    for (std::size_t n = 0; n < cfg.max_grid_chains; ++n) {
      std::vector<double> x(dim);
      std::size_t off = 0;
      for (auto b : blocks) {
        random_lattice_point(rng, cfg.resolution, std::span<double>(x).subspan(off, b));
        off += b;
      }
      grid.push_back(std::move(x));
    }
  }

  std::vector<Sample> grid_samples(grid.size());
  const auto ng = static_cast<long>(grid.size());
  if (cfg.policy == ExecPolicy::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (long i = 0; i < ng; ++i) grid_samples[static_cast<std::size_t>(i)] = eval(grid[static_cast<std::size_t>(i)]);
  } else {
    for (long i = 0; i < ng; ++i) grid_samples[static_cast<std::size_t>(i)] = eval(grid[static_cast<std::size_t>(i)]);
  }
  double r1_hi = 0.0;
  for (const auto& s : grid_samples) r1_hi = std::max(r1_hi, s.score.r1);

  // Ascent phase: one job per (restart, target).
  const std::size_t n_jobs = static_cast<std::size_t>(cfg.restarts) * static_cast<std::size_t>(cfg.targets);
  std::vector<Sample> job_samples(n_jobs);
  std::vector<std::vector<double>> job_chains(n_jobs);
  auto run_job = [&](std::size_t job) {
    const std::size_t restart = job / static_cast<std::size_t>(cfg.targets);
    const std::size_t t = job % static_cast<std::size_t>(cfg.targets);
    const double target = cfg.targets == 1 ? 0.0 : r1_hi * static_cast<double>(t) / static_cast<double>(cfg.targets - 1);
    SplitMix64 start_rng(level_seed, 1000 + restart);
    std::vector<double> x(dim);
    std::size_t off = 0;
    for (auto b : blocks) {
      random_simplex_point(start_rng, std::span<double>(x).subspan(off, b));
      off += b;
    }
    SplitMix64 rng(level_seed, 1'000'000 + job);
    Sample cur = eval(x);
    double step = 0.5;
    int misses = 0;
    std::vector<double> y;
    for (int e = 0; e < cfg.ascent_evals; ++e) {
      const std::size_t k = rng.below(blocks.size());
      const std::size_t b = blocks[k];
      if (b < 2) continue;
      std::size_t start = 0;
      for (std::size_t j = 0; j < k; ++j) start += blocks[j];
      const std::size_t i = rng.below(b);
      std::size_t j = rng.below(b - 1);
      if (j >= i) ++j;
      const double move = std::min(x[start + i], step * rng.uniform());
      if (move <= 0.0) continue;
      y = x;
      y[start + i] -= move;
      y[start + j] += move;
      Sample s = eval(y);
      if (better(s.score, cur.score, target)) {
        x.swap(y);
        cur = s;
      } else if (++misses % 20 == 0) {
        step = std::max(step * 0.5, 1e-4);
      }
    }
    job_samples[job] = cur;
    job_chains[job] = std::move(x);
  };
  const auto nj = static_cast<long>(n_jobs);
  if (cfg.policy == ExecPolicy::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long j = 0; j < nj; ++j) run_job(static_cast<std::size_t>(j));
  } else {
    for (long j = 0; j < nj; ++j) run_job(static_cast<std::size_t>(j));
  }

  out.grid = grid.size();
  out.ascent = n_jobs;
  out.samples = std::move(grid_samples);
  out.samples.insert(out.samples.end(), job_samples.begin(), job_samples.end());
  out.chains = std::move(grid);
  for (auto& c : job_chains) out.chains.push_back(std::move(c));
  return out;
}

std::uint64_t level_seed(std::uint64_t seed, std::uint64_t tag, std::size_t nu, std::size_t nv) {
  SplitMix64 rng(seed, tag * 1'000'003ULL + nu * 1009ULL + nv);
  return rng.next();
}

void append_level(RegionResult& res, LevelOut&& lv, std::size_t nu, std::size_t nv, bool keep) {
  res.grid_chains += lv.grid;
  res.ascent_chains += lv.ascent;
  res.grid_exhaustive = res.grid_exhaustive && lv.exhaustive;
  for (std::size_t i = 0; i < lv.samples.size(); ++i) {
    const auto& s = lv.samples[i];
    const double param = static_cast<double>(res.corners.size());
    for (int k = 0; k < s.n_pts; ++k) res.corners.add(param, s.pts[k]);
    if (s.clamped) ++res.clamped;
    if (keep) res.chains.push_back({nu, nv, std::move(lv.chains[i])});
  }
}

Sample aux_sample_rstar(const AuxInfo& a) {
  Sample s;
  s.pts[0] = {a.i_x1y1_ux2, a.i_ux2_y2};
  s.score = s.pts[0];
  return s;
}

OuterBounds bounds_of(const AuxInfo& a) {
  return {a.i_x1y1_x2, a.i_ux2_y2, a.i_x1y1_ux2 + a.i_ux2_y2};
}

Sample aux_sample_ro(const AuxInfo& a) {
  Sample s;
  const auto [pa, pb] = pentagon_corners(bounds_of(a));
  s.pts[0] = pa;
  s.pts[1] = pb;
  s.n_pts = 2;
  s.score = pa;
  return s;
}

Sample gp_sample(const GPInfo& g) {
  Sample s;
  const double raw = g.i_v_y1 - g.i_v_ux2;
  s.score = {raw, g.i_ux2_y2};
  s.pts[0] = {snap(raw), g.i_ux2_y2};
  s.clamped = raw < -kZeroBits;
  return s;
}

RegionResult aux_region(const IFCChannel& ch, std::size_t u_card, const GridConfig& grid, bool keep,
                        bool outer) {
  guard_alphabets(ch, kMaxAlphabet);
  if (u_card < 1) throw InvalidInput("u_card must be >= 1");
  const ChainEvaluator ev(ch);
  RegionResult res;
  for (std::size_t nu = 1; nu <= u_card; ++nu) {
    auto eval = [&](std::span<const double> x) {
      const AuxInfo a = ev.aux(nu, x);
      return outer ? aux_sample_ro(a) : aux_sample_rstar(a);
    };
    append_level(res, explore_level(aux_blocks(ch.nx1(), ch.nx2(), nu), grid, level_seed(grid.seed, 1, nu, 0), eval),
                 nu, 0, keep);
  }
  return res;
}

}  // namespace

RatePair rstar_corner(const IFCChannel& ch, const AuxChain& chain) {
  const auto j = induced_joint(ch, aux_input_law(ch, chain));
  return {cmi_bits(j, {1}, {3}, {0, 2}), cmi_bits(j, {0, 2}, {4}, {})};
}

OuterBounds router_corner(const IFCChannel& ch, const AuxChain& chain) {
  const auto j = induced_joint(ch, aux_input_law(ch, chain));
  const double r2 = cmi_bits(j, {0, 2}, {4}, {});
  return {cmi_bits(j, {1}, {3}, {2}), r2, cmi_bits(j, {1}, {3}, {0, 2}) + r2};
}

RinCorner rin_corner(const IFCChannel& ch, const GPChain& c) {
  check_chain_shapes(ch, c.p_ux2);
  const std::size_t nu = c.p_ux2.shape()[0];
  const std::size_t nx1 = ch.nx1(), nx2 = ch.nx2(), ny1 = ch.ny1(), ny2 = ch.ny2();
  if (c.p_v_given_ux2.rows() != nu * nx2) throw InvalidInput("p(v | u, x2) must have |U| nx2 rows");
  const std::size_t nv = c.p_v_given_ux2.cols();
  if (c.p_x1_given_vux2.rows() != nv * nu * nx2 || c.p_x1_given_vux2.cols() != nx1)
    throw InvalidInput("p(x1 | v, u, x2) must be (|V| |U| nx2) x nx1");
  // Axes (u, v, x1, x2, y1, y2).
  std::vector<double> p(nu * nv * nx1 * nx2 * ny1 * ny2);
  std::size_t idx = 0;
  for (std::size_t u = 0; u < nu; ++u)
    for (std::size_t v = 0; v < nv; ++v)
      for (std::size_t x1 = 0; x1 < nx1; ++x1)
        for (std::size_t x2 = 0; x2 < nx2; ++x2) {
          const double w = c.p_ux2.at({u, x2}) * c.p_v_given_ux2(u * nx2 + x2, v) *
                           c.p_x1_given_vux2((v * nu + u) * nx2 + x2, x1);
          for (std::size_t y1 = 0; y1 < ny1; ++y1)
            for (std::size_t y2 = 0; y2 < ny2; ++y2) p[idx++] = w * ch(x1, x2, y1, y2);
        }
  const JointDistribution j({nu, nv, nx1, nx2, ny1, ny2}, std::move(p));
  const double raw = cmi_bits(j, {1}, {4}, {}) - cmi_bits(j, {1}, {0, 3}, {});
  return {{std::max(raw, 0.0), cmi_bits(j, {0, 3}, {5}, {})}, raw < -kZeroBits};
}

std::pair<RatePair, RatePair> pentagon_corners(const OuterBounds& b) {
  return {{std::max(0.0, std::min(b.r1_max, b.sum_max - b.r2_max)), b.r2_max},
          {b.r1_max, std::max(0.0, std::min(b.r2_max, b.sum_max - b.r1_max))}};
}

std::vector<std::size_t> aux_blocks(std::size_t nx1, std::size_t nx2, std::size_t nu) {
  std::vector<std::size_t> b{nu * nx2};
  b.insert(b.end(), nu, nx1);
  return b;
}

std::vector<std::size_t> gp_blocks(std::size_t nx1, std::size_t nx2, std::size_t nu, std::size_t nv) {
  std::vector<std::size_t> b{nu * nx2};
  b.insert(b.end(), nu * nx2, nv);
  b.insert(b.end(), nv * nu * nx2, nx1);
  return b;
}

std::vector<double> flatten(const AuxChain& c) {
  std::vector<double> x(c.p_ux2.probs().begin(), c.p_ux2.probs().end());
  x.insert(x.end(), c.p_x1_given_u.data().begin(), c.p_x1_given_u.data().end());
  return x;
}

std::vector<double> flatten(const GPChain& c) {
  std::vector<double> x(c.p_ux2.probs().begin(), c.p_ux2.probs().end());
  x.insert(x.end(), c.p_v_given_ux2.data().begin(), c.p_v_given_ux2.data().end());
  x.insert(x.end(), c.p_x1_given_vux2.data().begin(), c.p_x1_given_vux2.data().end());
  return x;
}

AuxChain aux_chain_from_flat(std::size_t nx1, std::size_t nx2, std::size_t nu, std::span<const double> x) {
  if (x.size() != nu * nx2 + nu * nx1) throw InvalidInput("flat AuxChain has the wrong length");
  const auto a = x.subspan(0, nu * nx2);
  const auto b = x.subspan(nu * nx2);
  return {JointDistribution({nu, nx2}, {a.begin(), a.end()}), StochasticMatrix(nu, nx1, {b.begin(), b.end()})};
}

GPChain gp_chain_from_flat(std::size_t nx1, std::size_t nx2, std::size_t nu, std::size_t nv,
                           std::span<const double> x) {
  const std::size_t na = nu * nx2, nb = nu * nx2 * nv, nc = nv * nu * nx2 * nx1;
  if (x.size() != na + nb + nc) throw InvalidInput("flat GPChain has the wrong length");
  const auto a = x.subspan(0, na);
  const auto b = x.subspan(na, nb);
  const auto c = x.subspan(na + nb);
  return {JointDistribution({nu, nx2}, {a.begin(), a.end()}), StochasticMatrix(nu * nx2, nv, {b.begin(), b.end()}),
          StochasticMatrix(nv * nu * nx2, nx1, {c.begin(), c.end()})};
}

std::vector<double> companion_aux_flat(std::size_t nx1, std::size_t nx2, std::size_t nu, std::size_t nv,
                                       std::span<const double> gp) {
  const std::size_t nup = nu * nx2;
  const auto a = gp.subspan(0, nu * nx2);
  const auto q = gp.subspan(nu * nx2, nu * nx2 * nv);
  const auto r = gp.subspan(nu * nx2 + nu * nx2 * nv);
  std::vector<double> x(nup * nx2 + nup * nx1, 0.0);
  for (std::size_t u = 0; u < nu; ++u)
    for (std::size_t x2 = 0; x2 < nx2; ++x2) {
      const std::size_t up = u * nx2 + x2;
      x[up * nx2 + x2] = a[u * nx2 + x2];
      double* row = &x[nup * nx2 + up * nx1];
      for (std::size_t v = 0; v < nv; ++v)
        for (std::size_t x1 = 0; x1 < nx1; ++x1)
          row[x1] += q[up * nv + v] * r[((v * nu + u) * nx2 + x2) * nx1 + x1];
    }
  return x;
}

ChainEvaluator::ChainEvaluator(const IFCChannel& ch)
    : nx1_(ch.nx1()), nx2_(ch.nx2()), ny1_(ch.ny1()), ny2_(ch.ny2()) {
  const auto mk = marginal_kernels(ch);
  k1_.assign(mk.k1.data().begin(), mk.k1.data().end());
  k2_.assign(mk.k2.data().begin(), mk.k2.data().end());
  const std::size_t nx = nx1_ * nx2_;
  h1_.resize(nx);
  h2_.resize(nx);
  for (std::size_t x = 0; x < nx; ++x) {
    h1_[x] = plogp_sum(mk.k1.row(x));
    h2_[x] = plogp_sum(mk.k2.row(x));
  }
}

namespace {

// Shared tail: given p(u, x1, x2), compute the three AuxInfo quantities.
AuxInfo aux_from_law(std::span<const double> pux, std::size_t nu, std::size_t nx1, std::size_t nx2,
                     std::size_t ny1, std::size_t ny2, const std::vector<double>& k1, const std::vector<double>& k2,
                     const std::vector<double>& h1) {
  // H(Y1 | X1, X2)
  double h_y1_x = 0.0;
  std::vector<double> y1x2(nx2 * ny1, 0.0), y1ux2(nu * nx2 * ny1, 0.0);
  std::vector<double> y2(ny2, 0.0), y2ux2(nu * nx2 * ny2, 0.0);
  for (std::size_t u = 0; u < nu; ++u)
    for (std::size_t x1 = 0; x1 < nx1; ++x1)
      for (std::size_t x2 = 0; x2 < nx2; ++x2) {
        const double w = pux[(u * nx1 + x1) * nx2 + x2];
        if (w == 0.0) continue;
        const std::size_t x = x1 * nx2 + x2;
        h_y1_x += w * h1[x];
        for (std::size_t y = 0; y < ny1; ++y) {
          const double v = w * k1[x * ny1 + y];
          y1x2[x2 * ny1 + y] += v;
          y1ux2[(u * nx2 + x2) * ny1 + y] += v;
        }
        for (std::size_t y = 0; y < ny2; ++y) {
          const double v = w * k2[x * ny2 + y];
          y2[y] += v;
          y2ux2[(u * nx2 + x2) * ny2 + y] += v;
        }
      }
  AuxInfo out;
  out.i_x1y1_x2 = snap(to_bits(cond_entropy(y1x2, nx2, ny1) - h_y1_x));
  out.i_x1y1_ux2 = snap(to_bits(cond_entropy(y1ux2, nu * nx2, ny1) - h_y1_x));
  out.i_ux2_y2 = snap(to_bits(plogp_sum(y2) - cond_entropy(y2ux2, nu * nx2, ny2)));
  return out;
}

}  // namespace

AuxInfo ChainEvaluator::aux(std::size_t nu, std::span<const double> x) const {
  std::vector<double> pux(nu * nx1_ * nx2_);
  for (std::size_t u = 0; u < nu; ++u)
    for (std::size_t x1 = 0; x1 < nx1_; ++x1)
      for (std::size_t x2 = 0; x2 < nx2_; ++x2)
        pux[(u * nx1_ + x1) * nx2_ + x2] = x[u * nx2_ + x2] * x[nu * nx2_ + u * nx1_ + x1];
  return aux_from_law(pux, nu, nx1_, nx2_, ny1_, ny2_, k1_, k2_, h1_);
}

GPInfo ChainEvaluator::gp(std::size_t nu, std::size_t nv, std::span<const double> x) const {
  const std::size_t nux2 = nu * nx2_;
  const auto a = x.subspan(0, nux2);
  const auto q = x.subspan(nux2, nux2 * nv);
  const auto r = x.subspan(nux2 + nux2 * nv);
  std::vector<double> vux2(nux2 * nv);  // rows (u, x2), cols v
  std::vector<double> vy1(nv * ny1_, 0.0);
  std::vector<double> pux(nu * nx1_ * nx2_, 0.0);
  for (std::size_t u = 0; u < nu; ++u)
    for (std::size_t x2 = 0; x2 < nx2_; ++x2) {
      const std::size_t ux = u * nx2_ + x2;
      for (std::size_t v = 0; v < nv; ++v) {
        const double w = a[ux] * q[ux * nv + v];
        vux2[ux * nv + v] = w;
        if (w == 0.0) continue;
        for (std::size_t x1 = 0; x1 < nx1_; ++x1) {
          const double wx = w * r[((v * nu + u) * nx2_ + x2) * nx1_ + x1];
          pux[(u * nx1_ + x1) * nx2_ + x2] += wx;
          const std::size_t xi = x1 * nx2_ + x2;
          for (std::size_t y = 0; y < ny1_; ++y) vy1[v * ny1_ + y] += wx * k1_[xi * ny1_ + y];
        }
      }
    }
  std::vector<double> pv(nv, 0.0), py1(ny1_, 0.0);
  for (std::size_t v = 0; v < nv; ++v)
    for (std::size_t y = 0; y < ny1_; ++y) {
      pv[v] += vy1[v * ny1_ + y];
      py1[y] += vy1[v * ny1_ + y];
    }
  GPInfo out;
  out.i_v_y1 = snap(to_bits(plogp_sum(py1) - cond_entropy(vy1, nv, ny1_)));
  out.i_v_ux2 = snap(to_bits(plogp_sum(pv) - cond_entropy(vux2, nux2, nv)));
  out.i_ux2_y2 = aux_from_law(pux, nu, nx1_, nx2_, ny1_, ny2_, k1_, k2_, h1_).i_ux2_y2;
  return out;
}

std::vector<AuxInfo> evaluate_aux_batch(const ChainEvaluator& ev, std::size_t nu,
                                        const std::vector<std::vector<double>>& chains, ExecPolicy policy) {
  std::vector<AuxInfo> out(chains.size());
  const auto n = static_cast<long>(chains.size());
  if (policy == ExecPolicy::parallel) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = ev.aux(nu, chains[static_cast<std::size_t>(i)]);
  } else {
    for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = ev.aux(nu, chains[static_cast<std::size_t>(i)]);
  }
  return out;
}

std::vector<GPInfo> evaluate_gp_batch(const ChainEvaluator& ev, std::size_t nu, std::size_t nv,
                                      const std::vector<std::vector<double>>& chains, ExecPolicy policy) {
  std::vector<GPInfo> out(chains.size());
  const auto n = static_cast<long>(chains.size());
  if (policy == ExecPolicy::parallel) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = ev.gp(nu, nv, chains[static_cast<std::size_t>(i)]);
  } else {
    for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = ev.gp(nu, nv, chains[static_cast<std::size_t>(i)]);
  }
  return out;
}

std::size_t default_u_card(std::size_t nx1, std::size_t nx2) { return nx1 * nx2 + 1; }
std::size_t default_v_card(std::size_t nu, std::size_t nx1) { return nu * nx1 + 1; }

RegionResult rstar_region(const IFCChannel& ch, std::size_t u_card, const GridConfig& grid, bool keep_chains) {
  return aux_region(ch, u_card, grid, keep_chains, false);
}

RegionResult ro_region(const IFCChannel& ch, std::size_t u_card, const GridConfig& grid, bool keep_chains) {
  return aux_region(ch, u_card, grid, keep_chains, true);
}

RegionResult rin_region(const IFCChannel& ch, std::size_t u_card, std::size_t v_card, const GridConfig& grid,
                        bool keep_chains) {
  guard_alphabets(ch, kMaxAlphabet);
  if (u_card < 1 || v_card < 1) throw InvalidInput("u_card and v_card must be >= 1");
  const ChainEvaluator ev(ch);
  RegionResult res;
  for (std::size_t nu = 1; nu <= u_card; ++nu)
    for (std::size_t nv = 1; nv <= v_card; ++nv) {
      auto eval = [&](std::span<const double> x) { return gp_sample(ev.gp(nu, nv, x)); };
      append_level(res,
                   explore_level(gp_blocks(ch.nx1(), ch.nx2(), nu, nv), grid, level_seed(grid.seed, 2, nu, nv), eval),
                   nu, nv, keep_chains);
    }
  return res;
}

SandwichReport verify_sandwich(const IFCChannel& ch, std::size_t u_card, std::size_t v_card,
                               const GridConfig& grid) {
  guard_alphabets(ch, kMaxSandwichAlphabet);
  const ChainEvaluator ev(ch);
  SandwichReport rep;

  const RegionResult ro = ro_region(ch, u_card, grid);
  const RegionResult rin = rin_region(ch, u_card, v_card, grid, true);
  rep.ro_corners = ro.corners.size();
  rep.rin_corners = rin.corners.size();
  rep.clamped = rin.clamped;

  std::vector<RatePair> independent;
  for (const auto& p : ro.corners.points) independent.push_back(p.rate);
  std::vector<RatePair> envelope_pts = independent;
  for (const auto& c : rin.chains) {
    const auto x = companion_aux_flat(ch.nx1(), ch.nx2(), c.nu, c.nv, c.x);
    const auto [pa, pb] = pentagon_corners(bounds_of(ev.aux(c.nu * ch.nx2(), x)));
    envelope_pts.push_back(pa);
    envelope_pts.push_back(pb);
  }

  rep.type_c = std::holds_alternative<Feasible>(check_type_c(ch, Direction::one_to_two));
  RegionResult rstar;
  if (rep.type_c) {
    rstar = rstar_region(ch, u_card, grid, true);
    rep.rstar_corners = rstar.corners.size();
    for (const auto& c : rstar.chains) {
      const auto [pa, pb] = pentagon_corners(bounds_of(ev.aux(c.nu, c.x)));
      envelope_pts.push_back(pa);
      envelope_pts.push_back(pb);
    }
  }

  const RateRegion envelope = convex_downset_hull(envelope_pts);
  const RateRegion indep = convex_downset_hull(independent);
  rep.rin_violation = -std::numeric_limits<double>::infinity();
  rep.rin_violation_independent = -std::numeric_limits<double>::infinity();
  for (const auto& p : rin.corners.points) {
    const double v = violation(envelope, p.rate);
    if (v > rep.rin_violation) {
      rep.rin_violation = v;
      rep.rin_witness = p.rate;
    }
    rep.rin_violation_independent = std::max(rep.rin_violation_independent, violation(indep, p.rate));
  }
  rep.rstar_violation = -std::numeric_limits<double>::infinity();
  for (const auto& p : rstar.corners.points) {
    const double v = violation(envelope, p.rate);
    if (v > rep.rstar_violation) {
      rep.rstar_violation = v;
      rep.rstar_witness = p.rate;
    }
  }
  if (!rep.type_c) rep.rstar_violation = 0.0;
  return rep;
}

}  // namespace ifcdms
