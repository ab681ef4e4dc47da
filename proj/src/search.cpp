#include "ifcdms/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ifcdms/errors.hpp"
#include "ifcdms/simplex.hpp"

namespace ifcdms {

namespace {

constexpr double kLogFloor = 1e-300;
constexpr double kGradClamp = 1e3;

}  // namespace

MiGapObjective::MiGapObjective(const IFCChannel& ch, Param param, std::size_t nu,
                               std::vector<Term> terms)
    : param_(param),
      nu_(nu),
      nx1_(ch.nx1()),
      nx2_(ch.nx2()),
      n_states_(nu * ch.nx1() * ch.nx2()),
      kernels_(marginal_kernels(ch)),
      terms_(std::move(terms)) {
  if (nu_ == 0) throw InvalidInput("auxiliary alphabet must have at least one symbol");
  if (param_ == Param::product && nu_ != 1) throw InvalidInput("product inputs carry no auxiliary");
  for (const auto& t : terms_) {
    if (t.group_of_state.size() != n_states_) throw InvalidInput("term grouping has wrong size");
    for (auto g : t.group_of_state)
      if (g >= t.n_groups) throw InvalidInput("term group index out of range");
  }
  if (param_ == Param::joint)
    blocks_ = {n_states_};
  else
    blocks_ = {nx1_, nx2_};
  dim_ = 0;
  for (auto b : blocks_) dim_ += b;
}

void MiGapObjective::state_law(std::span<const double> x, std::span<double> pi) const {
  if (param_ == Param::joint) {
    std::copy(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n_states_), pi.begin());
    return;
  }
  for (std::size_t x1 = 0; x1 < nx1_; ++x1)
    for (std::size_t x2 = 0; x2 < nx2_; ++x2) pi[x1 * nx2_ + x2] = x[x1] * x[nx1_ + x2];
}

double MiGapObjective::term_value(const Term& t, std::span<const double> pi,
                                  std::span<double> dpi) const {
  const StochasticMatrix& k = t.output == Output::y1 ? kernels_.k1 : kernels_.k2;
  const std::size_t ny = k.cols();
  const std::size_t nx = nx1_ * nx2_;

  std::vector<double> pwy(t.n_groups * ny, 0.0);
  std::vector<double> pw(t.n_groups, 0.0);
  std::vector<double> py(ny, 0.0);
  for (std::size_t s = 0; s < n_states_; ++s) {
    const double m = pi[s];
    if (m == 0.0) continue;
    const std::size_t w = t.group_of_state[s];
    const auto row = k.row(s % nx);
    pw[w] += m;
    for (std::size_t y = 0; y < ny; ++y) pwy[w * ny + y] += m * row[y];
  }
  for (std::size_t w = 0; w < t.n_groups; ++w)
    for (std::size_t y = 0; y < ny; ++y) py[y] += pwy[w * ny + y];

  double info = 0.0;
  for (std::size_t w = 0; w < t.n_groups; ++w)
    for (std::size_t y = 0; y < ny; ++y) {
      const double v = pwy[w * ny + y];
      if (v > 0.0) info += v * std::log(v / (pw[w] * py[y]));
    }

  if (!dpi.empty()) {
    for (std::size_t s = 0; s < n_states_; ++s) {
      const std::size_t w = t.group_of_state[s];
      const auto row = k.row(s % nx);
      double g = -1.0;
      for (std::size_t y = 0; y < ny; ++y) {
        if (row[y] == 0.0) continue;
        // p(y|w); an empty group takes this state's kernel row
        const double cond = pw[w] > 0.0 ? pwy[w * ny + y] / pw[w] : row[y];
        g += row[y] * std::log(std::max(cond, kLogFloor) / std::max(py[y], kLogFloor));
      }
      dpi[s] += t.sign * std::clamp(g, -kGradClamp, kGradClamp);
    }
  }
  return t.sign * info;
}

double MiGapObjective::value(std::span<const double> x) const {
  std::vector<double> pi(n_states_);
  state_law(x, pi);
  double v = 0.0;
  for (const auto& t : terms_) v += term_value(t, pi, {});
  return v;
}

double MiGapObjective::value_and_gradient(std::span<const double> x, std::span<double> grad) const {
  std::vector<double> pi(n_states_);
  state_law(x, pi);
  std::vector<double> dpi(n_states_, 0.0);
  double v = 0.0;
  for (const auto& t : terms_) v += term_value(t, pi, dpi);
  if (param_ == Param::joint) {
    std::copy(dpi.begin(), dpi.end(), grad.begin());
  } else {
    std::fill(grad.begin(), grad.begin() + static_cast<std::ptrdiff_t>(dim_), 0.0);
    for (std::size_t x1 = 0; x1 < nx1_; ++x1)
      for (std::size_t x2 = 0; x2 < nx2_; ++x2) {
        const double d = dpi[x1 * nx2_ + x2];
        grad[x1] += x[nx1_ + x2] * d;
        grad[nx1_ + x2] += x[x1] * d;
      }
  }
  return v;
}

namespace {

void project_blocks(const std::vector<std::size_t>& blocks, std::span<double> x) {
  std::size_t off = 0;
  for (auto b : blocks) {
    project_to_simplex(x.subspan(off, b));
    off += b;
  }
}

double ascend_one(const MiGapObjective& obj, std::span<double> x, const AscentConfig& cfg) {
  const std::size_t d = obj.dim();
  std::vector<double> g(d), trial(d), g_trial(d);
  double val = obj.value_and_gradient(x, g);
  double step = cfg.step;
  for (int it = 0; it < cfg.iterations && step > 1e-10; ++it) {
    for (std::size_t i = 0; i < d; ++i) trial[i] = x[i] + step * g[i];
    project_blocks(obj.block_sizes(), trial);
    const double v = obj.value_and_gradient(trial, g_trial);
    if (v >= val) {
      std::copy(trial.begin(), trial.end(), x.begin());
      std::swap(g, g_trial);
      val = v;
    } else {
      step *= 0.5;
    }
  }
  return val;
}

}  // namespace

void evaluate_points(const MiGapObjective& obj, std::span<const double> points,
                     std::span<double> values, ExecPolicy policy) {
  const std::size_t d = obj.dim();
  const auto n = static_cast<std::ptrdiff_t>(values.size());
  if (policy == ExecPolicy::parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
      values[static_cast<std::size_t>(i)] = obj.value(points.subspan(static_cast<std::size_t>(i) * d, d));
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i)
      values[static_cast<std::size_t>(i)] = obj.value(points.subspan(static_cast<std::size_t>(i) * d, d));
  }
}

void ascend_points(const MiGapObjective& obj, std::span<double> starts, std::span<double> values,
                   const AscentConfig& cfg, ExecPolicy policy) {
  const std::size_t d = obj.dim();
  const auto n = static_cast<std::ptrdiff_t>(values.size());
  if (policy == ExecPolicy::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i)
      values[static_cast<std::size_t>(i)] =
          ascend_one(obj, starts.subspan(static_cast<std::size_t>(i) * d, d), cfg);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i)
      values[static_cast<std::size_t>(i)] =
          ascend_one(obj, starts.subspan(static_cast<std::size_t>(i) * d, d), cfg);
  }
}

SearchOutcome falsify(const MiGapObjective& obj, const FalsifyConfig& cfg) {
  const auto& blocks = obj.block_sizes();
  const std::size_t d = obj.dim();

  std::size_t full = 1;
  for (auto b : blocks) {
    const std::size_t c = lattice_count(b, cfg.resolution);
    full = (c != 0 && full > std::numeric_limits<std::size_t>::max() / c)
               ? std::numeric_limits<std::size_t>::max()
               : full * c;
  }

  std::vector<double> grid;
  std::size_t n_grid = 0;
  if (full <= cfg.max_grid_points) {
    std::vector<std::vector<std::vector<double>>> per_block;
    for (auto b : blocks) per_block.push_back(lattice_points(b, cfg.resolution));
    n_grid = full;
    grid.reserve(n_grid * d);
    std::vector<std::size_t> idx(blocks.size(), 0);
    for (std::size_t n = 0; n < n_grid; ++n) {
      for (std::size_t k = 0; k < blocks.size(); ++k)
        grid.insert(grid.end(), per_block[k][idx[k]].begin(), per_block[k][idx[k]].end());
      for (std::size_t k = blocks.size(); k-- > 0;) {
        if (++idx[k] < per_block[k].size()) break;
        idx[k] = 0;
      }
    }
  } else {
    n_grid = cfg.max_grid_points;
    grid.resize(n_grid * d);
    SplitMix64 rng(cfg.seed, 1);
    for (std::size_t n = 0; n < n_grid; ++n) {
      std::size_t off = n * d;
      for (auto b : blocks) {
        random_lattice_point(rng, cfg.resolution, std::span<double>(grid).subspan(off, b));
        off += b;
      }
    }
  }
  std::vector<double> grid_values(n_grid);
  evaluate_points(obj, grid, grid_values, cfg.policy);

  const auto n_restarts = static_cast<std::size_t>(std::max(cfg.restarts, 0));
  std::vector<double> starts(n_restarts * d);
  for (std::size_t r = 0; r < n_restarts; ++r) {
    SplitMix64 rng(cfg.seed, 1000 + r);
    std::size_t off = r * d;
    for (auto b : blocks) {
      random_simplex_point(rng, std::span<double>(starts).subspan(off, b));
      off += b;
    }
  }
  std::vector<double> restart_values(n_restarts);
  ascend_points(obj, starts, restart_values, cfg.ascent, cfg.policy);

  SearchOutcome out{-std::numeric_limits<double>::infinity(), {}, 0, n_grid + n_restarts};
  for (std::size_t i = 0; i < n_grid; ++i)
    if (grid_values[i] > out.best_value) {
      out.best_value = grid_values[i];
      out.best_index = i;
    }
  for (std::size_t r = 0; r < n_restarts; ++r)
    if (restart_values[r] > out.best_value) {
      out.best_value = restart_values[r];
      out.best_index = n_grid + r;
    }
  if (out.best_index < n_grid)
    out.best_point.assign(grid.begin() + static_cast<std::ptrdiff_t>(out.best_index * d),
                          grid.begin() + static_cast<std::ptrdiff_t>((out.best_index + 1) * d));
  else if (out.points_tested > 0)
    out.best_point.assign(starts.begin() + static_cast<std::ptrdiff_t>((out.best_index - n_grid) * d),
                          starts.begin() + static_cast<std::ptrdiff_t>((out.best_index - n_grid + 1) * d));
  return out;
}

}  // namespace ifcdms
