#include "ifcdms/info.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "ifcdms/errors.hpp"

namespace ifcdms {

InfoValue clamp_info(double nats) {
  if (!std::isfinite(nats)) throw ConsistencyError("non-finite information value");
  if (nats < -kNegativeInfoTol) {
    std::ostringstream msg;
    msg << "negative information value " << nats << " nats";
    throw ConsistencyError(msg.str());
  }
  return InfoValue{std::max(nats, 0.0)};
}

JointDistribution::JointDistribution(std::vector<std::size_t> shape, std::vector<double> probs)
    : shape_(std::move(shape)), probs_(std::move(probs)) {
  if (shape_.empty()) throw InvalidInput("distribution needs at least one axis");
  std::size_t n = 1;
  for (auto s : shape_) {
    if (s == 0) throw InvalidInput("alphabet sizes must be >= 1");
    n *= s;
  }
  if (n != probs_.size()) {
    std::ostringstream msg;
    msg << "probability array has " << probs_.size() << " entries, shape needs " << n;
    throw InvalidInput(msg.str());
  }
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw InvalidInput("probabilities must be finite and >= 0");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kNormalizationTol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "probabilities sum to " << sum << ", not 1";
    throw InvalidInput(msg.str());
  }
  if (sum != 1.0)
    for (double& p : probs_) p /= sum;
}

JointDistribution JointDistribution::uniform(std::vector<std::size_t> shape) {
  std::size_t n = 1;
  for (auto s : shape) n *= s;
  if (n == 0) throw InvalidInput("alphabet sizes must be >= 1");
  return JointDistribution(std::move(shape), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

std::size_t JointDistribution::offset(std::span<const std::size_t> index) const {
  if (index.size() != shape_.size()) throw InvalidInput("index rank mismatch");
  std::size_t off = 0;
  for (std::size_t k = 0; k < shape_.size(); ++k) {
    if (index[k] >= shape_[k]) throw InvalidInput("index out of range");
    off = off * shape_[k] + index[k];
  }
  return off;
}

double JointDistribution::at(std::initializer_list<std::size_t> index) const {
  return probs_[offset(std::span<const std::size_t>(index.begin(), index.size()))];
}

JointDistribution JointDistribution::marginal(std::span<const std::size_t> axes) const {
  const std::size_t rank = shape_.size();
  std::vector<std::size_t> out_shape;
  std::vector<std::size_t> out_stride_of_axis(rank, 0);
  std::vector<bool> seen(rank, false);
  for (auto a : axes) {
    if (a >= rank) throw InvalidInput("axis out of range");
    if (seen[a]) throw InvalidInput("axis listed twice");
    seen[a] = true;
    out_shape.push_back(shape_[a]);
  }
  if (out_shape.empty()) return JointDistribution({1}, {1.0});

  std::size_t stride = 1;
  for (std::size_t k = axes.size(); k-- > 0;) {
    out_stride_of_axis[axes[k]] = stride;
    stride *= shape_[axes[k]];
  }

  std::vector<double> out(stride, 0.0);
  std::vector<std::size_t> idx(rank, 0);
  std::size_t out_off = 0;
  for (double p : probs_) {
    out[out_off] += p;
    // odometer increment, last axis fastest
    for (std::size_t k = rank; k-- > 0;) {
      if (++idx[k] < shape_[k]) {
        out_off += out_stride_of_axis[k];
        break;
      }
      out_off -= out_stride_of_axis[k] * (shape_[k] - 1);
      idx[k] = 0;
    }
  }
  // Marginal sums drift by at most a few ulps from the parent.
  return JointDistribution(std::move(out_shape), std::move(out));
}

double entropy_nats(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs)
    if (p > 0.0) h -= p * std::log(p);
  return h;
}

double JointDistribution::entropy_of(std::span<const std::size_t> axes) const {
  if (axes.empty()) return 0.0;
  if (axes.size() == shape_.size()) {
    bool identity = true;
    for (std::size_t k = 0; k < axes.size(); ++k) identity = identity && axes[k] == k;
    if (identity) return entropy_nats(probs_);
  }
  return entropy_nats(marginal(axes).probs());
}

InfoValue entropy(const JointDistribution& dist) { return InfoValue{entropy_nats(dist.probs())}; }

InfoValue mutual_information(const JointDistribution& joint) {
  if (joint.rank() != 2) throw InvalidInput("mutual_information expects a two-axis joint");
  return conditional_mutual_information(joint, {0}, {1}, {});
}

InfoValue conditional_mutual_information(const JointDistribution& joint) {
  if (joint.rank() != 3) throw InvalidInput("conditional_mutual_information expects a three-axis joint");
  return conditional_mutual_information(joint, {0}, {1}, {2});
}

namespace {

Axes concat(const Axes& x, const Axes& y) {
  Axes out = x;
  out.insert(out.end(), y.begin(), y.end());
  return out;
}

}  // namespace

InfoValue conditional_mutual_information(const JointDistribution& joint, const Axes& a,
                                         const Axes& b, const Axes& c) {
  std::vector<bool> used(joint.rank(), false);
  for (const Axes* group : {&a, &b, &c})
    for (auto ax : *group) {
      if (ax >= joint.rank()) throw InvalidInput("axis out of range");
      if (used[ax]) throw InvalidInput("axis groups must be disjoint");
      used[ax] = true;
    }
  if (a.empty() || b.empty()) return InfoValue{0.0};
  // I(A;B|C) = H(A,C) + H(B,C) - H(A,B,C) - H(C)
  const double h_ac = joint.entropy_of(concat(a, c));
  const double h_bc = joint.entropy_of(concat(b, c));
  const double h_abc = joint.entropy_of(concat(concat(a, b), c));
  const double h_c = joint.entropy_of(c);
  return clamp_info(h_ac + h_bc - h_abc - h_c);
}

CsiszarSums csiszar_sum_check(const JointDistribution& joint, std::size_t n) {
  if (n == 0) throw InvalidInput("csiszar_sum_check needs n >= 1");
  if (joint.rank() != 2 * n + 1) throw InvalidInput("csiszar_sum_check: joint must have 2n+1 axes");
  const std::size_t t_axis = 2 * n;
  auto y1 = [](std::size_t i) { return i; };
  auto y2 = [n](std::size_t i) { return n + i; };

  double lhs = 0.0;
  double rhs = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    Axes y2_after, y1_before;
    for (std::size_t j = i + 1; j < n; ++j) y2_after.push_back(y2(j));
    for (std::size_t j = 0; j < i; ++j) y1_before.push_back(y1(j));

    Axes cond_l = y1_before;
    cond_l.push_back(t_axis);
    lhs += conditional_mutual_information(joint, y2_after, {y1(i)}, cond_l).nats;

    Axes cond_r = y2_after;
    cond_r.push_back(t_axis);
    rhs += conditional_mutual_information(joint, y1_before, {y2(i)}, cond_r).nats;
  }
  return {InfoValue{lhs}, InfoValue{rhs}};
}

}  // namespace ifcdms
