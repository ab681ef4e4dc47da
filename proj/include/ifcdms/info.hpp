#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

namespace ifcdms {

inline constexpr double kNormalizationTol = 1e-12;
inline constexpr double kNegativeInfoTol = 1e-12;

/// An information quantity. Stored in nats; converted to bits only when
/// reported.
struct InfoValue {
  double nats = 0.0;

  [[nodiscard]] double bits() const { return nats / std::numbers::ln2; }

  friend auto operator<=>(const InfoValue&, const InfoValue&) = default;
};

/// Clamps a mutual-information value in nats to zero when it is negative
/// only by rounding; throws ConsistencyError below -kNegativeInfoTol.
InfoValue clamp_info(double nats);

using Axes = std::vector<std::size_t>;

/// Probability tensor over finite alphabets, row-major with the last axis
/// varying fastest.
///
/// Construction validates nonnegativity and normalization. A sum within
/// kNormalizationTol of one is rescaled to one exactly; anything further
/// off is rejected with InvalidInput.
class JointDistribution {
 public:
  JointDistribution(std::vector<std::size_t> shape, std::vector<double> probs);

  /// Uniform distribution over the given shape.
  static JointDistribution uniform(std::vector<std::size_t> shape);

  [[nodiscard]] std::span<const std::size_t> shape() const { return shape_; }
  [[nodiscard]] std::span<const double> probs() const { return probs_; }
  [[nodiscard]] std::size_t rank() const { return shape_.size(); }
  [[nodiscard]] std::size_t size() const { return probs_.size(); }

  /// Flat offset of a multi-index.
  [[nodiscard]] std::size_t offset(std::span<const std::size_t> index) const;
  [[nodiscard]] double at(std::initializer_list<std::size_t> index) const;

  /// Marginal over the listed axes, kept in the listed order. An empty
  /// list gives the trivial distribution of shape {1}.
  [[nodiscard]] JointDistribution marginal(std::span<const std::size_t> axes) const;

  /// Entropy H(X_axes) in nats.
  [[nodiscard]] double entropy_of(std::span<const std::size_t> axes) const;

 private:
  std::vector<std::size_t> shape_;
  std::vector<double> probs_;
};

/// -sum p log p over a probability vector, 0 log 0 = 0.
double entropy_nats(std::span<const double> probs);

/// H(X) over all axes of the distribution.
InfoValue entropy(const JointDistribution& dist);

/// I(A;B) for a two-axis joint.
InfoValue mutual_information(const JointDistribution& joint);

/// I(A;B|C) for a three-axis joint conditioned on the last axis.
InfoValue conditional_mutual_information(const JointDistribution& joint);

/// I(A;B|C) for arbitrary groups of axes. Empty A or B gives zero; empty C
/// means no conditioning. The groups must be disjoint.
InfoValue conditional_mutual_information(const JointDistribution& joint, const Axes& a,
                                         const Axes& b, const Axes& c);

struct CsiszarSums {
  InfoValue lhs;
  InfoValue rhs;
};

/// Evaluates both sides of the Csiszar sum identity for a joint over
/// (Y1_1..Y1_n, Y2_1..Y2_n, T):
///   lhs = sum_i I(Y2_{i+1..n}; Y1_i | Y1_{1..i-1}, T)
///   rhs = sum_i I(Y1_{1..i-1}; Y2_i | Y2_{i+1..n}, T)
CsiszarSums csiszar_sum_check(const JointDistribution& joint, std::size_t n);

}  // namespace ifcdms
