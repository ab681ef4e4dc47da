#include "ifcdms/channel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ifcdms/errors.hpp"

namespace ifcdms {

namespace {

void check_stochastic_rows(std::span<const double> p, std::size_t rows, std::size_t cols,
                           const char* what) {
  for (std::size_t r = 0; r < rows; ++r) {
    double sum = 0.0;
    for (std::size_t c = 0; c < cols; ++c) {
      const double v = p[r * cols + c];
      if (!(v >= 0.0) || !std::isfinite(v)) {
        std::ostringstream msg;
        msg << what << ": entry in row " << r << " is negative or non-finite";
        throw InvalidInput(msg.str());
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > kNormalizationTol) {
      std::ostringstream msg;
      msg.precision(17);
      msg << what << ": row " << r << " sums to " << sum;
      throw InvalidInput(msg.str());
    }
  }
}

void check_distribution(std::span<const double> p, std::size_t n, const char* what) {
  if (p.size() != n) throw InvalidInput(std::string(what) + ": wrong alphabet size");
  check_stochastic_rows(p, 1, n, what);
}

}  // namespace

StochasticMatrix::StochasticMatrix(std::size_t rows, std::size_t cols, std::vector<double> p)
    : rows_(rows), cols_(cols), p_(std::move(p)) {
  if (rows_ == 0 || cols_ == 0) throw InvalidInput("stochastic matrix needs nonzero dimensions");
  if (p_.size() != rows_ * cols_) throw InvalidInput("stochastic matrix: wrong number of entries");
  check_stochastic_rows(p_, rows_, cols_, "stochastic matrix");
}

StochasticMatrix StochasticMatrix::identity(std::size_t n) {
  std::vector<double> p(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) p[i * n + i] = 1.0;
  return StochasticMatrix(n, n, std::move(p));
}

double StochasticMatrix::max_row_error() const {
  double worst = 0.0;
  for (std::size_t r = 0; r < rows_; ++r) {
    double sum = 0.0;
    for (double v : row(r)) sum += v;
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

IFCChannel::IFCChannel(std::size_t nx1, std::size_t nx2, std::size_t ny1, std::size_t ny2,
                       std::vector<double> p)
    : nx1_(nx1), nx2_(nx2), ny1_(ny1), ny2_(ny2), p_(std::move(p)) {
  if (nx1_ == 0 || nx2_ == 0 || ny1_ == 0 || ny2_ == 0)
    throw InvalidInput("channel alphabet sizes must be >= 1");
  if (p_.size() != nx1_ * nx2_ * ny1_ * ny2_) {
    std::ostringstream msg;
    msg << "channel array has " << p_.size() << " entries, expected " << nx1_ * nx2_ * ny1_ * ny2_;
    throw InvalidInput(msg.str());
  }
  check_stochastic_rows(p_, nx1_ * nx2_, ny1_ * ny2_, "channel");
}

IFCChannel IFCChannel::from_marginals(std::size_t nx1, std::size_t nx2, const StochasticMatrix& k1,
                                      const StochasticMatrix& k2) {
  if (k1.rows() != nx1 * nx2 || k2.rows() != nx1 * nx2)
    throw InvalidInput("marginal kernels must have nx1*nx2 rows");
  const std::size_t ny1 = k1.cols();
  const std::size_t ny2 = k2.cols();
  std::vector<double> p(nx1 * nx2 * ny1 * ny2);
  for (std::size_t x = 0; x < nx1 * nx2; ++x)
    for (std::size_t y1 = 0; y1 < ny1; ++y1)
      for (std::size_t y2 = 0; y2 < ny2; ++y2) p[(x * ny1 + y1) * ny2 + y2] = k1(x, y1) * k2(x, y2);
  return IFCChannel(nx1, nx2, ny1, ny2, std::move(p));
}

MarginalKernels marginal_kernels(const IFCChannel& ch) {
  const std::size_t nx = ch.nx1() * ch.nx2();
  std::vector<double> k1(nx * ch.ny1(), 0.0);
  std::vector<double> k2(nx * ch.ny2(), 0.0);
  const auto p = ch.data();
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y1 = 0; y1 < ch.ny1(); ++y1)
      for (std::size_t y2 = 0; y2 < ch.ny2(); ++y2) {
        const double v = p[(x * ch.ny1() + y1) * ch.ny2() + y2];
        k1[x * ch.ny1() + y1] += v;
        k2[x * ch.ny2() + y2] += v;
      }
  return {StochasticMatrix(nx, ch.ny1(), std::move(k1)), StochasticMatrix(nx, ch.ny2(), std::move(k2))};
}

ProductInput ProductInput::uniform(std::size_t nx1, std::size_t nx2) {
  return {std::vector<double>(nx1, 1.0 / static_cast<double>(nx1)),
          std::vector<double>(nx2, 1.0 / static_cast<double>(nx2))};
}

JointDistribution induced_joint(const IFCChannel& ch, const ProductInput& input) {
  check_distribution(input.p1, ch.nx1(), "input p1");
  check_distribution(input.p2, ch.nx2(), "input p2");
  const std::size_t ny = ch.ny1() * ch.ny2();
  std::vector<double> out(ch.nx1() * ch.nx2() * ny);
  const auto p = ch.data();
  for (std::size_t x1 = 0; x1 < ch.nx1(); ++x1)
    for (std::size_t x2 = 0; x2 < ch.nx2(); ++x2) {
      const std::size_t x = x1 * ch.nx2() + x2;
      const double w = input.p1[x1] * input.p2[x2];
      for (std::size_t y = 0; y < ny; ++y) out[x * ny + y] = w * p[x * ny + y];
    }
  return JointDistribution({ch.nx1(), ch.nx2(), ch.ny1(), ch.ny2()}, std::move(out));
}

JointDistribution induced_joint(const IFCChannel& ch, const JointDistribution& p_ux1x2) {
  if (p_ux1x2.rank() != 3 || p_ux1x2.shape()[1] != ch.nx1() || p_ux1x2.shape()[2] != ch.nx2())
    throw InvalidInput("input law must have shape {|U|, nx1, nx2}");
  const std::size_t nu = p_ux1x2.shape()[0];
  const std::size_t nx = ch.nx1() * ch.nx2();
  const std::size_t ny = ch.ny1() * ch.ny2();
  std::vector<double> out(nu * nx * ny);
  const auto p = ch.data();
  const auto in = p_ux1x2.probs();
  for (std::size_t u = 0; u < nu; ++u)
    for (std::size_t x = 0; x < nx; ++x) {
      const double w = in[u * nx + x];
      for (std::size_t y = 0; y < ny; ++y) out[(u * nx + x) * ny + y] = w * p[x * ny + y];
    }
  return JointDistribution({nu, ch.nx1(), ch.nx2(), ch.ny1(), ch.ny2()}, std::move(out));
}

}  // namespace ifcdms
