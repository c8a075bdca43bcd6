#include "vnfscale/dense_oracle.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "vnfscale/errors.hpp"
#include "vnfscale/generator.hpp"

namespace vnfscale {

namespace {

// Off-diagonal rates of a square matrix whose nonzeros satisfy |row - col| <= width.
class BandMatrix {
 public:
  BandMatrix(std::size_t n, std::size_t width) : n_(n), width_(width), stride_(2 * width + 1), data_(n * stride_, 0.0) {}

  double& operator()(std::size_t row, std::size_t col) { return data_[row * stride_ + (col + width_ - row)]; }

  std::size_t lowest(std::size_t row) const { return row > width_ ? row - width_ : 0; }

 private:
  std::size_t n_;
  std::size_t width_;
  std::size_t stride_;
  std::vector<double> data_;
};

}  // namespace

StationaryDistribution dense_oracle(const SystemParams& params) {
  StateSpace space(params);
  const std::size_t n = space.total_states();
  if (n > kDenseOracleMaxStates) {
    throw SizeGuardError("dense oracle limited to " + std::to_string(kDenseOracleMaxStates) + " states, got " +
                         std::to_string(n));
  }

  std::size_t width = 0;
  for_each_transition(space, [&](std::size_t from, std::size_t to, double, TransitionKind) {
    width = std::max(width, from > to ? from - to : to - from);
  });

  BandMatrix q(n, width);
  for_each_transition(space, [&](std::size_t from, std::size_t to, double rate, TransitionKind) { q(from, to) += rate; });

  // Reduce states n-1, ..., 1. After eliminating m, q restricted to 0..m-1 is
  // the generator of the chain watched only on those states.
  std::vector<double> exit_rate(n, 0.0);
  for (std::size_t m = n - 1; m >= 1; --m) {
    const std::size_t lo = q.lowest(m);
    double down = 0.0;
    for (std::size_t c = lo; c < m; ++c) down += q(m, c);
    if (!(down > 0.0)) throw NumericalFault("state " + std::to_string(m) + " cannot reach lower states");
    exit_rate[m] = down;
    for (std::size_t r = lo; r < m; ++r) {
      const double into = q(r, m);
      if (into == 0.0) continue;
      const double f = into / down;
      for (std::size_t c = lo; c < m; ++c) {
        if (c != r) q(r, c) += f * q(m, c);
      }
    }
  }

  std::vector<double> pi(n, 0.0);
  pi[0] = 1.0;
  double total = 1.0;
  for (std::size_t m = 1; m < n; ++m) {
    double in = 0.0;
    for (std::size_t r = q.lowest(m); r < m; ++r) in += pi[r] * q(r, m);
    pi[m] = in / exit_rate[m];
    total += pi[m];
    if (total > 1e250) {
      for (std::size_t r = 0; r <= m; ++r) pi[r] *= 1e-250;
      total *= 1e-250;
    }
  }
  for (double& v : pi) v /= total;
  return StationaryDistribution(std::move(space), std::move(pi));
}

}  // namespace vnfscale
