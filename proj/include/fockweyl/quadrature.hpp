// Midpoint (rectangle) rule on a uniform tensor grid.
//
// integrate() is the OpenMP kernel: the flattened grid is cut into fixed-size
// blocks, each block is summed serially in index order, and block partials are
// combined by a pairwise tree. The result is therefore independent of the
// thread count. reference::integrate() is the plain serial loop kept for
// testing and benchmarking.

#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace fockweyl::quadrature {

class MidpointGrid {
 public:
  MidpointGrid(std::vector<double> lower, std::vector<double> upper, int points)
      : lower_(std::move(lower)), upper_(std::move(upper)), points_(points) {
    if (lower_.empty() || lower_.size() != upper_.size()) {
      throw std::invalid_argument("grid bounds must be non-empty and of equal length");
    }
    if (points_ < 1) throw std::invalid_argument("grid needs at least one point per axis");
    for (std::size_t a = 0; a < lower_.size(); ++a) {
      if (!(upper_[a] > lower_[a])) throw std::invalid_argument("grid axis has empty extent");
    }
    total_ = 1;
    for (std::size_t a = 0; a < lower_.size(); ++a) total_ *= points_;
  }

  /// [-radius, radius]^dims
  static MidpointGrid cube(int dims, double radius, int points) {
    if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
    return {std::vector<double>(static_cast<std::size_t>(dims), -radius),
            std::vector<double>(static_cast<std::size_t>(dims), radius), points};
  }

  int dims() const { return static_cast<int>(lower_.size()); }
  int points() const { return points_; }
  std::int64_t size() const { return total_; }
  double lower(int axis) const { return lower_[static_cast<std::size_t>(axis)]; }
  double upper(int axis) const { return upper_[static_cast<std::size_t>(axis)]; }
  double step(int axis) const { return (upper(axis) - lower(axis)) / points_; }
  double node(int axis, int i) const { return lower(axis) + (i + 0.5) * step(axis); }

  double cell_volume() const {
    double v = 1.0;
    for (int a = 0; a < dims(); ++a) v *= step(a);
    return v;
  }

  /// Coordinates of flattened point `flat`; axis 0 varies slowest.
  void point(std::int64_t flat, std::span<double> x) const {
    for (int a = dims() - 1; a >= 0; --a) {
      x[static_cast<std::size_t>(a)] = node(a, static_cast<int>(flat % points_));
      flat /= points_;
    }
  }

  /// True when `flat` lies in the outermost shell of cells.
  bool on_boundary(std::int64_t flat) const {
    for (int a = 0; a < dims(); ++a) {
      const auto i = flat % points_;
      if (i == 0 || i == points_ - 1) return true;
      flat /= points_;
    }
    return false;
  }

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
  int points_;
  std::int64_t total_ = 0;
};

inline constexpr std::int64_t kBlockSize = 128;

/// Sum of f(x) * cell_volume over the grid. F: (std::span<const double>) -> T.
/// T needs copy construction, += and scaling by double; `zero` fixes its shape.
template <class T, class F>
T integrate(const MidpointGrid& grid, F&& f, const T& zero) {
  const std::int64_t n = grid.size();
  const std::int64_t blocks = (n + kBlockSize - 1) / kBlockSize;
  std::vector<T> partial(static_cast<std::size_t>(blocks), zero);

#pragma omp parallel
  {
    std::vector<double> x(static_cast<std::size_t>(grid.dims()));
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t b = 0; b < blocks; ++b) {
      T acc = zero;
      const std::int64_t end = std::min(n, (b + 1) * kBlockSize);
      for (std::int64_t k = b * kBlockSize; k < end; ++k) {
        grid.point(k, x);
        acc += f(std::span<const double>(x));
      }
      partial[static_cast<std::size_t>(b)] = std::move(acc);
    }
  }

  for (std::size_t width = 1; width < partial.size(); width *= 2) {
    for (std::size_t i = 0; i + width < partial.size(); i += 2 * width) {
      partial[i] += partial[i + width];
    }
  }
  T result = partial.empty() ? zero : partial.front();
  result *= grid.cell_volume();
  return result;
}

namespace reference {

template <class T, class F>
T integrate(const MidpointGrid& grid, F&& f, const T& zero) {
  std::vector<double> x(static_cast<std::size_t>(grid.dims()));
  T acc = zero;
  for (std::int64_t k = 0; k < grid.size(); ++k) {
    grid.point(k, x);
    acc += f(std::span<const double>(x));
  }
  acc *= grid.cell_volume();
  return acc;
}

}  // namespace reference

}  // namespace fockweyl::quadrature
