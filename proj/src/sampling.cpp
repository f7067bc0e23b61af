#include "spanlab/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numeric>
#include <random>
#include <stdexcept>

#include "spanlab/circle.hpp"

namespace spanlab {

namespace {

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double unit_from_bits(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1p-53;
}

// sorts point indices lexicographically and rejects exact coordinate ties
void require_distinct(const SampleSet& s, const char* what) {
  const std::size_t m = s.count();
  std::vector<std::uint32_t> order(m);
  std::iota(order.begin(), order.end(), 0u);
  const int dim = s.dim;
  auto less = [&](std::uint32_t a, std::uint32_t b) {
    const double* pa = s.point(a);
    const double* pb = s.point(b);
    for (int k = 0; k < dim; ++k) {
      if (pa[k] != pb[k]) return pa[k] < pb[k];
    }
    return false;
  };
  std::sort(order.begin(), order.end(), less);
  for (std::size_t i = 1; i < m; ++i) {
    if (!less(order[i - 1], order[i]) && !less(order[i], order[i - 1]))
      throw std::invalid_argument(std::string(what) +
                                  ": duplicate sample points");
  }
}

std::string format_descriptor(const char* fmt, ...) {
  char buf[160];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  return std::string(buf);
}

}  // namespace

const char* sample_kind_name(SampleKind kind) {
  switch (kind) {
    case SampleKind::uniform_grid:    return "uniform-grid";
    case SampleKind::low_discrepancy: return "low-discrepancy";
    case SampleKind::measure_iid:     return "measure-sample";
    case SampleKind::orbit_empirical: return "orbit-empirical";
    case SampleKind::point_list:      return "point-list";
  }
  return "?";
}

std::int64_t grid_resolution_for(double eps) {
  if (!(eps > 0.0) || !(eps <= 1.0))
    throw std::invalid_argument("grid_resolution_for: eps must be in (0, 1]");
  std::int64_t p = static_cast<std::int64_t>(std::ceil(4.0 / eps));
  if (p < 2) p = 2;
  while (!is_prime(p)) ++p;
  return p;
}

SampleSet uniform_grid_sample(int dim, std::int64_t per_axis) {
  if (dim < 1 || dim > 2)
    throw std::invalid_argument("uniform_grid_sample: dim must be 1 or 2");
  if (per_axis < 1)
    throw std::invalid_argument("uniform_grid_sample: per_axis must be >= 1");
  SampleSet s;
  s.dim = dim;
  s.kind = SampleKind::uniform_grid;
  s.grid_resolution = per_axis;
  const double step = 1.0 / static_cast<double>(per_axis);
  if (dim == 1) {
    s.pts.reserve(static_cast<std::size_t>(per_axis));
    for (std::int64_t i = 0; i < per_axis; ++i)
      s.pts.push_back(static_cast<double>(i) * step);
  } else {
    s.pts.reserve(static_cast<std::size_t>(per_axis * per_axis) * 2);
    for (std::int64_t i = 0; i < per_axis; ++i) {
      for (std::int64_t j = 0; j < per_axis; ++j) {
        s.pts.push_back(static_cast<double>(i) * step);
        s.pts.push_back(static_cast<double>(j) * step);
      }
    }
  }
  s.descriptor = format_descriptor("uniform-grid dim %d resolution %lld",
                                   dim, static_cast<long long>(per_axis));
  require_distinct(s, "uniform_grid_sample");
  return s;
}

SampleSet low_discrepancy_sample(int dim, std::size_t count,
                                 std::uint64_t seed) {
  if (dim < 1 || dim > 2)
    throw std::invalid_argument("low_discrepancy_sample: dim must be 1 or 2");
  if (count == 0)
    throw std::invalid_argument("low_discrepancy_sample: empty sample");
  // golden step for the circle; inverse powers of the plastic number give
  // the standard two-dimensional Kronecker sequence
  static const double kStep1[2] = {0.6180339887498949, 0.0};
  static const double kStep2[2] = {0.7548776662466927, 0.5698402909980532};
  const double* step = dim == 1 ? kStep1 : kStep2;
  std::uint64_t state = seed;
  double phase[2] = {unit_from_bits(splitmix64(state)),
                     unit_from_bits(splitmix64(state))};
  SampleSet s;
  s.dim = dim;
  s.kind = SampleKind::low_discrepancy;
  s.seed = seed;
  s.pts.reserve(count * static_cast<std::size_t>(dim));
  for (std::size_t j = 0; j < count; ++j) {
    for (int k = 0; k < dim; ++k) {
      s.pts.push_back(circle_frac(phase[k]));
      phase[k] = circle_frac(phase[k] + step[k]);
    }
  }
  s.descriptor = format_descriptor(
      "low-discrepancy dim %d count %zu seed %llu", dim, count,
      static_cast<unsigned long long>(seed));
  require_distinct(s, "low_discrepancy_sample");
  return s;
}

SampleSet iid_uniform_sample(int dim, std::size_t count, std::uint64_t seed) {
  if (dim < 1)
    throw std::invalid_argument("iid_uniform_sample: dim must be >= 1");
  if (count == 0)
    throw std::invalid_argument("iid_uniform_sample: empty sample");
  std::mt19937_64 rng(seed);
  SampleSet s;
  s.dim = dim;
  s.kind = SampleKind::measure_iid;
  s.seed = seed;
  s.pts.reserve(count * static_cast<std::size_t>(dim));
  for (std::size_t j = 0; j < count * static_cast<std::size_t>(dim); ++j)
    s.pts.push_back(unit_from_bits(rng()));
  s.descriptor =
      format_descriptor("measure-sample dim %d count %zu seed %llu", dim,
                        count, static_cast<unsigned long long>(seed));
  require_distinct(s, "iid_uniform_sample");
  return s;
}

SampleSet orbit_empirical_sample(const System& sys, const double* start,
                                 std::size_t count, std::int64_t burn_in) {
  if (count == 0)
    throw std::invalid_argument("orbit_empirical_sample: empty sample");
  if (burn_in < 0)
    throw std::invalid_argument("orbit_empirical_sample: negative burn_in");
  const int dim = sys.dim();
  std::vector<double> state(start, start + dim);
  for (std::int64_t i = 0; i < burn_in; ++i) sys.step(state.data());
  SampleSet s;
  s.dim = dim;
  s.kind = SampleKind::orbit_empirical;
  s.pts.reserve(count * static_cast<std::size_t>(dim));
  std::size_t kept = 0;
  for (std::size_t j = 0; j < count; ++j) {
    bool fresh = true;
    for (std::size_t i = 0; i < kept && fresh; ++i) {
      bool same = true;
      for (int k = 0; k < dim && same; ++k)
        same = s.pts[i * static_cast<std::size_t>(dim) + k] == state[k];
      fresh = !same;
    }
    if (fresh) {
      s.pts.insert(s.pts.end(), state.begin(), state.end());
      ++kept;
    }
    sys.step(state.data());
  }
  s.descriptor = format_descriptor(
      "orbit-empirical count %zu of %zu burn-in %lld", kept, count,
      static_cast<long long>(burn_in));
  return s;
}

SampleSet point_list_sample(int dim, std::vector<double> pts,
                            std::string descriptor) {
  if (dim < 1) throw std::invalid_argument("point_list_sample: dim must be >= 1");
  if (pts.empty() || pts.size() % static_cast<std::size_t>(dim) != 0)
    throw std::invalid_argument(
        "point_list_sample: coordinate count must be a positive multiple of dim");
  SampleSet s;
  s.dim = dim;
  s.kind = SampleKind::point_list;
  s.pts = std::move(pts);
  s.descriptor = std::move(descriptor);
  require_distinct(s, "point_list_sample");
  return s;
}

}  // namespace spanlab
