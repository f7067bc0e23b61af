#include "spanlab/system.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace spanlab {

// ── product-of-rotations construction ──

namespace {

constexpr int kPrimes[32] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31,
                             37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79,
                             83, 89, 97, 101, 103, 107, 109, 113, 127, 131};

}  // namespace

ProductBernoulliRotations ProductBernoulliRotations::make(int N,
                                                          std::uint64_t seed) {
  if (N < 1 || N > 32) throw std::invalid_argument("product: N must be 1..32");
  ProductBernoulliRotations sys;
  sys.N = N;
  std::mt19937_64 rng(seed);
  sys.omega.resize(N);
  for (int i = 0; i < N; ++i) sys.omega[i] = static_cast<int>(rng() & 1u);
  sys.taus.resize(N);
  sys.weights.resize(N);
  for (int i = 0; i < N; ++i) {
    sys.taus[i] = std::sqrt(static_cast<double>(kPrimes[i])) / 2.0;
    sys.weights[i] = std::ldexp(1.0, -(i + 1));
  }
  return sys;
}

double ProductBernoulliRotations::tail_weight() const {
  return std::ldexp(1.0, -N);
}

void product_step(const ProductBernoulliRotations& sys,
                  std::vector<double>& state) {
  if (static_cast<int>(state.size()) != sys.N)
    throw std::invalid_argument("product_step: state dimension mismatch");
  for (int i = 0; i < sys.N; ++i)
    if (sys.omega[i]) state[i] = rotation_step(sys.taus[i], state[i]);
}

// ── system abstraction ──

void System::orbit(const double* start, std::int64_t n, double* out) const {
  const int d = dim();
  for (int c = 0; c < d; ++c) out[c] = start[c];
  for (std::int64_t i = 1; i < n; ++i) {
    for (int c = 0; c < d; ++c) out[i * d + c] = out[(i - 1) * d + c];
    step(out + i * d);
  }
}

std::string RotationSystem::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "rotation by " << alpha_ << " on T";
  return os.str();
}

std::string ProductSystem::describe() const {
  std::ostringstream os;
  os << "coin-gated product of " << sys_.N << " rotations";
  return os.str();
}

void ProductSystem::step(double* state) const {
  for (int i = 0; i < sys_.N; ++i)
    if (sys_.omega[i]) state[i] = rotation_step(sys_.taus[i], state[i]);
}

double ProductSystem::dist(const double* a, const double* b) const {
  double s = 0.0;
  for (int i = 0; i < sys_.N; ++i)
    s += sys_.weights[i] * circle_dist(a[i], b[i]);
  return s;
}

}  // namespace spanlab
