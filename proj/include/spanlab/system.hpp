// Reference dynamical systems on the circle, the 2-torus, and finite products
// of circles: irrational rotation (isometric, zero complexity growth), angle
// doubling (expansive contrast case), coordinatewise Bernoulli-gated rotation
// products, and generic skew products (x, y) -> (x + alpha, y + h(x)).
//
// A System is immutable after construction and stepping is pure, so orbits of
// distinct start points may be generated concurrently. States are flat arrays
// of dim() doubles, each coordinate a circle representative in [0, 1).

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "spanlab/circle.hpp"

namespace spanlab {

// ── step primitives ──

// x -> (x + alpha) mod 1
inline double rotation_step(double alpha, double x) {
  return circle_frac(x + alpha);
}

// x -> 2x mod 1
inline double doubling_step(double x) { return circle_frac(2.0 * x); }

// (x, y) -> (x + alpha, y + h(x)), both coordinates mod 1
template <class H>
inline void skew_step(double alpha, H&& h, double& x, double& y) {
  y = circle_frac(y + h(x));
  x = circle_frac(x + alpha);
}

// ── product-of-rotations data ──

// N retained coordinates of an infinite product; coordinate i rotates by
// taus[i] when omega[i] = 1 and is frozen when omega[i] = 0. The product
// metric weights coordinate i by 2^-(i+1), so the dropped tail of the
// infinite product contributes at most tail_weight() to any distance.
struct ProductBernoulliRotations {
  int N = 0;
  std::vector<int> omega;      // frozen 0/1 coin sample, size N
  std::vector<double> taus;    // pairwise distinct irrationals, size N
  std::vector<double> weights; // 2^-(i+1), sum = 1 - 2^-N < 1

  // halved square roots of the first N primes for taus; omega drawn once
  // from a seeded 64-bit Mersenne twister (deterministic per seed)
  static ProductBernoulliRotations make(int N, std::uint64_t seed);

  double tail_weight() const;  // 2^-N
};

// coordinate i of state rotates by sys.taus[i] iff sys.omega[i] = 1;
// state.size() must equal sys.N
void product_step(const ProductBernoulliRotations& sys,
                  std::vector<double>& state);

// ── system abstraction ──

enum class SpaceTag { circle, torus2, product };

class System {
 public:
  virtual ~System() = default;

  virtual SpaceTag tag() const = 0;
  virtual int dim() const = 0;  // doubles per state
  virtual std::string describe() const = 0;

  // one application of the map, in place; state holds dim() doubles
  virtual void step(double* state) const = 0;

  // base metric between two states
  virtual double dist(const double* a, const double* b) const = 0;

  // writes n consecutive states row-major into out (n * dim() doubles),
  // out[0..dim) = start. Default: repeated step. Overridden where a closed
  // form avoids per-step rounding drift.
  virtual void orbit(const double* start, std::int64_t n, double* out) const;

  // true when dist(T^i x, T^i y) depends only on frac(x - y) for every i,
  // so pair metrics on a uniform 1-d grid collapse to difference classes
  virtual bool difference_invariant() const { return false; }
};

class RotationSystem final : public System {
 public:
  explicit RotationSystem(double alpha) : alpha_(alpha) {}

  SpaceTag tag() const override { return SpaceTag::circle; }
  int dim() const override { return 1; }
  std::string describe() const override;
  void step(double* state) const override {
    state[0] = rotation_step(alpha_, state[0]);
  }
  double dist(const double* a, const double* b) const override {
    return circle_dist(a[0], b[0]);
  }
  bool difference_invariant() const override { return true; }

  double alpha() const { return alpha_; }

 private:
  double alpha_;
};

class DoublingSystem final : public System {
 public:
  SpaceTag tag() const override { return SpaceTag::circle; }
  int dim() const override { return 1; }
  std::string describe() const override { return "angle doubling on T"; }
  void step(double* state) const override {
    state[0] = doubling_step(state[0]);
  }
  double dist(const double* a, const double* b) const override {
    return circle_dist(a[0], b[0]);
  }
  bool difference_invariant() const override { return true; }
};

class ProductSystem final : public System {
 public:
  explicit ProductSystem(ProductBernoulliRotations sys) : sys_(std::move(sys)) {}

  SpaceTag tag() const override { return SpaceTag::product; }
  int dim() const override { return sys_.N; }
  std::string describe() const override;
  void step(double* state) const override;
  double dist(const double* a, const double* b) const override;

  const ProductBernoulliRotations& data() const { return sys_; }

 private:
  ProductBernoulliRotations sys_;
};

// Generic skew product over the rotation by alpha with a user-supplied fiber
// function; used for h = 0 / h = const controls. The precision-critical skew
// systems built from tent cascades live with the cocycle machinery.
class GenericSkewSystem final : public System {
 public:
  GenericSkewSystem(double alpha, std::function<double(double)> h,
                    std::string text)
      : alpha_(alpha), h_(std::move(h)), text_(std::move(text)) {}

  SpaceTag tag() const override { return SpaceTag::torus2; }
  int dim() const override { return 2; }
  std::string describe() const override { return text_; }
  void step(double* state) const override {
    skew_step(alpha_, h_, state[0], state[1]);
  }
  double dist(const double* a, const double* b) const override {
    return torus2_dist(a[0], a[1], b[0], b[1]);
  }

 private:
  double alpha_;
  std::function<double(double)> h_;
  std::string text_;
};

}  // namespace spanlab
