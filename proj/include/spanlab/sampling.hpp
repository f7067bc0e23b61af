// Finite point samples standing in for the phase space and for its invariant
// measure: uniform grids with prime per-axis resolution, Kronecker
// low-discrepancy streams, seeded i.i.d. draws, empirical points taken from
// one long orbit, and explicit point lists. Every builder is deterministic
// given its parameters and seed, and every sample is duplicate-free; the
// covering layer depends on both properties.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spanlab/system.hpp"

namespace spanlab {

enum class SampleKind {
  uniform_grid,
  low_discrepancy,
  measure_iid,
  orbit_empirical,
  point_list
};

const char* sample_kind_name(SampleKind kind);

struct SampleSet {
  int dim = 1;
  SampleKind kind = SampleKind::point_list;
  std::uint64_t seed = 0;            // 0 when the construction takes no seed
  std::int64_t grid_resolution = 0;  // per-axis count for uniform_grid, else 0
  std::string descriptor;
  std::vector<double> pts;  // count() * dim coordinates, row-major

  std::size_t count() const {
    return pts.size() / static_cast<std::size_t>(dim);
  }
  const double* point(std::size_t i) const {
    return pts.data() + i * static_cast<std::size_t>(dim);
  }
};

// smallest prime p with 1/p <= eps/4, so the grid spacing resolves eps-balls
std::int64_t grid_resolution_for(double eps);

// dim in {1, 2}; points (i_0/p, ..., i_{dim-1}/p) in row-major index order
SampleSet uniform_grid_sample(int dim, std::int64_t per_axis);

// Kronecker sequence: golden ratio step on the circle, plastic-number steps
// on the torus, phase-shifted by the seed
SampleSet low_discrepancy_sample(int dim, std::size_t count,
                                 std::uint64_t seed);

SampleSet iid_uniform_sample(int dim, std::size_t count, std::uint64_t seed);

// count consecutive states of one orbit after discarding burn_in steps;
// exact duplicate states (possible on eventually periodic orbits) are
// dropped, so the result may hold fewer than count points
SampleSet orbit_empirical_sample(const System& sys, const double* start,
                                 std::size_t count, std::int64_t burn_in = 1000);

SampleSet point_list_sample(int dim, std::vector<double> pts,
                            std::string descriptor);

}  // namespace spanlab
