#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "sswave/geometry.hpp"
#include "sswave/harmonics.hpp"

// Deterministic random states for tests and verification sweeps. The
// mt19937_64 bit stream is fixed by the standard and Gaussians come from an
// explicit Box-Muller transform, so a seed reproduces the same state on any
// platform (std::normal_distribution would not guarantee that).

namespace sswave {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform on (0, 1]; never returns zero, so logs are safe.
  double uniform() {
    return (static_cast<double>(gen_() >> 11) + 1.0) * 0x1p-53;
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double t = 2.0 * M_PI * uniform();
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
  }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Random modal pair: for each harmonic of degree l <= Lband, both components
// get a radial profile rho^l q(rho^2) with q a random polynomial of degree
// <= zdeg and geometrically decaying coefficients (ratio 1/3). Such states
// are smooth, exactly bandlimited, and well resolved on production grids.
ModalPair random_modal_pair(const BallGrid& grid, Rng& rng, int Lband, int zdeg);

// The same state synthesized to grid samples.
StatePair random_bandlimited_state(const BallGrid& grid, Rng& rng, int Lband, int zdeg);

// Uniform on the closed ball of the given radius (rejection sampling).
Vec3 random_rapidity(Rng& rng, double max_norm);

}  // namespace sswave
