#pragma once

#include <array>
#include <memory>

#include "vps/field.hpp"

namespace vps {

// Periodic-box spectral operations (real-to-complex FFT).  One instance per
// grid; plans are created deterministically and reused.  Not thread-safe:
// the whole pipeline runs on a single logical thread.
class SpectralBox {
 public:
  SpectralBox(double box_size, int n);
  ~SpectralBox();
  SpectralBox(const SpectralBox&) = delete;
  SpectralBox& operator=(const SpectralBox&) = delete;

  double box_size() const;
  int n() const;

  // (sigma - Lap)^{-1} rhs with sigma > 0.
  ScalarField solve_helmholtz(double sigma, const ScalarField& rhs) const;
  // -Lap u = rhs - mean(rhs), zero-mean solution; optionally reports the
  // removed mean.
  ScalarField solve_poisson_zero_mean(const ScalarField& rhs, double* removed_mean = nullptr) const;
  // forward application of (sigma - Lap)
  ScalarField apply_helmholtz(double sigma, const ScalarField& u) const;
  std::array<ScalarField, 3> gradient(const ScalarField& u) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace vps
