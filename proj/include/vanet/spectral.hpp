#pragma once

#include <cstddef>
#include <vector>

#include "vanet/graph.hpp"

namespace vanet {

// Zero-eigenvalue threshold for an n-node Laplacian. Spectra are bounded by
// twice the maximum degree, so the threshold scales with n.
constexpr double default_zero_tolerance(std::size_t n) noexcept {
  return 1e-8 * static_cast<double>(n);
}

struct SpectralResult {
  std::vector<double> eigenvalues;  // ascending
  double zero_tolerance = 0.0;

  // Algebraic connectivity. Zero for a single node.
  double lambda2() const { return eigenvalues.size() >= 2 ? eigenvalues[1] : 0.0; }
};

struct ComponentCount {
  std::size_t q;
  friend bool operator==(ComponentCount, ComponentCount) = default;
};

// Full real spectrum, ascending. Throws std::invalid_argument for asymmetric input.
SpectralResult eigenvalues_symmetric(const SquareMatrix<double>& m, double zero_tolerance);
SpectralResult eigenvalues_symmetric(const Laplacian& l);

// Number of eigenvalues below the zero tolerance (clamped to at least one).
ComponentCount component_count(const SpectralResult& spectrum);

// True iff lambda2 > tol.
bool is_connected_laplacian(const Laplacian& l, double tol);
inline bool is_connected_laplacian(const Laplacian& l) {
  return is_connected_laplacian(l, default_zero_tolerance(l.size()));
}

}  // namespace vanet
