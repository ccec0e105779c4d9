#include "vanet/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <stdexcept>

namespace vanet {

SpectralResult eigenvalues_symmetric(const SquareMatrix<double>& m, double zero_tolerance) {
  const auto n = static_cast<Eigen::Index>(m.size());
  SpectralResult out;
  out.zero_tolerance = zero_tolerance;
  if (n == 0) return out;

  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> view(
      m.data().data(), n, n);
  if (view != view.transpose()) {
    throw std::invalid_argument("eigenvalues_symmetric: matrix is not symmetric");
  }
  // Householder tridiagonalization followed by implicit symmetric QR.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(view, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigenvalues_symmetric: eigensolver did not converge");
  }
  const auto& ev = solver.eigenvalues();
  out.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
  return out;
}

SpectralResult eigenvalues_symmetric(const Laplacian& l) {
  return eigenvalues_symmetric(l.matrix(), default_zero_tolerance(l.size()));
}

ComponentCount component_count(const SpectralResult& spectrum) {
  const auto q = static_cast<std::size_t>(
      std::count_if(spectrum.eigenvalues.begin(), spectrum.eigenvalues.end(),
                    [&](double x) { return x < spectrum.zero_tolerance; }));
  return {std::max<std::size_t>(q, spectrum.eigenvalues.empty() ? 0 : 1)};
}

bool is_connected_laplacian(const Laplacian& l, double tol) {
  const SpectralResult s = eigenvalues_symmetric(l.matrix(), tol);
  return s.eigenvalues.size() >= 2 && s.lambda2() > tol;
}

}  // namespace vanet
