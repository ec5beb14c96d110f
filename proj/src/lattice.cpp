#include "floquet/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "floquet/errors.hpp"
#include "floquet/topology.hpp"

namespace floquet {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kClusterTol = 1e-8;

void require_cells(std::size_t cells) {
  if (cells < kMinCells) {
    throw Error(ErrorCode::InvalidArgument,
                "lattice needs at least " + std::to_string(kMinCells) + " cells");
  }
}

}  // namespace

MatrixXc build_real_space_step(const ModelParams& p, Step which, std::size_t cells,
                               Boundary boundary) {
  require_cells(cells);
  const auto n = static_cast<Eigen::Index>(2 * cells);
  MatrixXc h = MatrixXc::Zero(n, n);
  const Matrix2c hop = which == Step::H2 ? Matrix2c(0.5 * p.tx * pauli(Axis::X))
                                         : Matrix2c(Complex(0.0, 0.5 * p.ty) * pauli(Axis::Y));
  const std::size_t bonds = boundary == Boundary::Periodic ? cells : cells - 1;
  for (std::size_t j = 0; j < bonds; ++j) {
    const auto from = static_cast<Eigen::Index>(2 * j);
    const auto to = static_cast<Eigen::Index>(2 * ((j + 1) % cells));
    h.block<2, 2>(to, from) += hop;
    h.block<2, 2>(from, to) += hop.adjoint();
  }
  return h;
}

MatrixXc hermitian_exp(const MatrixXc& h, double s) {
  Eigen::SelfAdjointEigenSolver<MatrixXc> eig(h);
  const Eigen::VectorXcd phases =
      (eig.eigenvalues().cast<Complex>() * Complex(0.0, -s)).array().exp();
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

MatrixXc real_space_floquet(const ModelParams& p, Frame frame, std::size_t cells,
                            Boundary boundary) {
  const MatrixXc h1 = build_real_space_step(p, Step::H1, cells, boundary);
  const MatrixXc h2 = build_real_space_step(p, Step::H2, cells, boundary);
  switch (frame) {
    case Frame::Plain:
      return hermitian_exp(h2, 1.0) * hermitian_exp(h1, 1.0);
    case Frame::Sym1: {
      const MatrixXc half = hermitian_exp(h2, 0.5);
      return half * hermitian_exp(h1, 1.0) * half;
    }
    case Frame::Sym2: {
      const MatrixXc half = hermitian_exp(h1, 0.5);
      return half * hermitian_exp(h2, 1.0) * half;
    }
  }
  return MatrixXc::Identity(h1.rows(), h1.cols());
}

std::size_t default_edge_cells(std::size_t cells) { return std::max<std::size_t>(2, cells / 10); }

LatticeSpectrum diagonalize_unitary(const MatrixXc& u, std::size_t edge_cells) {
  const Eigen::Index n = u.rows();
  const MatrixXc cos_part = 0.5 * (u + u.adjoint());
  const MatrixXc sin_part = Complex(0.0, -0.5) * (u - u.adjoint());

  Eigen::SelfAdjointEigenSolver<MatrixXc> eig(cos_part);
  const Eigen::VectorXd& c = eig.eigenvalues();
  const MatrixXc& basis = eig.eigenvectors();

  MatrixXc vectors(n, n);
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index stop = start + 1;
    while (stop < n && c(stop) - c(stop - 1) < kClusterTol) ++stop;
    const Eigen::Index width = stop - start;
    const MatrixXc block = basis.middleCols(start, width);
    if (width == 1) {
      vectors.col(start) = block;
    } else {
      const MatrixXc restricted = block.adjoint() * sin_part * block;
      Eigen::SelfAdjointEigenSolver<MatrixXc> inner(0.5 * (restricted + restricted.adjoint()));
      vectors.middleCols(start, width) = block * inner.eigenvectors();
    }
    start = stop;
  }

  std::vector<double> phases(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex rayleigh = vectors.col(i).dot(u * vectors.col(i));
    phases[static_cast<std::size_t>(i)] = std::arg(rayleigh);
  }

  std::vector<std::size_t> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return phases[a] < phases[b]; });

  LatticeSpectrum out;
  out.edge_cells = edge_cells;
  out.vectors.resize(n, n);
  const Eigen::Index edge_rows = std::min<Eigen::Index>(2 * Eigen::Index(edge_cells), n);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto src = static_cast<Eigen::Index>(order[i]);
    out.vectors.col(static_cast<Eigen::Index>(i)) = vectors.col(src);
    // arg() returns -pi for eigenvalue -1 approached from below; report it as +pi.
    out.phases.push_back(phases[order[i]] == -kPi ? kPi : phases[order[i]]);
    out.edge_left.push_back(vectors.col(src).head(edge_rows).squaredNorm());
    out.edge_right.push_back(vectors.col(src).tail(edge_rows).squaredNorm());
  }
  return out;
}

LatticeSpectrum lattice_spectrum(const ModelParams& p, Frame frame, std::size_t cells,
                                 Boundary boundary, std::optional<std::size_t> edge_cells) {
  return diagonalize_unitary(real_space_floquet(p, frame, cells, boundary),
                             edge_cells.value_or(default_edge_cells(cells)));
}

EdgeModeCount count_edge_modes(const LatticeSpectrum& spectrum, const EdgeCountOptions& options) {
  EdgeModeCount count;
  for (std::size_t i = 0; i < spectrum.phases.size(); ++i) {
    const double weight = spectrum.edge_left[i] + spectrum.edge_right[i];
    if (weight <= options.weight_tol) continue;
    const double phase = std::abs(spectrum.phases[i]);
    if (phase < options.e_tol) ++count.n_zero;
    if (std::abs(phase - kPi) < options.e_tol) ++count.n_pi;
  }
  return count;
}

void require_bulk_gap(const ModelParams& p, const EdgeCountOptions& options) {
  const double gap0 = min_gap(p, Gap::Zero, options.bulk_resolution);
  const double gap_pi = min_gap(p, Gap::Pi, options.bulk_resolution);
  if (gap0 <= 2.0 * options.e_tol || gap_pi <= 2.0 * options.e_tol) {
    throw Error(ErrorCode::BulkGapTooSmall, "bulk gaps (" + std::to_string(gap0) + ", " +
                                                std::to_string(gap_pi) + ") vs e_tol " +
                                                std::to_string(options.e_tol));
  }
}

EdgeModeCount count_edge_modes(const ModelParams& p, Frame frame, std::size_t cells,
                               const EdgeCountOptions& options) {
  require_cells(cells);
  require_bulk_gap(p, options);
  const std::size_t edges = options.edge_cells.value_or(default_edge_cells(cells));
  return count_edge_modes(lattice_spectrum(p, frame, cells, Boundary::Open, edges), options);
}

}  // namespace floquet
