#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "floquet/model.hpp"

namespace floquet {

using MatrixXc = Eigen::MatrixXcd;

enum class Boundary { Open, Periodic };
enum class Step { H1, H2 };  // H1 ~ t_y sin k sigma_y, H2 ~ t_x cos k sigma_x

inline constexpr std::size_t kMinCells = 4;

/// Real-space step Hamiltonian on `cells` unit cells (orbital index 2j + s).
/// Nearest-neighbour blocks <j+1|H|j>: (t_x/2) sigma_x for H2 and
/// (i t_y/2) sigma_y for H1, so the Bloch transform gives t_x cos k sigma_x and
/// t_y sin k sigma_y.
MatrixXc build_real_space_step(const ModelParams& p, Step which, std::size_t cells,
                               Boundary boundary);

/// exp(-i s H) for Hermitian H via its eigendecomposition.
MatrixXc hermitian_exp(const MatrixXc& h, double s);

/// One-period operator in real space, factors ordered as in floquet_operator.
MatrixXc real_space_floquet(const ModelParams& p, Frame frame, std::size_t cells,
                            Boundary boundary);

struct LatticeSpectrum {
  std::vector<double> phases;   // (-pi, pi], ascending
  MatrixXc vectors;             // column i belongs to phases[i]
  std::vector<double> edge_left;
  std::vector<double> edge_right;
  std::size_t edge_cells = 0;
};

/// Diagonalizes a unitary through its commuting Hermitian parts
/// (U + U^dagger)/2 and (U - U^dagger)/2i; degenerate clusters of the first
/// are resolved by the second.
LatticeSpectrum diagonalize_unitary(const MatrixXc& u, std::size_t edge_cells);

std::size_t default_edge_cells(std::size_t cells);

LatticeSpectrum lattice_spectrum(const ModelParams& p, Frame frame, std::size_t cells,
                                 Boundary boundary, std::optional<std::size_t> edge_cells = {});

struct EdgeCountOptions {
  double e_tol = 1e-3;
  std::optional<std::size_t> edge_cells;  // default max(2, L/10)
  double weight_tol = 0.5;
  std::size_t bulk_resolution = 2048;
};

struct EdgeModeCount {
  int n_zero = 0;
  int n_pi = 0;
  friend bool operator==(const EdgeModeCount&, const EdgeModeCount&) = default;
};

/// Throws ErrorCode::BulkGapTooSmall unless both bulk gaps exceed 2 e_tol.
void require_bulk_gap(const ModelParams& p, const EdgeCountOptions& options);

EdgeModeCount count_edge_modes(const LatticeSpectrum& spectrum, const EdgeCountOptions& options);

/// Open-chain edge modes at quasienergy 0 and pi. Throws BulkGapTooSmall when
/// the bulk gaps do not exceed 2 e_tol.
EdgeModeCount count_edge_modes(const ModelParams& p, Frame frame, std::size_t cells,
                               const EdgeCountOptions& options = {});

}  // namespace floquet
