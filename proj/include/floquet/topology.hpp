#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "floquet/model.hpp"

namespace floquet {

inline constexpr std::size_t kDefaultResolution = 2048;
inline constexpr std::size_t kMinWindingResolution = 256;
inline constexpr std::size_t kMaxResolution = std::size_t{1} << 20;
inline constexpr double kBoundaryTol = 1e-3;

/// Uniform periodic momentum grid k_j = -pi + 2 pi j / points (endpoint excluded).
std::vector<double> brillouin_grid(std::size_t points);

struct WindingOptions {
  std::size_t resolution = kDefaultResolution;
  std::size_t max_resolution = kMaxResolution;
  double gap_tol = kDefaultGapTol;
};

/// Raw accumulated phase of atan2(n_y, n_x) over one Brillouin zone at a fixed
/// resolution, in turns, together with the largest single-step increment.
struct WindingSum {
  double turns = 0.0;
  double max_step = 0.0;
  std::size_t resolution = 0;
};

WindingSum accumulate_winding(const ModelParams& p, Frame frame, std::size_t resolution,
                              double gap_tol = kDefaultGapTol);

/// Winding of the planar Bloch axis. The grid is doubled until every step
/// turns by less than pi/2; throws InsufficientResolution past the cap and
/// GaplessPoint if any grid momentum is gapless.
int winding_number(const ModelParams& p, Frame frame, const WindingOptions& options = {});
int winding_number(const ModelParams& p, Frame frame, std::size_t resolution);

/// (1/2pi) * integral of (n_x dn_y - n_y dn_x) with periodic central
/// differences and the trapezoid rule. Not rounded; an independent route to
/// the same integer.
double winding_integral(const ModelParams& p, Frame frame,
                        std::size_t resolution = kDefaultResolution);

struct WindingPair {
  int nu1 = 0;
  int nu2 = 0;
  friend bool operator==(const WindingPair&, const WindingPair&) = default;
};

struct InvariantPair {
  int nu0 = 0;
  int nu_pi = 0;
  friend bool operator==(const InvariantPair&, const InvariantPair&) = default;
};

/// nu0 = (nu1 + nu2) / 2, nu_pi = (nu1 - nu2) / 2. Throws InvalidArgument on
/// mixed parity.
InvariantPair invariants_from_windings(const WindingPair& w);

WindingPair frame_windings(const ModelParams& p, std::size_t resolution = kDefaultResolution);
InvariantPair gap_invariants(const ModelParams& p, std::size_t resolution = kDefaultResolution);

enum class Gap { Zero, Pi };

/// min_k |E(k)| or min_k |pi - E(k)| on the uniform grid.
double min_gap(const ModelParams& p, Gap which, std::size_t resolution = kDefaultResolution);

/// Result of searching a rectangle of parameter space for a gap closing.
struct CellGapSearch {
  bool closes = false;    // gap below tolerance somewhere (or search undecided)
  bool decided = true;    // false when the box budget ran out
  double min_found = 0.0; // smallest gap actually evaluated
};

/// Branch-and-bound over [tx_lo, tx_hi] x [ty_lo, ty_hi] x [-pi, pi]. Uses
/// that E(theta_x, theta_y) is 1-Lipschitz in each angle, so a box whose
/// lower bound exceeds `tol` is certified gapped.
CellGapSearch search_gap_closing(double tx_lo, double tx_hi, double ty_lo, double ty_hi,
                                 Gap which, double tol = kBoundaryTol,
                                 std::size_t max_boxes = 4'000'000);

struct AxisRange {
  double min = 0.0;
  double max = 0.0;
  std::size_t cells = 1;

  double width() const { return cells == 0 ? 0.0 : (max - min) / double(cells); }
  double lower(std::size_t i) const { return min + double(i) * width(); }
  double upper(std::size_t i) const { return min + double(i + 1) * width(); }
  double center(std::size_t i) const { return min + (double(i) + 0.5) * width(); }
};

struct PhaseDiagramSpec {
  AxisRange tx{0.0, 0.0, 1};
  AxisRange ty{0.0, 0.0, 1};
  std::size_t resolution = kDefaultResolution;
  double boundary_tol = kBoundaryTol;
};

struct PhaseCell {
  std::size_t ix = 0;
  std::size_t iy = 0;
  double tx = 0.0;
  double ty = 0.0;
  bool closes_zero = false;
  bool closes_pi = false;
  double min_gap_zero = 0.0;
  double min_gap_pi = 0.0;
  std::optional<WindingPair> windings;
  std::optional<InvariantPair> invariants;

  bool boundary() const { return closes_zero || closes_pi; }
  /// bit 0: zero gap closes in the cell, bit 1: pi gap closes.
  int boundary_flag() const { return (closes_zero ? 1 : 0) | (closes_pi ? 2 : 0); }
};

/// Cells are stored row-major: index = iy * tx.cells + ix.
struct PhaseDiagram {
  PhaseDiagramSpec spec;
  std::vector<PhaseCell> cells;

  const PhaseCell& at(std::size_t ix, std::size_t iy) const {
    return cells[iy * spec.tx.cells + ix];
  }
};

/// Single cell evaluation: boundary search over the cell rectangle, invariants
/// at the cell centre when no gap closes inside.
PhaseCell evaluate_cell(const PhaseDiagramSpec& spec, std::size_t ix, std::size_t iy);

/// Evaluates every cell; `workers` = 0 picks hardware concurrency. The result
/// is identical for any worker count.
PhaseDiagram phase_diagram(const PhaseDiagramSpec& spec, unsigned workers = 1);

}  // namespace floquet
