#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "floquet/model.hpp"
#include "floquet/spinalg.hpp"

namespace floquet {

/// Stroboscopic quench: start in the infinite-mass ground state of the trivial
/// Hamiltonian for the frame's quench direction, then apply U_s `steps` times.
struct QuenchSpec {
  ModelParams params;
  Frame frame = Frame::Sym1;  // Sym1: y-direction quench, Sym2: x-direction quench
  unsigned steps = 60;
  std::vector<double> k_grid;
  std::optional<std::uint64_t> shots;
  std::uint64_t seed = 0;
};

/// Axis whose polarization vanishes on the band-inversion surface.
Axis quench_axis(Frame frame);
/// Axis whose polarization slope at the BIS encodes the winding.
Axis slope_axis(Frame frame);

/// Sym1: (|g> - i|e>)/sqrt2 read with |e> as spin up, i.e. the sigma_y = +1
/// state. Sym2: (|g> - |e>)/sqrt2, the sigma_x = -1 state.
SpinState initial_state(Frame frame);

struct SampledAverages {
  std::vector<double> sx;
  std::vector<double> sy;
  std::vector<double> stderr_x;
  std::vector<double> stderr_y;
};

struct PolarizationTrace {
  QuenchSpec spec;
  /// Bloch vector after t = 1..steps periods, k-major:
  /// series[j * steps + (t - 1)].
  std::vector<Vector3> series;
  /// (1/N) sum_{t=1..N} <sigma>_t per k.
  std::vector<double> avg_x;
  std::vector<double> avg_y;
  std::optional<SampledAverages> sampled;

  std::size_t size() const { return spec.k_grid.size(); }
  const Vector3& at(std::size_t j, unsigned t) const { return series[j * spec.steps + (t - 1)]; }

  /// Averages used for extraction: shot-sampled estimates when present.
  const std::vector<double>& measured(Axis axis) const;
  const std::vector<double>& exact(Axis axis) const;
};

/// Exact time-averaged <sigma_x>, <sigma_y> at one momentum (t = 1..steps).
std::pair<double, double> time_averaged_polarization(double k, const ModelParams& p, Frame frame,
                                                     unsigned steps);

/// Evolves every momentum independently on `workers` threads (0 = auto).
/// With spec.shots set, each time average is replaced by a binomial estimate
/// drawn from an RNG stream derived from (seed, k index, observable).
PolarizationTrace evolve_polarizations(const QuenchSpec& spec, unsigned workers = 1);

struct ShotEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

/// Projective readout simulation of a polarization in [-1, 1]:
/// successes ~ Binomial(shots, (1 + polarization) / 2),
/// estimate = 2 successes / shots - 1, stderr = 2 sqrt(p(1-p)/shots).
ShotEstimate sample_shots(double polarization, std::uint64_t shots, std::uint64_t seed);

/// Seed of the independent stream for (k index, observable) under a master seed.
std::uint64_t stream_seed(std::uint64_t master, std::size_t k_index, Axis axis);

struct BisConfig {
  /// Max |quench-axis average| at an accepted BIS. Orthogonal-axis nodes,
  /// where the quench-axis average is +-1, are rejected by it.
  double floor_tol = 0.5;
  /// Minimum normalized slope magnitude at a BIS.
  double slope_min = 0.2;
  /// Crossings closer than this many grid spacings are merged by parity.
  double merge_spacings = 2.0;
  /// Refine noise-free crossings by bisection on re-simulated averages.
  bool refine = true;
  double refine_tol = 1e-13;
};

/// Momenta where the quench-axis polarization vanishes. Throws NoBisFound.
std::vector<double> find_bis(const PolarizationTrace& trace, const BisConfig& config = {});

struct BisSlope {
  double k = 0.0;
  int g = 0;                  // sign of -d<sigma_slope>/dk_perp
  double raw = 0.0;           // -d<sigma_slope>/dk_perp
  double normalized = 0.0;    // raw / |(d<sigma_slope>, d<sigma_quench>)|
  int orientation = 0;        // +1 when k_perp points toward increasing k
  bool in_k_plus = false;     // k_perp points toward decreasing k
};

/// Slope sign at a BIS with k_perp oriented from n_q < 0 to n_q > 0 using the
/// Bloch axis of the model. Throws AmbiguousSlope below config.slope_min.
BisSlope slope_at_bis(const PolarizationTrace& trace, double k_bis, const BisConfig& config = {});
/// Same, with an explicitly supplied orientation (+1 / -1).
BisSlope slope_at_bis(const PolarizationTrace& trace, double k_bis, int orientation,
                      const BisConfig& config = {});

struct BisReport {
  Frame frame = Frame::Sym1;
  std::vector<BisSlope> points;
  int winding = 0;
};

/// nu_s = (sum_{k+} g - sum_{k-} g) / 2.
BisReport extract_winding(const PolarizationTrace& trace, const BisConfig& config = {});

BisReport winding_from_quench(const QuenchSpec& spec, const BisConfig& config = {},
                              unsigned workers = 1);

}  // namespace floquet
