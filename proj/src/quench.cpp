#include "floquet/quench.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "floquet/errors.hpp"
#include "floquet/parallel.hpp"

namespace floquet {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kZeroEps = 1e-12;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

int sign_of(double v) { return v > kZeroEps ? 1 : (v < -kZeroEps ? -1 : 0); }

double component(const Vector3& v, Axis axis) {
  switch (axis) {
    case Axis::X: return v.x();
    case Axis::Y: return v.y();
    case Axis::Z: return v.z();
  }
  return 0.0;
}

// Wraps into [-pi, pi).
double wrap_momentum(double k) {
  k = std::remainder(k, 2.0 * kPi);
  return k >= kPi ? k - 2.0 * kPi : k;
}

struct Grid {
  double k0;
  double h;
  std::size_t m;

  std::size_t index(std::ptrdiff_t j) const {
    const auto mm = static_cast<std::ptrdiff_t>(m);
    return static_cast<std::size_t>(((j % mm) + mm) % mm);
  }
  std::size_t nearest(double k) const {
    const double offset = std::remainder(k - k0, 2.0 * kPi);
    return index(static_cast<std::ptrdiff_t>(std::lround(offset / h)));
  }
};

Grid periodic_grid(const std::vector<double>& ks) {
  const std::size_t m = ks.size();
  if (m < 8) throw Error(ErrorCode::InvalidArgument, "BIS extraction needs at least 8 momenta");
  const double h = 2.0 * kPi / double(m);
  for (std::size_t j = 0; j < m; ++j) {
    if (std::abs(std::remainder(ks[j] - ks[0] - double(j) * h, 2.0 * kPi)) > 1e-9) {
      throw Error(ErrorCode::InvalidArgument,
                  "BIS extraction needs a uniform periodic momentum grid");
    }
  }
  return {ks[0], h, m};
}

double stencil_derivative(const std::vector<double>& f, const Grid& g, std::size_t j) {
  const auto jj = static_cast<std::ptrdiff_t>(j);
  return (-f[g.index(jj + 2)] + 8.0 * f[g.index(jj + 1)] - 8.0 * f[g.index(jj - 1)] +
          f[g.index(jj - 2)]) /
         (12.0 * g.h);
}

struct Crossing {
  double k;       // unwrapped location, >= grid start
  double q;       // interpolated quench-axis average
  double left;    // bracket for refinement
  double right;
  bool exact;     // sits on a grid point with a vanishing average
};

}  // namespace

Axis quench_axis(Frame frame) { return frame == Frame::Sym2 ? Axis::X : Axis::Y; }

Axis slope_axis(Frame frame) { return frame == Frame::Sym2 ? Axis::Y : Axis::X; }

SpinState initial_state(Frame frame) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (frame) {
    case Frame::Sym2:
      return SpinState(Complex(r, 0.0), Complex(-r, 0.0));
    case Frame::Sym1:
    case Frame::Plain:
      break;
  }
  return SpinState(Complex(r, 0.0), Complex(0.0, r));
}

const std::vector<double>& PolarizationTrace::measured(Axis axis) const {
  if (sampled) return axis == Axis::X ? sampled->sx : sampled->sy;
  return exact(axis);
}

const std::vector<double>& PolarizationTrace::exact(Axis axis) const {
  if (axis == Axis::Z) throw Error(ErrorCode::InvalidArgument, "only x and y are averaged");
  return axis == Axis::X ? avg_x : avg_y;
}

std::pair<double, double> time_averaged_polarization(double k, const ModelParams& p, Frame frame,
                                                     unsigned steps) {
  const Matrix2c u = floquet_operator(k, p, frame).matrix();
  Vector2c psi = initial_state(frame).amplitudes();
  double sx = 0.0, sy = 0.0;
  for (unsigned t = 1; t <= steps; ++t) {
    psi = u * psi;
    const Complex z = std::conj(psi(0)) * psi(1);
    sx += 2.0 * z.real();
    sy += 2.0 * z.imag();
  }
  return {sx / steps, sy / steps};
}

PolarizationTrace evolve_polarizations(const QuenchSpec& spec, unsigned workers) {
  if (spec.steps == 0) throw Error(ErrorCode::InvalidArgument, "quench needs N >= 1");
  if (spec.frame == Frame::Plain) {
    throw Error(ErrorCode::InvalidArgument, "quench runs in a symmetric frame");
  }
  if (spec.shots && *spec.shots == 0) throw Error(ErrorCode::InvalidArgument, "shots must be >= 1");

  PolarizationTrace trace;
  trace.spec = spec;
  const std::size_t m = spec.k_grid.size();
  const unsigned n = spec.steps;
  trace.series.resize(m * n);
  trace.avg_x.assign(m, 0.0);
  trace.avg_y.assign(m, 0.0);
  const Vector2c psi0 = initial_state(spec.frame).amplitudes();

  parallel_for(m, workers, [&](std::size_t j) {
    const Matrix2c u = floquet_operator(spec.k_grid[j], spec.params, spec.frame).matrix();
    Vector2c psi = psi0;
    double sx = 0.0, sy = 0.0;
    for (unsigned t = 1; t <= n; ++t) {
      psi = u * psi;
      const SpinState state(psi);
      const Vector3 b = bloch_vector(state);
      trace.series[j * n + (t - 1)] = b;
      sx += b.x();
      sy += b.y();
    }
    trace.avg_x[j] = sx / n;
    trace.avg_y[j] = sy / n;
  });

  if (spec.shots) {
    SampledAverages s;
    s.sx.resize(m);
    s.sy.resize(m);
    s.stderr_x.resize(m);
    s.stderr_y.resize(m);
    parallel_for(m, workers, [&](std::size_t j) {
      const ShotEstimate ex =
          sample_shots(trace.avg_x[j], *spec.shots, stream_seed(spec.seed, j, Axis::X));
      const ShotEstimate ey =
          sample_shots(trace.avg_y[j], *spec.shots, stream_seed(spec.seed, j, Axis::Y));
      s.sx[j] = ex.estimate;
      s.stderr_x[j] = ex.std_error;
      s.sy[j] = ey.estimate;
      s.stderr_y[j] = ey.std_error;
    });
    trace.sampled = std::move(s);
  }
  return trace;
}

ShotEstimate sample_shots(double polarization, std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) throw Error(ErrorCode::InvalidArgument, "shots must be >= 1");
  if (!(std::abs(polarization) <= 1.0 + 1e-9)) {
    throw Error(ErrorCode::InvalidArgument, "polarization outside [-1, 1]");
  }
  const double p = std::clamp(0.5 * (1.0 + polarization), 0.0, 1.0);
  std::mt19937_64 engine(seed);
  std::binomial_distribution<std::uint64_t> dist(shots, p);
  const std::uint64_t successes = dist(engine);
  const double p_hat = double(successes) / double(shots);
  return {2.0 * p_hat - 1.0, 2.0 * std::sqrt(p_hat * (1.0 - p_hat) / double(shots))};
}

std::uint64_t stream_seed(std::uint64_t master, std::size_t k_index, Axis axis) {
  const std::uint64_t lane = 2 * static_cast<std::uint64_t>(k_index) + (axis == Axis::Y ? 1 : 0);
  return splitmix64(master ^ splitmix64(lane));
}

std::vector<double> find_bis(const PolarizationTrace& trace, const BisConfig& config) {
  const Grid grid = periodic_grid(trace.spec.k_grid);
  const Frame frame = trace.spec.frame;
  const std::vector<double>& o = trace.measured(slope_axis(frame));
  const std::vector<double>& q = trace.measured(quench_axis(frame));
  const std::size_t m = grid.m;

  std::vector<std::size_t> nonzero;
  for (std::size_t j = 0; j < m; ++j) {
    if (sign_of(o[j]) != 0) nonzero.push_back(j);
  }
  if (nonzero.empty()) throw Error(ErrorCode::NoBisFound, "slope-axis polarization vanishes");

  // Sign changes of the slope-axis average, located in unwrapped index units.
  std::vector<Crossing> accepted;
  for (std::size_t i = 0; i < nonzero.size(); ++i) {
    const std::size_t a = nonzero[i];
    const std::size_t b = nonzero[(i + 1) % nonzero.size()];
    if (sign_of(o[a]) == sign_of(o[b])) continue;
    const std::size_t span = (b + m - a) % m == 0 ? m : (b + m - a) % m;
    Crossing c;
    const double ka = grid.k0 + double(a) * grid.h;
    if (span == 1) {
      const double frac = o[a] / (o[a] - o[b]);
      c.k = ka + frac * grid.h;
      c.q = q[a] + frac * (q[b] - q[a]);
      c.left = ka;
      c.right = ka + grid.h;
      c.exact = false;
    } else {
      // A run of vanishing values: the crossing is the middle of the run.
      const double mid = 0.5 * double(span);
      c.k = ka + mid * grid.h;
      const std::size_t lo = grid.index(static_cast<std::ptrdiff_t>(a + (span / 2)));
      const std::size_t hi = grid.index(static_cast<std::ptrdiff_t>(a + (span + 1) / 2));
      c.q = 0.5 * (q[lo] + q[hi]);
      c.left = ka;
      c.right = ka + double(span) * grid.h;
      c.exact = span % 2 == 0;
    }
    if (std::abs(c.q) < config.floor_tol) accepted.push_back(c);
  }

  // Parity merge of clustered crossings (readout noise near a single BIS).
  std::sort(accepted.begin(), accepted.end(),
            [](const Crossing& x, const Crossing& y) { return x.k < y.k; });
  std::vector<Crossing> merged;
  const double merge_width = config.merge_spacings * grid.h;
  if (!accepted.empty()) {
    // Rotate so that no cluster straddles the list boundary.
    std::size_t start = 0;
    const std::size_t na = accepted.size();
    for (std::size_t i = 0; i < na; ++i) {
      const double prev = accepted[(i + na - 1) % na].k - (i == 0 ? 2.0 * kPi : 0.0);
      if (na == 1 || accepted[i].k - prev >= merge_width) {
        start = i;
        break;
      }
    }
    std::vector<Crossing> cluster;
    auto flush = [&] {
      if (cluster.size() % 2 == 1) merged.push_back(cluster[cluster.size() / 2]);
      cluster.clear();
    };
    for (std::size_t n = 0; n < na; ++n) {
      Crossing c = accepted[(start + n) % na];
      if (start + n >= na) {
        c.k += 2.0 * kPi;
        c.left += 2.0 * kPi;
        c.right += 2.0 * kPi;
      }
      if (!cluster.empty() && c.k - cluster.back().k >= merge_width) flush();
      cluster.push_back(c);
    }
    flush();
  }
  if (merged.empty()) throw Error(ErrorCode::NoBisFound, "no slope-axis crossing below the floor");

  std::vector<double> out;
  out.reserve(merged.size());
  const Axis orth = slope_axis(frame);
  for (const Crossing& c : merged) {
    double k = c.k;
    if (config.refine && !trace.sampled && !c.exact) {
      auto slope_avg = [&](double kk) {
        const auto [sx, sy] =
            time_averaged_polarization(kk, trace.spec.params, frame, trace.spec.steps);
        return orth == Axis::X ? sx : sy;
      };
      double lo = c.left, hi = c.right;
      const int s_lo = sign_of(slope_avg(lo));
      if (s_lo != 0 && s_lo != sign_of(slope_avg(hi))) {
        while (hi - lo > config.refine_tol) {
          const double mid = 0.5 * (lo + hi);
          const int s_mid = sign_of(slope_avg(mid));
          if (s_mid == 0) {
            lo = hi = mid;
            break;
          }
          (s_mid == s_lo ? lo : hi) = mid;
        }
        k = 0.5 * (lo + hi);
      }
    }
    out.push_back(wrap_momentum(k));
  }
  std::sort(out.begin(), out.end());
  return out;
}

BisSlope slope_at_bis(const PolarizationTrace& trace, double k_bis, int orientation,
                      const BisConfig& config) {
  if (orientation != 1 && orientation != -1) {
    throw Error(ErrorCode::InvalidArgument, "orientation must be +1 or -1");
  }
  const Grid grid = periodic_grid(trace.spec.k_grid);
  const Frame frame = trace.spec.frame;
  const std::size_t j = grid.nearest(k_bis);
  const double d_slope = stencil_derivative(trace.measured(slope_axis(frame)), grid, j);
  const double d_quench = stencil_derivative(trace.measured(quench_axis(frame)), grid, j);

  BisSlope out;
  out.k = k_bis;
  out.orientation = orientation;
  out.in_k_plus = orientation < 0;
  out.raw = -double(orientation) * d_slope;
  const double scale = std::hypot(d_slope, d_quench);
  out.normalized = scale > 0.0 ? out.raw / scale : 0.0;
  if (std::abs(out.normalized) < config.slope_min) {
    throw Error(ErrorCode::AmbiguousSlope, "normalized slope " + std::to_string(out.normalized) +
                                               " at k = " + std::to_string(k_bis));
  }
  out.g = out.raw > 0.0 ? 1 : -1;
  return out;
}

BisSlope slope_at_bis(const PolarizationTrace& trace, double k_bis, const BisConfig& config) {
  const Grid grid = periodic_grid(trace.spec.k_grid);
  const Frame frame = trace.spec.frame;
  const Axis axis = quench_axis(frame);
  const double before =
      component(bloch_axis(k_bis - grid.h, trace.spec.params, frame).n, axis);
  const double after = component(bloch_axis(k_bis + grid.h, trace.spec.params, frame).n, axis);
  int orientation = 0;
  if (before < 0.0 && after > 0.0) orientation = 1;
  if (before > 0.0 && after < 0.0) orientation = -1;
  if (orientation == 0) {
    throw Error(ErrorCode::AmbiguousSlope,
                "quench-axis field does not change sign at k = " + std::to_string(k_bis));
  }
  return slope_at_bis(trace, k_bis, orientation, config);
}

BisReport extract_winding(const PolarizationTrace& trace, const BisConfig& config) {
  BisReport report;
  report.frame = trace.spec.frame;
  int twice = 0;
  for (double k : find_bis(trace, config)) {
    const BisSlope s = slope_at_bis(trace, k, config);
    twice += s.in_k_plus ? s.g : -s.g;
    report.points.push_back(s);
  }
  if (twice % 2 != 0) {
    throw Error(ErrorCode::AmbiguousSlope, "oriented slope sum is odd");
  }
  report.winding = twice / 2;
  return report;
}

BisReport winding_from_quench(const QuenchSpec& spec, const BisConfig& config, unsigned workers) {
  return extract_winding(evolve_polarizations(spec, workers), config);
}

}  // namespace floquet
