#include "floquet/topology.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>

#include "floquet/errors.hpp"
#include "floquet/parallel.hpp"

namespace floquet {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * kPi);
  return a <= -kPi ? a + 2.0 * kPi : a;
}

double gap_value(double energy, Gap which) { return which == Gap::Zero ? energy : kPi - energy; }

double energy_of_angles(double ax, double ay) {
  return std::acos(std::clamp(std::cos(ax) * std::cos(ay), -1.0, 1.0));
}

struct Interval {
  double lo;
  double hi;
  double mid() const { return 0.5 * (lo + hi); }
  double half() const { return 0.5 * (hi - lo); }
  double abs_max() const { return std::max(std::abs(lo), std::abs(hi)); }
};

Interval product(Interval a, Interval b) {
  const double p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

// Ranges of cos and sin over [k0, k1] with -pi <= k0 <= k1 <= pi.
Interval cos_range(double k0, double k1) {
  double lo = std::min(std::cos(k0), std::cos(k1));
  double hi = std::max(std::cos(k0), std::cos(k1));
  if (k0 <= 0.0 && 0.0 <= k1) hi = 1.0;
  if (k0 <= -kPi || k1 >= kPi) lo = -1.0;
  return {lo, hi};
}

Interval sin_range(double k0, double k1) {
  double lo = std::min(std::sin(k0), std::sin(k1));
  double hi = std::max(std::sin(k0), std::sin(k1));
  if (k0 <= 0.5 * kPi && 0.5 * kPi <= k1) hi = 1.0;
  if (k0 <= -0.5 * kPi && -0.5 * kPi <= k1) lo = -1.0;
  return {lo, hi};
}

struct Box {
  Interval tx;
  Interval ty;
  Interval k;
  double lower_bound = 0.0;
  std::size_t order = 0;
};

struct BoxOrder {
  bool operator()(const Box& a, const Box& b) const {
    if (a.lower_bound != b.lower_bound) return a.lower_bound > b.lower_bound;
    return a.order > b.order;
  }
};

}  // namespace

std::vector<double> brillouin_grid(std::size_t points) {
  if (points == 0) throw Error(ErrorCode::InvalidArgument, "empty momentum grid");
  std::vector<double> ks(points);
  for (std::size_t j = 0; j < points; ++j) {
    ks[j] = -kPi + 2.0 * kPi * double(j) / double(points);
  }
  return ks;
}

WindingSum accumulate_winding(const ModelParams& p, Frame frame, std::size_t resolution,
                              double gap_tol) {
  const std::vector<double> ks = brillouin_grid(resolution);
  std::vector<double> phi(resolution);
  for (std::size_t j = 0; j < resolution; ++j) {
    const Vector3 n = bloch_axis(ks[j], p, frame, gap_tol).n;
    phi[j] = std::atan2(n.y(), n.x());
  }
  WindingSum out;
  out.resolution = resolution;
  double total = 0.0;
  for (std::size_t j = 0; j < resolution; ++j) {
    const double step = wrap_angle(phi[(j + 1) % resolution] - phi[j]);
    total += step;
    out.max_step = std::max(out.max_step, std::abs(step));
  }
  out.turns = total / (2.0 * kPi);
  return out;
}

int winding_number(const ModelParams& p, Frame frame, const WindingOptions& options) {
  if (options.resolution < kMinWindingResolution) {
    throw Error(ErrorCode::InvalidArgument,
                "winding resolution must be >= " + std::to_string(kMinWindingResolution));
  }
  for (std::size_t m = options.resolution; m <= options.max_resolution; m *= 2) {
    const WindingSum sum = accumulate_winding(p, frame, m, options.gap_tol);
    if (sum.max_step < 0.5 * kPi) return static_cast<int>(std::lround(sum.turns));
  }
  throw Error(ErrorCode::InsufficientResolution,
              "angle step >= pi/2 at " + std::to_string(options.max_resolution) + " points");
}

int winding_number(const ModelParams& p, Frame frame, std::size_t resolution) {
  WindingOptions options;
  options.resolution = resolution;
  return winding_number(p, frame, options);
}

double winding_integral(const ModelParams& p, Frame frame, std::size_t resolution) {
  const std::vector<double> ks = brillouin_grid(resolution);
  std::vector<Vector3> n(resolution);
  for (std::size_t j = 0; j < resolution; ++j) n[j] = bloch_axis(ks[j], p, frame).n;
  const double h = 2.0 * kPi / double(resolution);
  double sum = 0.0;
  for (std::size_t j = 0; j < resolution; ++j) {
    const Vector3& prev = n[(j + resolution - 1) % resolution];
    const Vector3& next = n[(j + 1) % resolution];
    const Vector3 dn = (next - prev) / (2.0 * h);
    sum += (n[j].x() * dn.y() - n[j].y() * dn.x()) * h;
  }
  return sum / (2.0 * kPi);
}

InvariantPair invariants_from_windings(const WindingPair& w) {
  if ((w.nu1 + w.nu2) % 2 != 0) {
    throw Error(ErrorCode::InvalidArgument, "nu1 and nu2 differ in parity");
  }
  return {(w.nu1 + w.nu2) / 2, (w.nu1 - w.nu2) / 2};
}

WindingPair frame_windings(const ModelParams& p, std::size_t resolution) {
  return {winding_number(p, Frame::Sym1, resolution), winding_number(p, Frame::Sym2, resolution)};
}

InvariantPair gap_invariants(const ModelParams& p, std::size_t resolution) {
  return invariants_from_windings(frame_windings(p, resolution));
}

double min_gap(const ModelParams& p, Gap which, std::size_t resolution) {
  double best = kPi;
  for (double k : brillouin_grid(resolution)) {
    best = std::min(best, gap_value(quasienergy(k, p), which));
  }
  return best;
}

CellGapSearch search_gap_closing(double tx_lo, double tx_hi, double ty_lo, double ty_hi,
                                 Gap which, double tol, std::size_t max_boxes) {
  std::priority_queue<Box, std::vector<Box>, BoxOrder> queue;
  std::size_t order = 0;
  CellGapSearch result;
  result.closes = false;
  result.min_found = kPi;

  // Evaluates the box centre (an attainable gap value) and a certified lower bound.
  auto bound = [&](Box& box) -> bool {
    const Interval cx = cos_range(box.k.lo, box.k.hi);
    const Interval sy = sin_range(box.k.lo, box.k.hi);
    const Interval ax = product(box.tx, cx);
    const Interval ay = product(box.ty, sy);
    box.lower_bound =
        gap_value(energy_of_angles(ax.mid(), ay.mid()), which) - ax.half() - ay.half();
    const double km = box.k.mid();
    const double attained =
        gap_value(energy_of_angles(box.tx.mid() * std::cos(km), box.ty.mid() * std::sin(km)),
                  which);
    result.min_found = std::min(result.min_found, attained);
    return attained < tol;
  };

  constexpr std::size_t kInitialSlices = 64;
  std::size_t evaluated = 0;
  for (std::size_t s = 0; s < kInitialSlices; ++s) {
    Box box{{tx_lo, tx_hi},
            {ty_lo, ty_hi},
            {-kPi + 2.0 * kPi * double(s) / kInitialSlices,
             -kPi + 2.0 * kPi * double(s + 1) / kInitialSlices},
            0.0,
            order++};
    ++evaluated;
    if (bound(box)) {
      result.closes = true;
      return result;
    }
    if (box.lower_bound < tol) queue.push(box);
  }

  while (!queue.empty()) {
    if (evaluated >= max_boxes) {
      // Undecided boxes are treated as closing so no transition can hide in them.
      result.closes = true;
      result.decided = false;
      return result;
    }
    const Box box = queue.top();
    queue.pop();

    const Interval cx = cos_range(box.k.lo, box.k.hi);
    const Interval sy = sin_range(box.k.lo, box.k.hi);
    const double spread_tx = box.tx.half() * cx.abs_max();
    const double spread_ty = box.ty.half() * sy.abs_max();
    const double spread_k =
        box.k.half() * (box.tx.abs_max() * sy.abs_max() + box.ty.abs_max() * cx.abs_max());

    Box left = box;
    Box right = box;
    if (spread_k >= spread_tx && spread_k >= spread_ty) {
      left.k.hi = right.k.lo = box.k.mid();
    } else if (spread_tx >= spread_ty) {
      left.tx.hi = right.tx.lo = box.tx.mid();
    } else {
      left.ty.hi = right.ty.lo = box.ty.mid();
    }
    for (Box* child : {&left, &right}) {
      child->order = order++;
      ++evaluated;
      if (bound(*child)) {
        result.closes = true;
        return result;
      }
      if (child->lower_bound < tol) queue.push(*child);
    }
  }
  return result;
}

PhaseCell evaluate_cell(const PhaseDiagramSpec& spec, std::size_t ix, std::size_t iy) {
  PhaseCell cell;
  cell.ix = ix;
  cell.iy = iy;
  cell.tx = spec.tx.center(ix);
  cell.ty = spec.ty.center(iy);
  const double tx_lo = spec.tx.lower(ix), tx_hi = spec.tx.upper(ix);
  const double ty_lo = spec.ty.lower(iy), ty_hi = spec.ty.upper(iy);
  const ModelParams centre{cell.tx, cell.ty};

  const CellGapSearch zero = search_gap_closing(tx_lo, tx_hi, ty_lo, ty_hi, Gap::Zero,
                                                spec.boundary_tol);
  const CellGapSearch pi = search_gap_closing(tx_lo, tx_hi, ty_lo, ty_hi, Gap::Pi,
                                              spec.boundary_tol);
  cell.closes_zero = zero.closes;
  cell.closes_pi = pi.closes;
  cell.min_gap_zero =
      zero.closes ? zero.min_found : min_gap(centre, Gap::Zero, spec.resolution);
  cell.min_gap_pi = pi.closes ? pi.min_found : min_gap(centre, Gap::Pi, spec.resolution);

  if (!cell.boundary()) {
    cell.windings = frame_windings(centre, spec.resolution);
    cell.invariants = invariants_from_windings(*cell.windings);
  }
  return cell;
}

PhaseDiagram phase_diagram(const PhaseDiagramSpec& spec, unsigned workers) {
  if (spec.tx.cells == 0 || spec.ty.cells == 0) {
    throw Error(ErrorCode::InvalidArgument, "phase diagram needs positive cell counts");
  }
  PhaseDiagram out;
  out.spec = spec;
  const std::size_t nx = spec.tx.cells;
  out.cells.resize(nx * spec.ty.cells);
  parallel_for(out.cells.size(), workers, [&](std::size_t index) {
    out.cells[index] = evaluate_cell(spec, index % nx, index / nx);
  });
  return out;
}

}  // namespace floquet
