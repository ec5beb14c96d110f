#include "floquet/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "floquet/errors.hpp"

namespace floquet {

std::string_view to_string(Frame frame) noexcept {
  switch (frame) {
    case Frame::Plain: return "plain";
    case Frame::Sym1: return "sym1";
    case Frame::Sym2: return "sym2";
  }
  return "plain";
}

StepAngles step_angles(double k, const ModelParams& p) {
  return {p.tx * std::cos(k), p.ty * std::sin(k)};
}

Unitary2 floquet_operator(double k, const ModelParams& p, Frame frame) {
  const auto [ax, ay] = step_angles(k, p);
  switch (frame) {
    case Frame::Plain:
      return axis_exp(Axis::X, ax) * axis_exp(Axis::Y, ay);
    case Frame::Sym1: {
      const Unitary2 half = axis_exp(Axis::X, 0.5 * ax);
      return half * axis_exp(Axis::Y, ay) * half;
    }
    case Frame::Sym2: {
      const Unitary2 half = axis_exp(Axis::Y, 0.5 * ay);
      return half * axis_exp(Axis::X, ax) * half;
    }
  }
  return Unitary2();
}

double quasienergy(double k, const ModelParams& p) {
  const auto [ax, ay] = step_angles(k, p);
  return std::acos(std::clamp(std::cos(ax) * std::cos(ay), -1.0, 1.0));
}

BlochAxis bloch_axis(double k, const ModelParams& p, Frame frame, double gap_tol) {
  if (frame == Frame::Plain) {
    throw Error(ErrorCode::InvalidArgument, "Bloch axis is defined for symmetric frames only");
  }
  const PauliCoeffs coeffs = pauli_decompose(floquet_operator(k, p, frame));
  BlochAxis axis;
  axis.energy = coeffs.angle();
  if (axis.energy < gap_tol || std::numbers::pi - axis.energy < gap_tol) {
    throw Error(ErrorCode::GaplessPoint, "E = " + std::to_string(axis.energy) +
                                             " at k = " + std::to_string(k));
  }
  // sin E from the vector part avoids the cancellation of sqrt(1 - c0^2) near the gaps.
  axis.n = coeffs.c / coeffs.c.norm();
  return axis;
}

}  // namespace floquet
