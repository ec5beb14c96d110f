#pragma once

#include <string_view>

#include "floquet/spinalg.hpp"

namespace floquet {

/// Drive amplitudes (dimensionless rotation angles per half period).
struct ModelParams {
  double tx = 0.0;
  double ty = 0.0;
};

/// Time frame of the one-period operator.
///   Plain: e^{-i theta_x sigma_x} e^{-i theta_y sigma_y}
///   Sym1:  e^{-i (theta_x/2) sigma_x} e^{-i theta_y sigma_y} e^{-i (theta_x/2) sigma_x}
///   Sym2:  e^{-i (theta_y/2) sigma_y} e^{-i theta_x sigma_x} e^{-i (theta_y/2) sigma_y}
/// Sym1 carries nu_1 and is probed by the y-direction quench, Sym2 carries
/// nu_2 and is probed by the x-direction quench.
enum class Frame { Plain, Sym1, Sym2 };

std::string_view to_string(Frame frame) noexcept;

/// Quasienergy below which (or above pi minus which) the Bloch axis is undefined.
inline constexpr double kDefaultGapTol = 1e-9;

struct StepAngles {
  double theta_x = 0.0;  // t_x cos k
  double theta_y = 0.0;  // t_y sin k
};

StepAngles step_angles(double k, const ModelParams& p);

Unitary2 floquet_operator(double k, const ModelParams& p, Frame frame);

/// arccos(cos theta_x cos theta_y), in [0, pi]; frame independent.
double quasienergy(double k, const ModelParams& p);

struct BlochAxis {
  double energy = 0.0;  // [0, pi]
  Vector3 n = Vector3::UnitX();
};

/// U_s = exp(-i E n.sigma) for a symmetric frame. Throws ErrorCode::GaplessPoint
/// when E is within `gap_tol` of 0 or pi, and InvalidArgument for Frame::Plain.
BlochAxis bloch_axis(double k, const ModelParams& p, Frame frame,
                     double gap_tol = kDefaultGapTol);

}  // namespace floquet
