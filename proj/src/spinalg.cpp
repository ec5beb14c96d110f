#include "floquet/spinalg.hpp"

#include <algorithm>
#include <cmath>

#include "floquet/errors.hpp"

namespace floquet {

namespace {

const Complex kI{0.0, 1.0};

double max_abs(const Matrix2c& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

const Matrix2c& pauli(Axis axis) {
  static const Matrix2c sx = (Matrix2c() << 0, 1, 1, 0).finished();
  static const Matrix2c sy = (Matrix2c() << 0, -kI, kI, 0).finished();
  static const Matrix2c sz = (Matrix2c() << 1, 0, 0, -1).finished();
  switch (axis) {
    case Axis::X: return sx;
    case Axis::Y: return sy;
    case Axis::Z: return sz;
  }
  return sz;
}

Matrix2c pauli_dot(const Vector3& v) {
  return v.x() * pauli(Axis::X) + v.y() * pauli(Axis::Y) + v.z() * pauli(Axis::Z);
}

Unitary2 Unitary2::from_matrix(const Matrix2c& m, double tol) {
  const double err = max_abs(m.adjoint() * m - Matrix2c::Identity());
  if (!(err <= tol)) {
    throw Error(ErrorCode::NonUnitary, "max |U^dagger U - I| = " + std::to_string(err));
  }
  return Unitary2(m);
}

Unitary2 Unitary2::pow(unsigned n) const {
  Matrix2c result = Matrix2c::Identity();
  Matrix2c base = m_;
  while (n > 0) {
    if (n & 1u) result = result * base;
    base = base * base;
    n >>= 1u;
  }
  return Unitary2(result);
}

double Unitary2::unitarity_error() const {
  return max_abs(m_.adjoint() * m_ - Matrix2c::Identity());
}

Unitary2 su2_exp(const Vector3& axis, double angle) {
  if (angle == 0.0) return Unitary2();
  const double norm = axis.norm();
  if (norm == 0.0 || !std::isfinite(norm)) {
    throw Error(ErrorCode::DegenerateAxis, "zero-norm rotation axis with nonzero angle");
  }
  const Vector3 n = axis / norm;
  const Matrix2c m =
      std::cos(angle) * Matrix2c::Identity() - kI * std::sin(angle) * pauli_dot(n);
  return Unitary2(m);
}

Unitary2 axis_exp(Axis axis, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Matrix2c m;
  switch (axis) {
    case Axis::X: m << c, Complex(0, -s), Complex(0, -s), c; break;
    case Axis::Y: m << c, -s, s, c; break;
    case Axis::Z: m << Complex(c, -s), 0, 0, Complex(c, s); break;
  }
  return Unitary2(m);
}

Unitary2 PauliCoeffs::reconstruct() const {
  const Matrix2c su = c0 * Matrix2c::Identity() - kI * pauli_dot(c);
  return Unitary2(std::polar(1.0, phase) * su);
}

double PauliCoeffs::angle() const { return std::atan2(c.norm(), c0); }

PauliCoeffs pauli_decompose(const Unitary2& u) {
  const Matrix2c& m = u.matrix();
  if (u.unitarity_error() > kUnitaryInputTol) {
    throw Error(ErrorCode::NonUnitary, "pauli_decompose requires a unitary");
  }
  PauliCoeffs out;
  out.phase = 0.5 * std::arg(m.determinant());
  const Matrix2c v = std::polar(1.0, -out.phase) * m;
  // v = c0 I - i (c . sigma) with real coefficients for v in SU(2).
  out.c0 = (0.5 * (v(0, 0) + v(1, 1))).real();
  out.c.x() = (0.5 * kI * (v(0, 1) + v(1, 0))).real();
  out.c.y() = (0.5 * (v(1, 0) - v(0, 1))).real();
  out.c.z() = (0.5 * kI * (v(0, 0) - v(1, 1))).real();
  return out;
}

SpinState::SpinState(const Vector2c& amplitudes) : amp_(amplitudes) {
  if (std::abs(amp_.norm() - 1.0) > kAlgebraTol) {
    throw Error(ErrorCode::InvalidArgument, "spin state must be normalized");
  }
}

SpinState SpinState::evolved(const Unitary2& u) const {
  Vector2c next = u * amp_;
  next /= next.norm();
  return SpinState(next, Trusted{});
}

double expectation(const SpinState& state, Axis axis) {
  const Vector2c& a = state.amplitudes();
  switch (axis) {
    case Axis::X: return 2.0 * (std::conj(a(0)) * a(1)).real();
    case Axis::Y: return 2.0 * (std::conj(a(0)) * a(1)).imag();
    case Axis::Z: return std::norm(a(0)) - std::norm(a(1));
  }
  return 0.0;
}

Vector3 bloch_vector(const SpinState& state) {
  return {expectation(state, Axis::X), expectation(state, Axis::Y),
          expectation(state, Axis::Z)};
}

double distance_up_to_phase(const Unitary2& a, const Unitary2& b) {
  // The Frobenius-optimal phase aligns b with a; the residual is then measured entrywise.
  const Complex overlap = (b.matrix().adjoint() * a.matrix()).trace();
  const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex(1.0);
  return max_abs(a.matrix() - phase * b.matrix());
}

}  // namespace floquet
