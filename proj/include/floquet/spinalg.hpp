#pragma once

#include <array>
#include <complex>

#include <Eigen/Core>
#include <Eigen/LU>

namespace floquet {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Vector2c = Eigen::Vector2cd;
using Vector3 = Eigen::Vector3d;

/// Absolute tolerance for algebraic identities (unitarity, reconstruction).
inline constexpr double kAlgebraTol = 1e-12;

/// Tolerance used when validating caller-supplied matrices as unitary.
inline constexpr double kUnitaryInputTol = 1e-9;

enum class Axis { X, Y, Z };

const Matrix2c& pauli(Axis axis);
Matrix2c pauli_dot(const Vector3& v);

/// 2x2 complex unitary. Construction from an arbitrary matrix is checked;
/// products of unitaries are trusted.
class Unitary2 {
 public:
  Unitary2() : m_(Matrix2c::Identity()) {}

  /// Throws ErrorCode::NonUnitary when max|U^dagger U - I| exceeds `tol`.
  static Unitary2 from_matrix(const Matrix2c& m, double tol = kUnitaryInputTol);

  const Matrix2c& matrix() const noexcept { return m_; }
  Complex operator()(int r, int c) const { return m_(r, c); }

  Unitary2 adjoint() const { return Unitary2(m_.adjoint()); }
  Complex determinant() const { return m_.determinant(); }

  /// U^n by repeated squaring; n >= 0.
  Unitary2 pow(unsigned n) const;

  /// max_ij |(U^dagger U - I)_ij|
  double unitarity_error() const;

  friend Unitary2 operator*(const Unitary2& a, const Unitary2& b) {
    return Unitary2(a.m_ * b.m_);
  }
  Unitary2& operator*=(const Unitary2& rhs) {
    m_ = m_ * rhs.m_;
    return *this;
  }
  friend Vector2c operator*(const Unitary2& u, const Vector2c& v) { return u.m_ * v; }

 private:
  explicit Unitary2(const Matrix2c& m) : m_(m) {}
  friend Unitary2 su2_exp(const Vector3& axis, double angle);
  friend Unitary2 axis_exp(Axis axis, double angle);
  friend struct PauliCoeffs;

  Matrix2c m_;
};

/// exp(-i * angle * (n . sigma)) with n = axis / |axis|.
/// Throws ErrorCode::DegenerateAxis for a zero axis with nonzero angle.
Unitary2 su2_exp(const Vector3& axis, double angle);

/// exp(-i * angle * sigma_axis); the hot-path form of su2_exp.
Unitary2 axis_exp(Axis axis, double angle);

/// U = e^{i phase} (c0 I - i (c . sigma)).
///
/// The global phase is chosen so that e^{-i phase} U has unit determinant
/// (principal branch). SU(2) inputs therefore keep phase 0, c0 = cos E is
/// real, c = sin E n, and the quasienergy E lies in [0, pi].
struct PauliCoeffs {
  double phase = 0.0;
  double c0 = 1.0;
  Vector3 c = Vector3::Zero();

  Unitary2 reconstruct() const;

  /// Rotation angle E in [0, pi], atan2(|c|, c0).
  double angle() const;
};

PauliCoeffs pauli_decompose(const Unitary2& u);

/// Pure two-level state over the column basis (|0>, |1>), sigma_z = diag(1, -1).
class SpinState {
 public:
  /// Throws ErrorCode::InvalidArgument unless | |amp| - 1 | <= 1e-12.
  explicit SpinState(const Vector2c& amplitudes);
  SpinState(Complex a, Complex b) : SpinState(Vector2c(a, b)) {}

  const Vector2c& amplitudes() const noexcept { return amp_; }

  /// Applies a unitary; the result is renormalized against rounding drift.
  SpinState evolved(const Unitary2& u) const;

 private:
  struct Trusted {};
  SpinState(const Vector2c& amplitudes, Trusted) : amp_(amplitudes) {}

  Vector2c amp_;
};

double expectation(const SpinState& state, Axis axis);

/// Bloch vector (<sigma_x>, <sigma_y>, <sigma_z>).
Vector3 bloch_vector(const SpinState& state);

/// min over global phases phi of max_ij |a - e^{i phi} b|.
double distance_up_to_phase(const Unitary2& a, const Unitary2& b);

}  // namespace floquet
