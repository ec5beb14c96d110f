#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "floquet/model.hpp"

namespace floquet {

inline constexpr int kScheduleFormat = 1;

/// One resonant drive pulse rotating the Bloch vector by `angle` about the
/// in-plane axis at `phase_deg`: exp(-i (angle/2) (cos phi sigma_x + sin phi sigma_y)).
/// A step factor exp(-i theta sigma) is therefore a pulse of angle 2 |theta|.
struct Pulse {
  Axis axis = Axis::X;  // X for phase 0/180, Y for phase 90/270
  int phase_deg = 0;    // 0, 90, 180 or 270
  double angle = 0.0;   // >= 0, radians of Bloch-sphere rotation
  double duration = 0.0;

  friend bool operator==(const Pulse&, const Pulse&) = default;
};

struct PulseSchedule {
  double omega_ref = 1.0;
  std::vector<Pulse> pulses;  // first applied first

  double total_duration() const;
};

struct CompileOptions {
  bool keep_zero = false;  // keep zero-angle pulses as timing placeholders
};

/// Pulse sequence for `repetitions` periods of the frame operator at momentum k.
/// Throws ErrorCode::InvalidArgument for omega_ref <= 0 or repetitions == 0.
PulseSchedule compile_schedule(double k, const ModelParams& p, Frame frame,
                               std::size_t repetitions, double omega_ref,
                               const CompileOptions& options = {});

Unitary2 pulse_unitary(const Pulse& pulse);

/// Ordered product of the pulse rotations (later pulses multiply from the left).
Unitary2 simulate_schedule(const PulseSchedule& schedule);

/// Versioned JSON text; keys sorted, numbers printed round-trip exact.
std::string schedule_to_json(const PulseSchedule& schedule);
PulseSchedule schedule_from_json(const std::string& text);

}  // namespace floquet
