#include "floquet/pulsegen.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "json.hpp"

#include "floquet/errors.hpp"

namespace floquet {

namespace {

constexpr double kZeroAngle = 1e-12;

Pulse make_pulse(Axis axis, double theta, double omega_ref) {
  Pulse pulse;
  pulse.axis = axis;
  pulse.phase_deg = axis == Axis::X ? 0 : 90;
  if (theta < 0.0) pulse.phase_deg += 180;
  pulse.angle = 2.0 * std::abs(theta);
  pulse.duration = pulse.angle / omega_ref;
  return pulse;
}

Axis axis_for_phase(int phase_deg) {
  switch (phase_deg) {
    case 0:
    case 180:
      return Axis::X;
    case 90:
    case 270:
      return Axis::Y;
    default:
      throw Error(ErrorCode::InvalidArgument,
                  "pulse phase must be 0, 90, 180 or 270, got " + std::to_string(phase_deg));
  }
}

}  // namespace

double PulseSchedule::total_duration() const {
  double total = 0.0;
  for (const Pulse& pulse : pulses) total += pulse.duration;
  return total;
}

PulseSchedule compile_schedule(double k, const ModelParams& p, Frame frame,
                               std::size_t repetitions, double omega_ref,
                               const CompileOptions& options) {
  if (!(omega_ref > 0.0) || !std::isfinite(omega_ref)) {
    throw Error(ErrorCode::InvalidArgument, "omega_ref must be positive");
  }
  if (repetitions == 0) throw Error(ErrorCode::InvalidArgument, "need at least one period");

  const StepAngles a = step_angles(k, p);
  struct Slot {
    Axis axis;
    double theta;
  };
  // Operator order reversed: the rightmost factor is applied first.
  std::vector<Slot> period;
  switch (frame) {
    case Frame::Plain:
      period = {{Axis::Y, a.theta_y}, {Axis::X, a.theta_x}};
      break;
    case Frame::Sym1:
      period = {{Axis::X, a.theta_x / 2}, {Axis::Y, a.theta_y}, {Axis::X, a.theta_x / 2}};
      break;
    case Frame::Sym2:
      period = {{Axis::Y, a.theta_y / 2}, {Axis::X, a.theta_x}, {Axis::Y, a.theta_y / 2}};
      break;
  }

  PulseSchedule schedule;
  schedule.omega_ref = omega_ref;
  schedule.pulses.reserve(period.size() * repetitions);
  for (std::size_t n = 0; n < repetitions; ++n) {
    for (const Slot& slot : period) {
      if (!options.keep_zero && std::abs(slot.theta) < kZeroAngle) continue;
      schedule.pulses.push_back(make_pulse(slot.axis, slot.theta, omega_ref));
    }
  }
  return schedule;
}

Unitary2 pulse_unitary(const Pulse& pulse) {
  const double phi = pulse.phase_deg * std::numbers::pi / 180.0;
  const double half = 0.5 * pulse.angle;
  switch (pulse.phase_deg) {
    case 0:
      return axis_exp(Axis::X, half);
    case 90:
      return axis_exp(Axis::Y, half);
    case 180:
      return axis_exp(Axis::X, -half);
    case 270:
      return axis_exp(Axis::Y, -half);
    default:
      return su2_exp(Vector3(std::cos(phi), std::sin(phi), 0.0), half);
  }
}

Unitary2 simulate_schedule(const PulseSchedule& schedule) {
  Unitary2 u;
  for (const Pulse& pulse : schedule.pulses) u = pulse_unitary(pulse) * u;
  return u;
}

std::string schedule_to_json(const PulseSchedule& schedule) {
  nlohmann::ordered_json doc;
  doc["format"] = kScheduleFormat;
  doc["omega_ref_hz"] = schedule.omega_ref;
  auto& list = doc["pulses"] = nlohmann::ordered_json::array();
  for (const Pulse& pulse : schedule.pulses) {
    nlohmann::ordered_json entry;
    entry["angle_rad"] = pulse.angle;
    entry["duration_s"] = pulse.duration;
    entry["phase_deg"] = pulse.phase_deg;
    list.push_back(std::move(entry));
  }
  return doc.dump(2);
}

PulseSchedule schedule_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("schedule json: ") + e.what());
  }
  if (doc.value("format", 0) != kScheduleFormat) {
    throw Error(ErrorCode::InvalidArgument, "unsupported schedule format");
  }
  PulseSchedule schedule;
  try {
    schedule.omega_ref = doc.at("omega_ref_hz").get<double>();
    for (const auto& entry : doc.at("pulses")) {
      Pulse pulse;
      pulse.phase_deg = entry.at("phase_deg").get<int>();
      pulse.axis = axis_for_phase(pulse.phase_deg);
      pulse.angle = entry.at("angle_rad").get<double>();
      pulse.duration = entry.at("duration_s").get<double>();
      if (pulse.angle < 0.0) throw Error(ErrorCode::InvalidArgument, "negative pulse angle");
      schedule.pulses.push_back(pulse);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("schedule json: ") + e.what());
  }
  return schedule;
}

}  // namespace floquet
