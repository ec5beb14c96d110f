#include <cmath>

#include <gtest/gtest.h>

#include "floquet/errors.hpp"
#include "floquet/pulsegen.hpp"
#include "oracles.hpp"

namespace {

using namespace floquet;
using oracle::kCase1;
using oracle::kCase2;
using oracle::kPi;

TEST(Compile, PlainAtZeroMomentumElidesYPulse) {
  const ModelParams p{1.4, 0.9};
  const PulseSchedule s = compile_schedule(0.0, p, Frame::Plain, 1, 2.0);
  ASSERT_EQ(s.pulses.size(), 1u);
  EXPECT_EQ(s.pulses[0].axis, Axis::X);
  EXPECT_EQ(s.pulses[0].phase_deg, 0);
  EXPECT_DOUBLE_EQ(s.pulses[0].angle, 2.8);
  EXPECT_DOUBLE_EQ(s.pulses[0].duration, 1.4);

  CompileOptions keep;
  keep.keep_zero = true;
  const PulseSchedule full = compile_schedule(0.0, p, Frame::Plain, 1, 2.0, keep);
  ASSERT_EQ(full.pulses.size(), 2u);
  EXPECT_EQ(full.pulses[0].axis, Axis::Y);
  EXPECT_EQ(full.pulses[0].angle, 0.0);
  EXPECT_EQ(full.pulses[1].axis, Axis::X);
}

TEST(Compile, SymmetricFrameStructure) {
  const double k = kPi / 4;
  const StepAngles a = step_angles(k, kCase1);
  const PulseSchedule s1 = compile_schedule(k, kCase1, Frame::Sym1, 1, 1.0);
  ASSERT_EQ(s1.pulses.size(), 3u);
  EXPECT_EQ(s1.pulses[0].axis, Axis::X);
  EXPECT_EQ(s1.pulses[1].axis, Axis::Y);
  EXPECT_EQ(s1.pulses[2].axis, Axis::X);
  EXPECT_DOUBLE_EQ(s1.pulses[0].angle, a.theta_x);
  EXPECT_DOUBLE_EQ(s1.pulses[1].angle, 2 * a.theta_y);
  EXPECT_DOUBLE_EQ(s1.pulses[2].angle, a.theta_x);

  const PulseSchedule s2 = compile_schedule(k, kCase1, Frame::Sym2, 1, 1.0);
  ASSERT_EQ(s2.pulses.size(), 3u);
  EXPECT_EQ(s2.pulses[0].axis, Axis::Y);
  EXPECT_EQ(s2.pulses[1].axis, Axis::X);
  EXPECT_EQ(s2.pulses[2].axis, Axis::Y);
}

TEST(Compile, LengthScalesWithRepetitions) {
  EXPECT_EQ(compile_schedule(kPi / 4, kCase1, Frame::Sym1, 10, 1.0).pulses.size(), 30u);
  EXPECT_EQ(compile_schedule(0.3, kCase2, Frame::Plain, 7, 1.0).pulses.size(), 14u);
}

TEST(Compile, VanishingXStepIsElided) {
  const PulseSchedule s = compile_schedule(kPi / 2, kCase2, Frame::Sym2, 3, 1.0);
  ASSERT_EQ(s.pulses.size(), 6u);
  for (const Pulse& pulse : s.pulses) EXPECT_EQ(pulse.axis, Axis::Y);
}

TEST(Compile, NegativeAnglesUseOppositePhase) {
  const PulseSchedule s = compile_schedule(kPi, {1.2, 0.4}, Frame::Plain, 1, 1.0);
  ASSERT_EQ(s.pulses.size(), 1u);
  EXPECT_EQ(s.pulses[0].phase_deg, 180);
  EXPECT_DOUBLE_EQ(s.pulses[0].angle, 2.4);
  const PulseSchedule t = compile_schedule(-kPi / 2, {1.2, 0.4}, Frame::Sym1, 1, 1.0);
  for (const Pulse& pulse : t.pulses) {
    EXPECT_GE(pulse.angle, 0.0);
    if (pulse.axis == Axis::Y) EXPECT_EQ(pulse.phase_deg, 270);
  }
}

TEST(Compile, DurationsFollowReferenceRate) {
  const PulseSchedule s = compile_schedule(0.7, kCase2, Frame::Sym1, 5, 3.5e6);
  double total = 0.0;
  for (const Pulse& pulse : s.pulses) {
    EXPECT_EQ(pulse.duration, pulse.angle / 3.5e6);
    total += pulse.angle / 3.5e6;
  }
  EXPECT_EQ(s.total_duration(), total);
}

TEST(Compile, RejectsInvalidInput) {
  EXPECT_THROW(compile_schedule(0.1, kCase1, Frame::Sym1, 1, 0.0), Error);
  EXPECT_THROW(compile_schedule(0.1, kCase1, Frame::Sym1, 1, -2.0), Error);
  EXPECT_THROW(compile_schedule(0.1, kCase1, Frame::Sym1, 0, 1.0), Error);
}

TEST(Simulate, EmptyIsIdentity) {
  EXPECT_LT(oracle::max_abs(simulate_schedule(PulseSchedule{}).matrix() - Matrix2c::Identity()), 1e-15);
}

TEST(Simulate, SingleXPulseOfAnglePi) {
  PulseSchedule s;
  s.pulses.push_back({Axis::X, 0, kPi, kPi});
  const Unitary2 expected = Unitary2::from_matrix(Complex(0, -1) * pauli(Axis::X));
  EXPECT_LT(distance_up_to_phase(simulate_schedule(s), expected), 1e-12);
}

TEST(Simulate, PhaseSelectsRotationAxis) {
  for (int phase : {0, 90, 180, 270}) {
    const double phi = phase * kPi / 180;
    const Pulse pulse{phase % 180 == 0 ? Axis::X : Axis::Y, phase, 0.6, 0.6};
    const Unitary2 expected = su2_exp({std::cos(phi), std::sin(phi), 0.0}, 0.3);
    EXPECT_LT(oracle::max_abs(pulse_unitary(pulse).matrix() - expected.matrix()), 1e-15);
  }
}

TEST(Simulate, RoundTripRandomSpecs) {
  oracle::Sampler s(501);
  for (int i = 0; i < 20; ++i) {
    const ModelParams p = s.params();
    const double k = s.momentum();
    const auto n = static_cast<std::size_t>(1 + s.rng() % 20);
    const Frame f = static_cast<Frame>(s.rng() % 3);
    const PulseSchedule sched = compile_schedule(k, p, f, n, 1.0);
    oracle::M2 target = oracle::M2::Identity();
    for (std::size_t r = 0; r < n; ++r) target = oracle::frame_matrix(k, p, f) * target;
    EXPECT_LT(oracle::phase_distance(simulate_schedule(sched).matrix(), target), 1e-10);
  }
}

TEST(Json, RoundTrip) {
  const PulseSchedule s = compile_schedule(0.9, kCase2, Frame::Sym2, 2, 1.25e7);
  const std::string text = schedule_to_json(s);
  EXPECT_NE(text.find("\"format\": 1"), std::string::npos);
  EXPECT_NE(text.find("\"omega_ref_hz\""), std::string::npos);
  const PulseSchedule back = schedule_from_json(text);
  EXPECT_EQ(back.omega_ref, s.omega_ref);
  EXPECT_EQ(back.pulses, s.pulses);
}

TEST(Json, RejectsBadDocuments) {
  EXPECT_THROW(schedule_from_json("{"), Error);
  EXPECT_THROW(schedule_from_json(R"({"format": 2, "omega_ref_hz": 1, "pulses": []})"), Error);
  EXPECT_THROW(
      schedule_from_json(
          R"({"format": 1, "omega_ref_hz": 1, "pulses": [{"phase_deg": 45, "angle_rad": 1, "duration_s": 1}]})"),
      Error);
}

}  // namespace
