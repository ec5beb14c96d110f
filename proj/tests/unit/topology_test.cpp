#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "floquet/errors.hpp"
#include "floquet/topology.hpp"
#include "oracles.hpp"

namespace {

using namespace floquet;
using oracle::kCase1;
using oracle::kCase2;
using oracle::kPi;

TEST(Winding, FirstCase) {
  EXPECT_EQ(winding_number(kCase1, Frame::Sym1), 1);
  EXPECT_EQ(winding_number(kCase1, Frame::Sym2), 1);
}

TEST(Winding, SecondCase) {
  EXPECT_EQ(winding_number(kCase2, Frame::Sym1), 1);
  EXPECT_EQ(winding_number(kCase2, Frame::Sym2), 5);
}

// Both windings are odd for every gapped point, so weak driving is not trivial.
TEST(Winding, WeakDriveWindsOnce) {
  EXPECT_EQ(winding_number({0.1, 0.1}, Frame::Sym1), 1);
  EXPECT_EQ(winding_number({0.1, 0.1}, Frame::Sym2), 1);
  EXPECT_NEAR(oracle::winding({0.1, 0.1}, Frame::Sym1), 1.0, 1e-9);
}

TEST(Winding, RejectsCoarseGrid) {
  EXPECT_THROW(winding_number(kCase1, Frame::Sym1, std::size_t{128}), Error);
}

TEST(Winding, GaplessGridPointThrows) {
  try {
    winding_number({0.0, 0.0}, Frame::Sym1);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::GaplessPoint);
  }
}

TEST(Winding, MatchesClosedFormOracle) {
  oracle::Sampler s(201);
  for (int i = 0; i < 40; ++i) {
    const ModelParams p = oracle::gapped_point(s, 0.02);
    for (Frame f : {Frame::Sym1, Frame::Sym2}) {
      const double expected = oracle::winding(p, f);
      EXPECT_NEAR(expected, std::round(expected), 1e-6);
      EXPECT_EQ(winding_number(p, f), std::lround(expected)) << p.tx << " " << p.ty;
    }
  }
}

TEST(Winding, QuantizedAndStableUnderRefinement) {
  oracle::Sampler s(202);
  for (int i = 0; i < 100; ++i) {
    const ModelParams p = oracle::gapped_point(s, 0.02);
    for (Frame f : {Frame::Sym1, Frame::Sym2}) {
      const WindingSum sum = accumulate_winding(p, f, 4096);
      if (sum.max_step < 0.5 * kPi) {
        EXPECT_NEAR(sum.turns, std::round(sum.turns), 1e-6);
      }
      const int w = winding_number(p, f, std::size_t{512});
      EXPECT_EQ(winding_number(p, f, std::size_t{1024}), w);
      EXPECT_EQ(winding_number(p, f, std::size_t{4096}), w);
    }
  }
}

TEST(Winding, IntegralFormAgrees) {
  oracle::Sampler s(203);
  for (int i = 0; i < 20; ++i) {
    const ModelParams p = oracle::gapped_point(s, 0.1);
    for (Frame f : {Frame::Sym1, Frame::Sym2}) {
      const double integral = winding_integral(p, f, 1 << 15);
      EXPECT_NEAR(integral, winding_number(p, f), 1e-3) << p.tx << " " << p.ty;
    }
  }
}

TEST(Invariants, KnownPoints) {
  EXPECT_EQ(gap_invariants(kCase1), (InvariantPair{1, 0}));
  EXPECT_EQ(gap_invariants(kCase2), (InvariantPair{3, -2}));
  EXPECT_EQ(frame_windings(kCase2), (WindingPair{1, 5}));
}

TEST(Invariants, IdentityOperatorIsGapless) {
  EXPECT_THROW(gap_invariants({0.0, 0.0}), Error);
  EXPECT_DOUBLE_EQ(min_gap({0.0, 0.0}, Gap::Zero), 0.0);
}

TEST(Invariants, ParityMismatchRejected) {
  EXPECT_THROW(invariants_from_windings({1, 2}), Error);
  EXPECT_EQ(invariants_from_windings({-1, 3}), (InvariantPair{1, -2}));
}

TEST(MinGap, Examples) {
  EXPECT_NEAR(min_gap({kPi, 0.5 * kPi}, Gap::Pi), 0.0, 1e-12);
  EXPECT_GT(min_gap(kCase1, Gap::Zero), 0.1);
  EXPECT_GT(min_gap(kCase1, Gap::Pi), 0.1);
  oracle::Sampler s(204);
  for (int i = 0; i < 50; ++i) {
    const ModelParams p = s.params();
    EXPECT_NEAR(min_gap(p, Gap::Zero, 777), [&] {
      double best = kPi;
      for (double k : brillouin_grid(777)) best = std::min(best, oracle::gap(k, p, false));
      return best;
    }(), 1e-12);
  }
}

TEST(GapSearch, AgreesWithDenseScan) {
  oracle::Sampler s(205);
  int checked = 0;
  for (int i = 0; i < 60; ++i) {
    const double tx = s.uniform(0, 3 * kPi), ty = s.uniform(0, 3 * kPi);
    const double w = kPi / 20;
    for (bool pi_gap : {false, true}) {
      double scan = kPi;
      for (int a = 0; a <= 16; ++a) {
        for (int b = 0; b <= 16; ++b) {
          const ModelParams p{tx + w * a / 16, ty + w * b / 16};
          scan = std::min(scan, oracle::scan_min_gap(p, pi_gap, 2048));
        }
      }
      const CellGapSearch r =
          search_gap_closing(tx, tx + w, ty, ty + w, pi_gap ? Gap::Pi : Gap::Zero, 1e-3);
      // A sampled sub-threshold gap must be found; a clearly open gap must not be flagged.
      if (scan < 1e-3) EXPECT_TRUE(r.closes) << tx << " " << ty;
      if (scan > 0.05) EXPECT_FALSE(r.closes) << tx << " " << ty;
      ++checked;
    }
  }
  EXPECT_EQ(checked, 120);
}

TEST(PhaseDiagram, SingleCellAtKnownPoints) {
  PhaseDiagramSpec spec;
  spec.tx = {2.5 * kPi, 2.5 * kPi, 1};
  spec.ty = {0.5 * kPi, 0.5 * kPi, 1};
  const PhaseDiagram d = phase_diagram(spec);
  ASSERT_EQ(d.cells.size(), 1u);
  ASSERT_TRUE(d.cells[0].invariants.has_value());
  EXPECT_EQ(*d.cells[0].invariants, (InvariantPair{3, -2}));

  spec.tx = spec.ty = {0.0, 0.0, 1};
  const PhaseDiagram origin = phase_diagram(spec);
  EXPECT_TRUE(origin.cells[0].boundary());
  EXPECT_FALSE(origin.cells[0].invariants.has_value());
}

TEST(PhaseDiagram, CellsContainingKnownPoints) {
  PhaseDiagramSpec spec;
  spec.tx = {0.0, 3 * kPi, 30};
  spec.ty = {0.0, 3 * kPi, 30};
  // Cells of width pi/10: (0.5pi, 0.5pi) lies on a cell corner, check all four neighbours.
  for (std::size_t ix : {4u, 5u}) {
    for (std::size_t iy : {4u, 5u}) {
      const PhaseCell c = evaluate_cell(spec, ix, iy);
      ASSERT_TRUE(c.invariants.has_value()) << ix << "," << iy;
      EXPECT_EQ(*c.invariants, (InvariantPair{1, 0}));
    }
  }
  for (std::size_t ix : {24u, 25u}) {
    for (std::size_t iy : {4u, 5u}) {
      const PhaseCell c = evaluate_cell(spec, ix, iy);
      if (c.invariants) EXPECT_EQ(*c.invariants, (InvariantPair{3, -2}));
    }
  }
}

TEST(PhaseDiagram, LineTxEqualsPiIsPiGapBoundary) {
  PhaseDiagramSpec spec;
  spec.tx = {0.0, 3 * kPi, 30};
  spec.ty = {0.0, 3 * kPi, 30};
  // Cells 9 and 10 share the edge t_x = pi; at k = 0 the pi gap closes there for any t_y.
  for (std::size_t iy = 0; iy < 3; ++iy) {
    const PhaseCell c = evaluate_cell(spec, 9, iy);
    EXPECT_TRUE(c.closes_pi) << iy;
    EXPECT_TRUE(c.boundary_flag() & 2);
    EXPECT_LT(oracle::scan_min_gap({kPi, spec.ty.center(iy)}, true), 1e-6);
  }
}

TEST(PhaseDiagram, DeterministicAcrossWorkerCounts) {
  PhaseDiagramSpec spec;
  spec.tx = {0.0, 3 * kPi, 8};
  spec.ty = {0.0, 3 * kPi, 6};
  spec.resolution = 512;
  const PhaseDiagram a = phase_diagram(spec, 1);
  const PhaseDiagram b = phase_diagram(spec, 3);
  ASSERT_EQ(a.cells.size(), b.cells.size());
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    EXPECT_EQ(a.cells[i].boundary_flag(), b.cells[i].boundary_flag());
    EXPECT_EQ(a.cells[i].invariants, b.cells[i].invariants);
    EXPECT_EQ(a.cells[i].min_gap_zero, b.cells[i].min_gap_zero);
    EXPECT_EQ(a.cells[i].ix, i % 8);
    EXPECT_EQ(a.cells[i].iy, i / 8);
  }
}

TEST(PhaseDiagram, RejectsEmptyGrid) {
  PhaseDiagramSpec spec;
  spec.tx = {0.0, 1.0, 0};
  EXPECT_THROW(phase_diagram(spec), Error);
}

TEST(BrillouinGrid, UniformAndEndpointExcluded) {
  const auto ks = brillouin_grid(8);
  ASSERT_EQ(ks.size(), 8u);
  EXPECT_DOUBLE_EQ(ks.front(), -kPi);
  EXPECT_NEAR(ks.back(), kPi - 2 * kPi / 8, 1e-15);
}

}  // namespace
