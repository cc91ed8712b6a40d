#include <gtest/gtest.h>

#include <random>

#include "axmcf/observables.hpp"
#include "oracles.hpp"

using namespace axmcf;
using oracle::pi;

namespace {

Curve<double> reversed(const Curve<double>& X) {
  Coords<double> c = X.coords().colwise().reverse();
  return Curve<double>(X.grid(), c);
}

double brute_diameter(const Curve<double>& X) {
  double d = 0;
  for (int i = 0; i < X.dofs(); ++i)
    for (int j = i + 1; j < X.dofs(); ++j) d = std::max(d, (X.point(i) - X.point(j)).norm());
  return d;
}

}  // namespace

TEST(Measure, TorusLimitsConvergeAtSecondOrder) {
  const double R = 2, r = 0.5;
  const double V = 2 * pi * pi * R * r * r, A = 4 * pi * pi * R * r;
  double prev_v = 0, prev_a = 0;
  for (int J : {32, 64, 128, 256}) {
    const auto m = measure(oracle::circle(J, r, R));
    const double ev = std::abs(m.V - V), ea = std::abs(m.A - A);
    EXPECT_GT(m.V, 0);
    if (prev_v > 0) {
      EXPECT_NEAR(std::log2(prev_v / ev), 2.0, 0.1) << J;
      EXPECT_NEAR(std::log2(prev_a / ea), 2.0, 0.1) << J;
    }
    prev_v = ev;
    prev_a = ea;
  }
}

TEST(Measure, SphereLimitsConvergeAtSecondOrder) {
  double prev_v = 0, prev_a = 0;
  for (int J : {32, 64, 128, 256}) {
    const auto m = measure(oracle::half_circle(J));
    const double ev = std::abs(std::abs(m.V) - 4 * pi / 3), ea = std::abs(m.A - 4 * pi);
    if (prev_v > 0) {
      EXPECT_NEAR(std::log2(prev_v / ev), 2.0, 0.1) << J;
      EXPECT_NEAR(std::log2(prev_a / ea), 2.0, 0.1) << J;
    }
    prev_v = ev;
    prev_a = ea;
  }
}

TEST(Measure, HuiskenFunctionalMatchesDenseQuadrature) {
  const Curve<double> X = oracle::wobbly_circle(40, 0.05, 2, 1.0, 2.5);
  double F = 0;
  oracle::integrate(X.grid(), [&](double rho, double w) {
    const auto [x, dx] = oracle::eval(X, rho);
    F += w * x(0) * std::exp(-x.squaredNorm() / 4) * dx.norm();
  });
  EXPECT_NEAR(measure(X).F, F / 2, 1e-13 * F);
}

TEST(Measure, Extents) {
  const Curve<double> X = oracle::wobbly_circle(25, 0.1, 4);
  const auto m = measure(X);
  EXPECT_EQ(m.min_x1, X.x1().minCoeff());
  EXPECT_EQ(m.max_x1, X.x1().maxCoeff());
  EXPECT_EQ(m.max_x2, X.x2().maxCoeff());
}

TEST(Measure, OrientationFlipsVolumeOnly) {
  for (const Curve<double>& X : {oracle::wobbly_circle(30, 0.05, 5), oracle::half_circle(30)}) {
    const auto a = measure(X), b = measure(reversed(X));
    EXPECT_NEAR(b.V, -a.V, 1e-13 * std::abs(a.V));
    EXPECT_NEAR(b.A, a.A, 1e-13 * a.A);
    EXPECT_NEAR(b.F, a.F, 1e-13 * a.F);
    EXPECT_EQ(b.min_x1, a.min_x1);
    EXPECT_EQ(b.max_x1, a.max_x1);
    EXPECT_EQ(b.max_x2, a.max_x2);
    EXPECT_NEAR(mesh_ratio(reversed(X)), mesh_ratio(X), 1e-13);
  }
}

TEST(Measure, AxialTranslation) {
  const Curve<double> X = oracle::wobbly_circle(30, 0.05, 6);
  Curve<double> Y = X;
  Y.coords().col(1).array() += 1.75;
  const auto a = measure(X), b = measure(Y);
  EXPECT_NEAR(b.V, a.V, 1e-12 * a.V);
  EXPECT_NEAR(b.A, a.A, 1e-12 * a.A);
  EXPECT_NEAR(mesh_ratio(Y), mesh_ratio(X), 1e-12);
  EXPECT_GT(std::abs(b.F - a.F), 1e-3);
}

TEST(Measure, Scaling) {
  const Curve<double> X = oracle::wobbly_circle(30, 0.05, 7);
  const auto a = measure(X);
  for (double lambda : {0.2, 3.0}) {
    const Curve<double> Y(X.grid(), lambda * X.coords());
    const auto b = measure(Y);
    EXPECT_NEAR(b.A, lambda * lambda * a.A, 1e-12 * b.A);
    EXPECT_NEAR(b.V, std::pow(lambda, 3) * a.V, 1e-12 * std::abs(b.V));
    EXPECT_NEAR(mesh_ratio(Y), mesh_ratio(X), 1e-12);
  }
}

TEST(MeshRatio, Examples) {
  EXPECT_NEAR(mesh_ratio(oracle::circle(64, 1, 3)), 1.0, 1e-12);
  Curve<double> X(Grid(3, Topology::Open));
  X.coords() << 0, 0, 1, 0, 3, 0, 4, 0;
  EXPECT_DOUBLE_EQ(mesh_ratio(X), 2.0);
  X.coords().row(2) = X.coords().row(1);
  EXPECT_THROW(mesh_ratio(X), DegenerateMesh);
}

TEST(Diameter, MatchesBruteForce) {
  std::mt19937 gen(8);
  std::uniform_real_distribution<double> u(-1, 1);
  std::uniform_int_distribution<int> pick(0, 3);
  for (int k = 0; k < 300; ++k) {
    const int J = 3 + k % 40;
    Curve<double> X(Grid(J, Topology::Closed));
    for (int i = 0; i < J; ++i) {
      switch (pick(gen)) {
        case 0:  // collinear
          X.coords().row(i) << 0.5 * i, 0.25 * i;
          break;
        case 1:  // grid points with duplicates
          X.coords().row(i) << std::round(2 * u(gen)), std::round(2 * u(gen));
          break;
        default:
          X.coords().row(i) << u(gen), u(gen);
      }
    }
    EXPECT_NEAR(diameter(X), brute_diameter(X), 1e-14) << k;
  }
  EXPECT_NEAR(diameter(oracle::circle(100, 0.5, 2)), 1.0, 1e-12);
}

TEST(Classify, Closed) {
  Thresholds<double> th;
  th.eps_diam = 1e-3;
  const Curve<double> tiny = oracle::circle(16, 0.5e-6, 0.5);
  EXPECT_EQ(classify_singularity(tiny, th).kind, SingularityKind::ShrinksToCircle);

  Curve<double> touching = oracle::circle(16, 0.5, 1);
  touching.coords()(8, 0) = 1e-9;
  const auto v = classify_singularity(touching, th, 0.25);
  EXPECT_EQ(v.kind, SingularityKind::HoleCloses);
  EXPECT_EQ(v.time, 0.25);
  EXPECT_EQ(v.min_x1, 1e-9);

  EXPECT_EQ(classify_singularity(oracle::circle(16, 0.5, 1), th).kind, SingularityKind::None);
}

TEST(Classify, Open) {
  const Thresholds<double> th;
  EXPECT_EQ(classify_singularity(oracle::half_circle(16), th).kind, SingularityKind::None);
  EXPECT_EQ(classify_singularity(oracle::half_circle(16, 1e-3), th).kind, SingularityKind::ShrinksToPoint);
  Curve<double> neck = oracle::half_circle(16);
  neck.coords()(8, 0) = 1e-4;
  EXPECT_EQ(classify_singularity(neck, th).kind, SingularityKind::PinchOff);
}

TEST(Classify, Names) {
  EXPECT_EQ(to_string(SingularityKind::HoleCloses), "hole-closes");
  EXPECT_EQ(to_string(SingularityKind::ShrinksToCircle), "shrinks-to-circle");
  EXPECT_EQ(to_string(SingularityKind::PinchOff), "pinch-off");
  EXPECT_EQ(to_string(SingularityKind::ShrinksToPoint), "shrinks-to-point");
  EXPECT_EQ(to_string(SingularityKind::None), "none");
}
