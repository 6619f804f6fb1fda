#include "aclab/fields.hpp"

#include <doctest.h>

#include <cmath>

using namespace aclab;

namespace {

// deterministic low-discrepancy interior points
Vec2 probe_point(int k) {
  const double a = std::fmod(0.05 + 0.754877666 * k, 1.0);
  const double b = std::fmod(0.11 + 0.569840291 * k, 1.0);
  return {0.02 + 0.96 * a, 0.02 + 0.96 * b};
}

void check_gradient_order(const StreamVelocity& v) {
  // centered differences of v vs the analytic Jacobian at two spacings
  double err1 = 0, err2 = 0;
  const double h1 = 1e-3, h2 = 5e-4;
  for (int k = 0; k < 24; ++k) {
    const Vec2 p = probe_point(k);
    const Mat2 G = v.grad_at(p, 0.0);
    auto fd_err = [&](double h) {
      const Vec2 dx = (v.at({p.x + h, p.y}, 0) - v.at({p.x - h, p.y}, 0)) * (0.5 / h);
      const Vec2 dy = (v.at({p.x, p.y + h}, 0) - v.at({p.x, p.y - h}, 0)) * (0.5 / h);
      return std::max(std::max(std::abs(dx.x - G.a11), std::abs(dx.y - G.a21)),
                      std::max(std::abs(dy.x - G.a12), std::abs(dy.y - G.a22)));
    };
    err1 = std::max(err1, fd_err(h1));
    err2 = std::max(err2, fd_err(h2));
  }
  const double order = std::log(err1 / err2) / std::log(h1 / h2);
  CHECK(order >= 1.9);
}

} // namespace

TEST_SUITE("fields") {

TEST_CASE("zero velocity is zero") {
  const StreamVelocity v = StreamVelocity::zero();
  CHECK(v.at({0.3, 0.7}, 0.0).norm() == 0.0);
  CHECK(v.max_speed() == 0.0);
}

TEST_CASE("single vortex vanishes on the boundary") {
  const StreamVelocity v = StreamVelocity::single_vortex(1.0);
  for (int k = 0; k <= 50; ++k) {
    const double s = static_cast<double>(k) / 50;
    CHECK(v.at({0.0, s}, 0).norm() <= 1e-14);
    CHECK(v.at({1.0, s}, 0).norm() <= 1e-14);
    CHECK(v.at({s, 0.0}, 0).norm() <= 1e-14);
    CHECK(v.at({s, 1.0}, 0).norm() <= 1e-14);
  }
}

TEST_CASE("normal velocity vanishes on the boundary for all built-ins") {
  for (const StreamVelocity& v :
       {StreamVelocity::single_vortex(1.3), StreamVelocity::double_vortex(0.7)}) {
    for (int k = 0; k <= 64; ++k) {
      const double s = static_cast<double>(k) / 64;
      CHECK(std::abs(v.at({0.0, s}, 0).x) <= 1e-14); // n = -e_x
      CHECK(std::abs(v.at({1.0, s}, 0).x) <= 1e-14);
      CHECK(std::abs(v.at({s, 0.0}, 0).y) <= 1e-14);
      CHECK(std::abs(v.at({s, 1.0}, 0).y) <= 1e-14);
    }
  }
}

TEST_CASE("velocity gradients are trace free and match finite differences") {
  for (const StreamVelocity& v :
       {StreamVelocity::single_vortex(1.0), StreamVelocity::double_vortex(1.0)}) {
    for (int k = 0; k < 40; ++k)
      CHECK(std::abs(v.grad_at(probe_point(k), 0.0).trace()) <= 1e-14);
    check_gradient_order(v);
  }
}

TEST_CASE("velocity amplitudes bound the speed") {
  const StreamVelocity v1 = StreamVelocity::single_vortex(2.0);
  const StreamVelocity v2 = StreamVelocity::double_vortex(2.0);
  double m1 = 0, m2 = 0;
  for (int k = 0; k < 4000; ++k) {
    m1 = std::max(m1, v1.at(probe_point(k), 0).norm());
    m2 = std::max(m2, v2.at(probe_point(k), 0).norm());
  }
  CHECK(m1 <= v1.max_speed() * (1 + 1e-12));
  CHECK(m2 <= v2.max_speed() * (1 + 1e-12));
  CHECK(m1 >= 0.9 * v1.max_speed()); // the bound is attained somewhere
  CHECK(m2 >= 0.9 * v2.max_speed());
}

TEST_CASE("test field vanishes outside its support") {
  const TestField phi{{0.6, 0.5}, {0.15, 0.2}, 2.0};
  CHECK(phi.at({0.2, 0.2}).norm() == 0.0);
  CHECK(phi.at({0.76, 0.5}).norm() == 0.0);
  const Mat2 G = phi.grad_at({0.9, 0.9});
  CHECK((G.a11 == 0.0 && G.a12 == 0.0 && G.a21 == 0.0 && G.a22 == 0.0));
  CHECK(phi.at({0.6, 0.55}).norm() > 0.0);
}

TEST_CASE("test field is divergence free with consistent gradient") {
  const TestField phi{{0.55, 0.45}, {0.22, 0.18}, 1.0};
  for (int k = 0; k < 60; ++k) {
    const Vec2 p = probe_point(k);
    CHECK(std::abs(phi.grad_at(p).trace()) <= 1e-14);
  }
  // grad phi vs centered differences at h = 1e-3, interior of the support
  double worst = 0.0;
  for (int k = 0; k < 60; ++k) {
    const Vec2 p{0.55 + 0.15 * std::cos(k * 0.7), 0.45 + 0.12 * std::sin(k * 1.3)};
    const Mat2 G = phi.grad_at(p);
    const double h = 1e-3;
    const Vec2 dx = (phi.at({p.x + h, p.y}) - phi.at({p.x - h, p.y})) * (0.5 / h);
    const Vec2 dy = (phi.at({p.x, p.y + h}) - phi.at({p.x, p.y - h})) * (0.5 / h);
    worst = std::max({worst, std::abs(dx.x - G.a11), std::abs(dx.y - G.a21),
                      std::abs(dy.x - G.a12), std::abs(dy.y - G.a22)});
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("support clearance check") {
  const Grid g{101};
  CHECK(TestField{{0.5, 0.5}, {0.2, 0.2}, 1.0}.clearance_ok(g, 2));
  CHECK_FALSE(TestField{{0.5, 0.5}, {0.495, 0.2}, 1.0}.clearance_ok(g, 2));
}

} // TEST_SUITE
