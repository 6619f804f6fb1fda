#include "aclab/geometry.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace aclab;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<Vec2> rounded_rectangle(Vec2 lo, Vec2 hi, double r, int n) {
  // perimeter walk: four straights and four quarter arcs, uniform arclength
  const double wx = hi.x - lo.x - 2 * r, wy = hi.y - lo.y - 2 * r;
  const double L = 2 * (wx + wy) + 2 * kPi * r;
  std::vector<Vec2> v;
  v.reserve(n);
  for (int k = 0; k < n; ++k) {
    double s = L * k / n;
    Vec2 p;
    if (s < wx) p = {lo.x + r + s, lo.y};
    else if ((s -= wx) < kPi * r / 2) {
      const double a = s / r;
      p = {hi.x - r + r * std::sin(a), lo.y + r - r * std::cos(a)};
    } else if ((s -= kPi * r / 2) < wy) p = {hi.x, lo.y + r + s};
    else if ((s -= wy) < kPi * r / 2) {
      const double a = s / r;
      p = {hi.x - r + r * std::cos(a), hi.y - r + r * std::sin(a)};
    } else if ((s -= kPi * r / 2) < wx) p = {hi.x - r - s, hi.y};
    else if ((s -= wx) < kPi * r / 2) {
      const double a = s / r;
      p = {lo.x + r - r * std::sin(a), hi.y - r + r * std::cos(a)};
    } else if ((s -= kPi * r / 2) < wy) p = {lo.x, hi.y - r - s};
    else {
      const double a = (s - wy) / r;
      p = {lo.x + r - r * std::cos(a), lo.y + r - r * std::sin(a)};
    }
    v.push_back(p);
  }
  return v;
}

} // namespace

TEST_SUITE("geometry") {

TEST_CASE("signed distance to a circle") {
  const Grid g{81};
  const ScalarField d = signed_distance_circle({0.5, 0.5}, 0.25, g);
  CHECK(d.at(40, 40) == doctest::Approx(-0.25));        // center node
  CHECK(d.at(60, 40) == doctest::Approx(0.0).epsilon(1e-14)); // on the circle
  CHECK(d.at(72, 40) == doctest::Approx(0.15));
  CHECK_THROWS(signed_distance_circle({0.5, 0.5}, 0.45, g, 0.1));
}

TEST_CASE("signed distance to a polyline matches the circle") {
  const Grid g{129};
  const Interface circle = Interface::circle({0.5, 0.5}, 0.25, 512);
  const ScalarField dp = signed_distance_polyline(circle, g);
  const ScalarField dc = signed_distance_circle({0.5, 0.5}, 0.25, g);
  double worst = 0.0;
  for (int j = 0; j < g.n; ++j)
    for (int i = 0; i < g.n; ++i)
      worst = std::max(worst, std::abs(dp.at(i, j) - dc.at(i, j)));
  CHECK(worst <= 1e-4); // polygonization error R(1 - cos(pi/512)) plus interpolation
}

TEST_CASE("polyline distance: node on a vertex and square center") {
  std::vector<Vec2> sq;
  const int m = 32;
  for (int k = 0; k < m; ++k) sq.push_back({0.25 + 0.5 * k / m, 0.25});
  for (int k = 0; k < m; ++k) sq.push_back({0.75, 0.25 + 0.5 * k / m});
  for (int k = 0; k < m; ++k) sq.push_back({0.75 - 0.5 * k / m, 0.75});
  for (int k = 0; k < m; ++k) sq.push_back({0.25, 0.75 - 0.5 * k / m});
  const Interface square(std::move(sq));
  const Grid g{65}; // nodes at multiples of 1/64: (0.25, 0.25) is node (16,16)
  const ScalarField d = signed_distance_polyline(square, g);
  CHECK(d.at(16, 16) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(d.at(32, 32) == doctest::Approx(-0.25)); // center, half side inside
}

TEST_CASE("interface construction rejects bad polylines") {
  std::vector<Vec2> eight;
  for (int k = 0; k < 64; ++k) {
    const double a = 2 * kPi * k / 64;
    eight.push_back({0.5 + 0.2 * std::sin(2 * a), 0.5 + 0.2 * std::sin(a)});
  }
  CHECK_THROWS(Interface(std::move(eight))); // figure eight self-intersects

  std::vector<Vec2> uneven = Interface::circle({0.5, 0.5}, 0.2, 64).vertices();
  uneven.insert(uneven.begin() + 3, uneven[3] + Vec2{1e-6, 0}); // tiny segment
  CHECK_THROWS(Interface(std::move(uneven)));

  CHECK_THROWS(Interface(std::vector<Vec2>{{0, 0}, {1, 0}, {1, 1}}));
}

TEST_CASE("interface normals are unit and outward, orientation normalized") {
  std::vector<Vec2> cw = Interface::circle({0.5, 0.5}, 0.25, 256).vertices();
  std::reverse(cw.begin(), cw.end());
  const Interface iface(std::move(cw)); // normalized back to CCW
  CHECK(iface.area() > 0.0);
  for (std::size_t i = 0; i < iface.size(); ++i) {
    CHECK(std::abs(iface.normals()[i].norm() - 1.0) <= 1e-12);
    const Vec2 radial = (iface.vertices()[i] - Vec2{0.5, 0.5}).normalized();
    CHECK(iface.normals()[i].dot(radial) > 0.99);
  }
}

TEST_CASE("curvature of a circle is -1/R at every vertex") {
  const Interface iface = Interface::circle({0.5, 0.5}, 0.25, 512);
  for (double k : iface.curvatures()) CHECK(std::abs(k + 4.0) <= 1e-3);
  // curvature integral for a closed CCW curve
  double total = 0.0;
  for (std::size_t i = 0; i < iface.size(); ++i) {
    const auto& v = iface.vertices();
    const double len = (v[(i + 1) % iface.size()] - v[i]).norm();
    total += iface.curvatures()[i] * len;
  }
  CHECK(total == doctest::Approx(-2 * kPi).epsilon(0.01));
}

TEST_CASE("curvature of straight sides vanishes, ellipse apex matches") {
  const Interface box(rounded_rectangle({0.3, 0.35}, {0.7, 0.65}, 0.08, 512));
  std::size_t straight = 0;
  for (std::size_t i = 0; i < box.size(); ++i) {
    const Vec2 p = box.vertices()[i];
    // well inside the bottom straight span
    if (p.y < 0.351 && p.x > 0.42 && p.x < 0.58) {
      ++straight;
      CHECK(std::abs(box.curvatures()[i]) <= 1e-3);
    }
  }
  CHECK(straight > 10);
  double total = 0.0;
  for (std::size_t i = 0; i < box.size(); ++i)
    total += box.curvatures()[i] * (box.vertices()[(i + 1) % box.size()] - box.vertices()[i]).norm();
  CHECK(total == doctest::Approx(-2 * kPi).epsilon(0.01));

  std::vector<Vec2> ell;
  for (int k = 0; k < 1024; ++k) {
    const double a = 2 * kPi * k / 1024;
    ell.push_back({0.5 + 0.3 * std::cos(a), 0.5 + 0.2 * std::sin(a)});
  }
  const Interface ellipse(std::move(ell));
  // vertex 0 sits at the end of the major axis: |kappa| = a/b^2
  CHECK(ellipse.curvatures()[0] == doctest::Approx(-7.5).epsilon(0.01));
}

TEST_CASE("hausdorff distance basics") {
  const Interface a = Interface::circle({0.5, 0.5}, 0.2, 256);
  const Interface b = Interface::circle({0.5, 0.5}, 0.23, 256);
  CHECK(hausdorff_distance(a, a) == 0.0);
  CHECK(hausdorff_distance(a, b) == doctest::Approx(0.03).epsilon(1e-3));
  const StreamVelocity v = StreamVelocity::single_vortex(1.0);
  FlowMap still(v, 0.0, 0.0);
  std::vector<Vec2> moved = a.vertices();
  for (Vec2& p : moved) p = still.forward(p);
  CHECK(hausdorff_distance(a, Interface(std::move(moved))) == 0.0);
}

TEST_CASE("flow map: trivial cases and round trip") {
  const StreamVelocity zero = StreamVelocity::zero();
  FlowMap mz(zero, 0.0, 1.0);
  const Vec2 x{0.3, 0.8};
  CHECK((mz.forward(x) - x).norm() == 0.0);

  const StreamVelocity v = StreamVelocity::single_vortex(1.0);
  FlowMap mv(v, 0.0, 1.0, 1e-3);
  // stagnation point at the cell center
  CHECK((mv.forward({0.5, 0.5}) - Vec2{0.5, 0.5}).norm() <= 1e-10);

  // round trip over unit time at the default substep
  for (const Vec2 p : {Vec2{0.3, 0.4}, Vec2{0.62, 0.57}, Vec2{0.25, 0.75}}) {
    CHECK((mv.backward(mv.forward(p)) - p).norm() <= 1e-8);
    // independent oracle: 10x smaller substep
    FlowMap fine(v, 0.0, 1.0, 1e-4);
    CHECK((mv.forward(p) - fine.forward(p)).norm() <= 1e-8);
  }
}

TEST_CASE("flow jacobians are volume preserving (divergence-free field)") {
  for (const StreamVelocity& v :
       {StreamVelocity::single_vortex(1.0), StreamVelocity::double_vortex(0.8)}) {
    FlowMap m(v, 0.0, 0.5, 1e-3);
    for (const Vec2 p : {Vec2{0.3, 0.4}, Vec2{0.62, 0.57}, Vec2{0.45, 0.28}}) {
      Mat2 J;
      m.forward_with_jacobian(p, nullptr, &J);
      CHECK(std::abs(J.det() - 1.0) <= 1e-8);
      Mat2 B;
      m.backward_with_jacobian(p, nullptr, &B);
      CHECK(std::abs(B.det() - 1.0) <= 1e-8);
    }
  }
}

TEST_CASE("transported level set: t = 0 is exact, stretch oracle agrees") {
  const Grid g{257};
  const ScalarField d0 = signed_distance_circle({0.5, 0.5}, 0.25, g);
  const StreamVelocity v = StreamVelocity::single_vortex(1.0);
  const LevelSetField at0 = transported_level_set(d0, FlowMap(v, 0.0, 0.0), g);
  for (int j = 0; j < g.n; j += 7)
    for (int i = 0; i < g.n; i += 7)
      CHECK(at0.e.at(i, j) == doctest::Approx(d0.at(i, j)).epsilon(1e-12));

  // identity flow: stretch exactly 1 on the distance field
  CHECK(stretch_factor(d0, FlowMap(v, 0.0, 0.0), {0.3, 0.5}) == doctest::Approx(1.0));

  // |grad e| by differences vs the variational-equation stretch in the tube
  const Grid gf{513};
  const ScalarField d0f = signed_distance_circle({0.5, 0.5}, 0.25, gf);
  FlowMap map(v, 0.0, 0.25, 1e-3);
  const LevelSetField ls = transported_level_set(d0f, map, gf);
  const double tol = std::max(1e-3, 5.0 * gf.h * gf.h);
  int checked = 0;
  for (int j = 2; j < gf.n - 2; j += 5)
    for (int i = 2; i < gf.n - 2; i += 5) {
      if (std::abs(ls.e.at(i, j)) > 0.05) continue;
      const double s = stretch_factor(d0f, map, gf.node(i, j));
      CHECK(std::abs(ls.gradient_norm.at(i, j) - s) <= tol);
      ++checked;
    }
  CHECK(checked > 100);
}

TEST_CASE("stretch departs from one off the vortex stagnation core") {
  const Grid g{129};
  const ScalarField d0 = signed_distance_circle({0.5, 0.5}, 0.25, g);
  const StreamVelocity v = StreamVelocity::single_vortex(1.0);
  const double s = stretch_factor(d0, FlowMap(v, 0.0, 0.5, 1e-3), {0.75, 0.5});
  CHECK(std::abs(s - 1.0) > 0.05);
}

TEST_CASE("near-rigid rotation at the vortex core keeps |grad e| near one") {
  const Grid g{769};
  const ScalarField d0 = signed_distance_circle({0.5, 0.5}, 0.03, g);
  const StreamVelocity v = StreamVelocity::single_vortex(1.0);
  FlowMap map(v, 0.0, 0.008, 5e-4);
  const LevelSetField ls = transported_level_set(d0, map, g);
  int checked = 0;
  for (int j = 2; j < g.n - 2; ++j)
    for (int i = 2; i < g.n - 2; ++i) {
      const double r = (g.node(i, j) - Vec2{0.5, 0.5}).norm();
      if (std::abs(r - 0.03) > 0.008) continue;
      CHECK(std::abs(ls.gradient_norm.at(i, j) - 1.0) <= 1e-3);
      ++checked;
    }
  CHECK(checked > 200);
}

TEST_CASE("transport equation residual of e is O(h^2 + dt^2)") {
  const StreamVelocity v = StreamVelocity::single_vortex(1.0);
  auto residual = [&](int n, double dt) {
    const Grid g{n};
    const ScalarField d0 = signed_distance_circle({0.5, 0.5}, 0.25, g);
    const LevelSetField e1 = transported_level_set(d0, FlowMap(v, 0.0, 0.1, 1e-3), g);
    const LevelSetField e2 = transported_level_set(d0, FlowMap(v, 0.0, 0.1 + dt, 1e-3), g);
    double worst = 0.0;
    for (int j = 2; j < n - 2; j += 3)
      for (int i = 2; i < n - 2; i += 3) {
        if (std::abs(e1.e.at(i, j)) > 0.08) continue; // stay in the smooth tube
        const double et = (e2.e.at(i, j) - e1.e.at(i, j)) / dt;
        const Vec2 ge = {(e1.e.at(i + 1, j) + e2.e.at(i + 1, j) - e1.e.at(i - 1, j) -
                          e2.e.at(i - 1, j)) / (4 * g.h),
                         (e1.e.at(i, j + 1) + e2.e.at(i, j + 1) - e1.e.at(i, j - 1) -
                          e2.e.at(i, j - 1)) / (4 * g.h)};
        const Vec2 u = v.at(g.node(i, j), 0.0) + v.at(g.node(i, j), 0.0);
        worst = std::max(worst, std::abs(et + 0.5 * u.dot(ge)));
      }
    return worst;
  };
  const double r1 = residual(129, 2e-2);
  const double r2 = residual(257, 1e-2);
  CHECK(r1 <= 50.0 * (1.0 / (128.0 * 128) + 4e-4));
  CHECK(r2 <= r1 / 3.0); // order >= 1.58 under joint halving
}

TEST_CASE("zero contour of a circle field") {
  const Grid g{257};
  const ScalarField d = signed_distance_circle({0.5, 0.5}, 0.25, g);
  const Interface c = extract_zero_contour(d);
  double worst = 0.0;
  for (const Vec2& p : c.vertices())
    worst = std::max(worst, std::abs((p - Vec2{0.5, 0.5}).norm() - 0.25));
  CHECK(worst <= g.h * g.h / 0.25);
  CHECK(c.area() == doctest::Approx(kPi * 0.25 * 0.25).epsilon(1e-3));
}

TEST_CASE("zero contour error cases") {
  const Grid g{65};
  ScalarField ones{g, 1.0};
  CHECK_THROWS_WITH_AS(extract_zero_contour(ones), doctest::Contains("no sign change"),
                       std::runtime_error);
  // two disjoint negative disks -> two components, reported
  ScalarField two{g};
  for (int j = 0; j < g.n; ++j)
    for (int i = 0; i < g.n; ++i) {
      const Vec2 p = g.node(i, j);
      two.at(i, j) = std::min((p - Vec2{0.3, 0.5}).norm() - 0.1,
                              (p - Vec2{0.7, 0.5}).norm() - 0.1);
    }
  CHECK_THROWS_WITH_AS(extract_zero_contour(two), doctest::Contains("2 closed components"),
                       std::runtime_error);
}

TEST_CASE("zero contour is invariant under profile reparameterization") {
  const Grid g{513};
  const ScalarField d = signed_distance_circle({0.5, 0.5}, 0.25, g);
  ScalarField t{g};
  for (std::size_t k = 0; k < d.size(); ++k)
    t.data()[k] = std::tanh(d.data()[k] / 0.15);
  const Interface cd = extract_zero_contour(d);
  const Interface ct = extract_zero_contour(t);
  CHECK(hausdorff_distance(cd, ct) <= 1e-6);
}

TEST_CASE("level-set contour matches advected vertices") {
  const Grid g{513};
  const ScalarField d0 = signed_distance_circle({0.5, 0.5}, 0.25, g);
  const StreamVelocity v = StreamVelocity::single_vortex(1.0);
  FlowMap map(v, 0.0, 0.4, 1e-3);
  const LevelSetField ls = transported_level_set(d0, map, g);
  const Interface from_field = extract_zero_contour(ls.e);

  std::vector<Vec2> adv = Interface::circle({0.5, 0.5}, 0.25, 1024).vertices();
  for (Vec2& p : adv) p = map.forward(p);
  double L = 0;
  for (std::size_t i = 0; i < adv.size(); ++i)
    L += (adv[(i + 1) % adv.size()] - adv[i]).norm();
  const Interface from_flow(polyline_resample(adv, L / adv.size()));
  CHECK(hausdorff_distance(from_field, from_flow) <= 2.0 * g.h);
}

} // TEST_SUITE
