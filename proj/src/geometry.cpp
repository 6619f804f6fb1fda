#include "aclab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace aclab {

std::vector<Vec2> polyline_normals(const std::vector<Vec2>& v) {
  const std::size_t n = v.size();
  std::vector<Vec2> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = v[(i + n - 1) % n];
    const Vec2& b = v[(i + 1) % n];
    out[i] = (b - a).normalized().perp_right().normalized();
  }
  return out;
}

std::vector<Vec2> polyline_resample(const std::vector<Vec2>& v, double spacing) {
  const std::size_t n = v.size();
  std::vector<double> cum(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    cum[i + 1] = cum[i] + (v[(i + 1) % n] - v[i]).norm();
  const double L = cum[n];
  if (!(L > 0.0)) throw std::runtime_error("resample: degenerate polyline");
  const std::size_t m = std::max<std::size_t>(8, static_cast<std::size_t>(std::llround(L / spacing)));
  std::vector<Vec2> out(m);
  std::size_t seg = 0;
  for (std::size_t k = 0; k < m; ++k) {
    const double s = L * static_cast<double>(k) / static_cast<double>(m);
    while (seg + 1 < n && cum[seg + 1] <= s) ++seg;
    const double ds = cum[seg + 1] - cum[seg];
    const double t = ds > 0.0 ? (s - cum[seg]) / ds : 0.0;
    const Vec2& a = v[seg];
    const Vec2& b = v[(seg + 1) % n];
    out[k] = a + (b - a) * t;
  }
  return out;
}

double polyline_area(const std::vector<Vec2>& v) {
  double a = 0.0;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i)
    a += v[i].cross(v[(i + 1) % n]);
  return 0.5 * a;
}

void fit_circle(const std::vector<Vec2>& verts, Vec2* center, double* radius) {
  // Kasa fit x^2+y^2 = 2ax+2by+c about the centroid
  Vec2 c0{0, 0};
  for (const Vec2& p : verts) c0 += p;
  c0 = c0 * (1.0 / verts.size());
  double sxx = 0, sxy = 0, syy = 0, srx = 0, sry = 0, sr = 0, sx = 0, sy = 0;
  for (const Vec2& p : verts) {
    const Vec2 q = p - c0;
    const double r2 = q.norm2();
    sxx += q.x * q.x; sxy += q.x * q.y; syy += q.y * q.y;
    sx += q.x; sy += q.y;
    srx += r2 * q.x; sry += r2 * q.y; sr += r2;
  }
  const double N = static_cast<double>(verts.size());
  double M[3][4] = {{sxx, sxy, sx, srx}, {sxy, syy, sy, sry}, {sx, sy, N, sr}};
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
    if (std::abs(M[piv][col]) < 1e-300) throw std::runtime_error("fit_circle: degenerate");
    std::swap(M[piv], M[col]);
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      const double f = M[r][col] / M[col][col];
      for (int cc = col; cc < 4; ++cc) M[r][cc] -= f * M[col][cc];
    }
  }
  const double a = 0.5 * M[0][3] / M[0][0];
  const double b = 0.5 * M[1][3] / M[1][1];
  const double c = M[2][3] / M[2][2];
  if (center) *center = c0 + Vec2{a, b};
  if (radius) *radius = std::sqrt(std::max(0.0, a * a + b * b + c));
}

namespace {

std::vector<Vec2> compute_normals(const std::vector<Vec2>& v) { return polyline_normals(v); }

std::vector<Vec2> resample_closed(const std::vector<Vec2>& v, double spacing) {
  return polyline_resample(v, spacing);
}

double shoelace_area(const std::vector<Vec2>& v) { return polyline_area(v); }

bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  auto orient = [](const Vec2& p, const Vec2& q, const Vec2& r) {
    return (q - p).cross(r - p);
  };
  const double o1 = orient(a, b, c), o2 = orient(a, b, d);
  const double o3 = orient(c, d, a), o4 = orient(c, d, b);
  return ((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0));
}

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.norm2();
  if (len2 == 0.0) return (p - a).norm();
  double t = (p - a).dot(ab) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return (p - (a + ab * t)).norm();
}

} // namespace

bool polyline_self_intersects(const std::vector<Vec2>& v) {
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = v[i];
    const Vec2& b = v[(i + 1) % n];
    const double ilo = std::min(a.x, b.x), ihi = std::max(a.x, b.x);
    const double jlo = std::min(a.y, b.y), jhi = std::max(a.y, b.y);
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue; // shares a vertex
      const Vec2& c = v[j];
      const Vec2& d = v[(j + 1) % n];
      if (std::max(c.x, d.x) < ilo || std::min(c.x, d.x) > ihi ||
          std::max(c.y, d.y) < jlo || std::min(c.y, d.y) > jhi)
        continue;
      if (segments_intersect(a, b, c, d)) return true;
    }
  }
  return false;
}

std::vector<double> interface_curvature(const std::vector<Vec2>& verts,
                                        const std::vector<Vec2>& outward_normals) {
  const std::size_t n = verts.size();
  std::vector<double> kap(n, 0.0);
  double mean_sp = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean_sp += (verts[(i + 1) % n] - verts[i]).norm();
  mean_sp /= static_cast<double>(n);
  const double scale = mean_sp > 0 ? 1.0 / mean_sp : 1.0;

  for (std::size_t i = 0; i < n; ++i) {
    // algebraic circle fit x^2+y^2 = 2ax+2by+c on 5 local, rescaled points
    double sxx = 0, sxy = 0, syy = 0, sx = 0, sy = 0, sr = 0, srx = 0, sry = 0;
    for (int k = -2; k <= 2; ++k) {
      const Vec2 q = (verts[(i + n + k) % n] - verts[i]) * scale;
      const double r2 = q.norm2();
      sxx += q.x * q.x; sxy += q.x * q.y; syy += q.y * q.y;
      sx += q.x; sy += q.y;
      sr += r2; srx += r2 * q.x; sry += r2 * q.y;
    }
    // normal equations for (2a, 2b, c)
    double M[3][4] = {{sxx, sxy, sx, srx},
                      {sxy, syy, sy, sry},
                      {sx, sy, 5.0, sr}};
    // gaussian elimination with partial pivoting
    bool singular = false;
    for (int col = 0; col < 3 && !singular; ++col) {
      int piv = col;
      for (int r = col + 1; r < 3; ++r)
        if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
      if (std::abs(M[piv][col]) < 1e-12) { singular = true; break; }
      std::swap(M[piv], M[col]);
      for (int r = 0; r < 3; ++r) {
        if (r == col) continue;
        const double f = M[r][col] / M[col][col];
        for (int cc = col; cc < 4; ++cc) M[r][cc] -= f * M[col][cc];
      }
    }
    if (singular) { kap[i] = 0.0; continue; }
    const double a = 0.5 * M[0][3] / M[0][0];
    const double b = 0.5 * M[1][3] / M[1][1];
    const double c = M[2][3] / M[2][2];
    const double R2 = a * a + b * b + c;
    if (!(R2 > 1e-20)) { kap[i] = 0.0; continue; }
    const double kappa_scaled = 1.0 / std::sqrt(R2);
    const double k_abs = kappa_scaled * scale;
    // fitted center on the inward side -> shrinking circle -> negative
    const double side = Vec2{a, b}.dot(outward_normals[i]);
    kap[i] = side < 0 ? -k_abs : k_abs;
    if (k_abs < 1e-14) kap[i] = 0.0;
  }
  return kap;
}

Interface::Interface(std::vector<Vec2> vertices) : verts_(std::move(vertices)) {
  const std::size_t n = verts_.size();
  if (n < 8) throw std::invalid_argument("interface: needs at least 8 vertices");
  const double area = shoelace_area(verts_);
  if (area == 0.0) throw std::invalid_argument("interface: degenerate (zero area)");
  if (area < 0.0) std::reverse(verts_.begin(), verts_.end()); // normalize to CCW
  if (polyline_self_intersects(verts_))
    throw std::invalid_argument("interface: polyline self-intersects");

  double mean = 0.0, lo = 1e300, hi = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double l = (verts_[(i + 1) % n] - verts_[i]).norm();
    mean += l;
    lo = std::min(lo, l);
    hi = std::max(hi, l);
  }
  mean /= static_cast<double>(n);
  if (!(lo > 0.0) || hi > 3.0 * mean || lo < mean / 3.0)
    throw std::invalid_argument("interface: vertex spacing outside factor-3 band of mean");

  normals_ = compute_normals(verts_);
  curv_ = interface_curvature(verts_, normals_);
}

Interface Interface::circle(Vec2 center, double radius, int n_vertices) {
  std::vector<Vec2> v(n_vertices);
  for (int k = 0; k < n_vertices; ++k) {
    const double a = 2.0 * M_PI * k / n_vertices;
    v[k] = {center.x + radius * std::cos(a), center.y + radius * std::sin(a)};
  }
  return Interface(std::move(v));
}

double Interface::length() const {
  double L = 0.0;
  for (std::size_t i = 0; i < verts_.size(); ++i)
    L += (verts_[(i + 1) % verts_.size()] - verts_[i]).norm();
  return L;
}

double Interface::area() const { return shoelace_area(verts_); }

Interface Interface::resampled(double target_spacing) const {
  return Interface(resample_closed(verts_, target_spacing));
}

double hausdorff_distance(const Interface& a, const Interface& b) {
  auto directed = [](const Interface& p, const Interface& q) {
    double worst = 0.0;
    const auto& qumulti = q.vertices();
    const std::size_t m = qumulti.size();
    for (const Vec2& x : p.vertices()) {
      double best = 1e300;
      for (std::size_t j = 0; j < m; ++j) {
        const double d = point_segment_distance(x, qumulti[j], qumulti[(j + 1) % m]);
        if (d < best) best = d;
      }
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

// ---------------------------------------------------------------------------
// flow maps

namespace {

constexpr double kDomainSlack = 1e-8;

inline Vec2 clamp_domain(Vec2 p) {
  Vec2 q{std::clamp(p.x, 0.0, 1.0), std::clamp(p.y, 0.0, 1.0)};
  if (std::abs(q.x - p.x) > kDomainSlack || std::abs(q.y - p.y) > kDomainSlack)
    throw std::runtime_error("flow map: trajectory left the domain");
  return q;
}

template <typename Rhs>
Vec2 rk4_path(Vec2 x, double duration, double step, Rhs&& rhs) {
  if (duration <= 0.0) return x;
  const int nsteps = std::max(1, static_cast<int>(std::ceil(duration / step)));
  const double dt = duration / nsteps;
  double s = 0.0;
  for (int k = 0; k < nsteps; ++k) {
    const Vec2 k1 = rhs(x, s);
    const Vec2 k2 = rhs(x + k1 * (0.5 * dt), s + 0.5 * dt);
    const Vec2 k3 = rhs(x + k2 * (0.5 * dt), s + 0.5 * dt);
    const Vec2 k4 = rhs(x + k3 * dt, s + dt);
    x = clamp_domain(x + (k1 + (k2 + k3) * 2.0 + k4) * (dt / 6.0));
    s += dt;
  }
  return x;
}

struct PathState {
  Vec2 x;
  Mat2 J;
};

template <typename Rhs, typename GradRhs>
PathState rk4_path_jac(Vec2 x, double duration, double step, Rhs&& rhs, GradRhs&& grad) {
  PathState st{x, Mat2::identity()};
  if (duration <= 0.0) return st;
  const int nsteps = std::max(1, static_cast<int>(std::ceil(duration / step)));
  const double dt = duration / nsteps;
  double s = 0.0;
  for (int k = 0; k < nsteps; ++k) {
    const Vec2 k1 = rhs(st.x, s);
    const Mat2 K1 = grad(st.x, s).mul(st.J);
    const Vec2 x2 = st.x + k1 * (0.5 * dt);
    const Vec2 k2 = rhs(x2, s + 0.5 * dt);
    const Mat2 K2 = grad(x2, s + 0.5 * dt).mul(st.J + K1 * (0.5 * dt));
    const Vec2 x3 = st.x + k2 * (0.5 * dt);
    const Vec2 k3 = rhs(x3, s + 0.5 * dt);
    const Mat2 K3 = grad(x3, s + 0.5 * dt).mul(st.J + K2 * (0.5 * dt));
    const Vec2 x4 = st.x + k3 * dt;
    const Vec2 k4 = rhs(x4, s + dt);
    const Mat2 K4 = grad(x4, s + dt).mul(st.J + K3 * dt);
    st.x = clamp_domain(st.x + (k1 + (k2 + k3) * 2.0 + k4) * (dt / 6.0));
    st.J = st.J + (K1 + (K2 + K3) * 2.0 + K4) * (dt / 6.0);
    s += dt;
  }
  return st;
}

} // namespace

Vec2 FlowMap::forward(Vec2 x) const {
  const StreamVelocity& v = *velocity;
  const double T0 = t0;
  return rk4_path(x, t1 - t0, step,
                  [&](Vec2 p, double s) { return v.at(p, T0 + s); });
}

Vec2 FlowMap::backward(Vec2 x) const {
  const StreamVelocity& v = *velocity;
  const double T1 = t1;
  return rk4_path(x, t1 - t0, step,
                  [&](Vec2 p, double s) { return v.at(p, T1 - s) * -1.0; });
}

void FlowMap::forward_with_jacobian(Vec2 x, Vec2* x_out, Mat2* jac_out) const {
  const StreamVelocity& v = *velocity;
  const double T0 = t0;
  auto st = rk4_path_jac(
      x, t1 - t0, step, [&](Vec2 p, double s) { return v.at(p, T0 + s); },
      [&](Vec2 p, double s) { return v.grad_at(p, T0 + s); });
  if (x_out) *x_out = st.x;
  if (jac_out) *jac_out = st.J;
}

void FlowMap::backward_with_jacobian(Vec2 x, Vec2* x_out, Mat2* jac_out) const {
  const StreamVelocity& v = *velocity;
  const double T1 = t1;
  auto st = rk4_path_jac(
      x, t1 - t0, step, [&](Vec2 p, double s) { return v.at(p, T1 - s) * -1.0; },
      [&](Vec2 p, double s) { return v.grad_at(p, T1 - s) * -1.0; });
  if (x_out) *x_out = st.x;
  if (jac_out) *jac_out = st.J;
}

// ---------------------------------------------------------------------------
// level sets and distances

ScalarField signed_distance_circle(Vec2 center, double radius, const Grid& g, double clearance) {
  if (center.x - radius < clearance || center.x + radius > 1.0 - clearance ||
      center.y - radius < clearance || center.y + radius > 1.0 - clearance)
    throw std::invalid_argument("signed_distance_circle: circle too close to the boundary");
  ScalarField f{g};
  for (int j = 0; j < g.n; ++j)
    for (int i = 0; i < g.n; ++i)
      f.at(i, j) = (g.node(i, j) - center).norm() - radius;
  return f;
}

ScalarField signed_distance_polyline(const Interface& iface, const Grid& g) {
  const auto& v = iface.vertices();
  const std::size_t m = v.size();
  ScalarField f{g};
  for (int j = 0; j < g.n; ++j) {
    for (int i = 0; i < g.n; ++i) {
      const Vec2 p = g.node(i, j);
      double best = 1e300;
      int crossings = 0;
      for (std::size_t k = 0; k < m; ++k) {
        const Vec2& a = v[k];
        const Vec2& b = v[(k + 1) % m];
        best = std::min(best, point_segment_distance(p, a, b));
        if ((a.y > p.y) != (b.y > p.y)) {
          const double xin = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
          if (p.x < xin) ++crossings;
        }
      }
      f.at(i, j) = (crossings % 2 == 1) ? -best : best;
    }
  }
  return f;
}

LevelSetField transported_level_set(const ScalarField& d0, const FlowMap& map, const Grid& g) {
  LevelSetField out{ScalarField{g}, ScalarField{g}};
  for (int j = 0; j < g.n; ++j)
    for (int i = 0; i < g.n; ++i)
      out.e.at(i, j) = d0.interp(map.backward(g.node(i, j)));
  for (int j = 0; j < g.n; ++j)
    for (int i = 0; i < g.n; ++i)
      out.gradient_norm.at(i, j) = out.e.grad_at(i, j).norm();
  return out;
}

double stretch_factor(const ScalarField& d0, const FlowMap& map, Vec2 x) {
  Vec2 y;
  Mat2 B;
  map.backward_with_jacobian(x, &y, &B);
  if (std::abs(B.det()) < 1e-12)
    throw std::runtime_error("stretch_factor: singular flow Jacobian");
  return B.apply_transpose(d0.interp_grad(y)).norm();
}

// ---------------------------------------------------------------------------
// marching squares

namespace {

using EdgeKey = std::uint64_t;

inline EdgeKey hkey(int i, int j, int n) { return (static_cast<EdgeKey>(j) * n + i) * 2; }
inline EdgeKey vkey(int i, int j, int n) { return (static_cast<EdgeKey>(j) * n + i) * 2 + 1; }

} // namespace

Interface extract_zero_contour(const ScalarField& field) {
  const Grid& g = field.grid();
  const int n = g.n;
  if (field.min() >= 0.0 || field.max() < 0.0)
    throw std::runtime_error("extract_zero_contour: field has no sign change");

  auto inside = [](double v) { return v < 0.0; };
  std::unordered_map<EdgeKey, Vec2> pts;
  pts.reserve(1024);
  auto edge_point = [&](EdgeKey key, int i0, int j0, int i1, int j1) {
    auto it = pts.find(key);
    if (it != pts.end()) return;
    const double va = field.at(i0, j0), vb = field.at(i1, j1);
    const double t = va / (va - vb);
    const Vec2 a = g.node(i0, j0), b = g.node(i1, j1);
    pts.emplace(key, a + (b - a) * t);
  };

  std::vector<std::pair<EdgeKey, EdgeKey>> segs;
  segs.reserve(1024);
  auto emit = [&](EdgeKey a, EdgeKey b) { segs.emplace_back(a, b); };

  for (int j = 0; j + 1 < n; ++j) {
    for (int i = 0; i + 1 < n; ++i) {
      const double v00 = field.at(i, j), v10 = field.at(i + 1, j);
      const double v11 = field.at(i + 1, j + 1), v01 = field.at(i, j + 1);
      const int mask = (inside(v00) ? 1 : 0) | (inside(v10) ? 2 : 0) |
                       (inside(v11) ? 4 : 0) | (inside(v01) ? 8 : 0);
      if (mask == 0 || mask == 15) continue;
      const EdgeKey B = hkey(i, j, n), T = hkey(i, j + 1, n);
      const EdgeKey L = vkey(i, j, n), R = vkey(i + 1, j, n);
      auto pB = [&] { edge_point(B, i, j, i + 1, j); };
      auto pT = [&] { edge_point(T, i, j + 1, i + 1, j + 1); };
      auto pL = [&] { edge_point(L, i, j, i, j + 1); };
      auto pR = [&] { edge_point(R, i + 1, j, i + 1, j + 1); };
      switch (mask) {
        case 1: case 14: pL(); pB(); emit(L, B); break;
        case 2: case 13: pB(); pR(); emit(B, R); break;
        case 4: case 11: pR(); pT(); emit(R, T); break;
        case 8: case 7:  pT(); pL(); emit(T, L); break;
        case 3: case 12: pL(); pR(); emit(L, R); break;
        case 6: case 9:  pB(); pT(); emit(B, T); break;
        case 5: case 10: {
          pL(); pB(); pR(); pT();
          const bool center_in = inside(0.25 * (v00 + v10 + v11 + v01));
          const bool lone_out_corners = (mask == 5); // 00 and 11 inside
          if (lone_out_corners == center_in) { emit(B, R); emit(T, L); }
          else { emit(L, B); emit(R, T); }
          break;
        }
        default: break;
      }
    }
  }
  if (segs.empty())
    throw std::runtime_error("extract_zero_contour: field has no sign change");

  // stitch segments into loops by shared edge keys
  std::unordered_map<EdgeKey, std::pair<int, int>> incident; // up to two segment ids
  incident.reserve(segs.size() * 2);
  for (int s = 0; s < static_cast<int>(segs.size()); ++s) {
    for (EdgeKey k : {segs[s].first, segs[s].second}) {
      auto [it, fresh] = incident.try_emplace(k, std::pair<int, int>{s, -1});
      if (!fresh) {
        if (it->second.second != -1)
          throw std::runtime_error("extract_zero_contour: non-manifold zero set");
        it->second.second = s;
      }
    }
  }

  std::vector<char> used(segs.size(), 0);
  std::vector<std::vector<Vec2>> loops;
  for (int start = 0; start < static_cast<int>(segs.size()); ++start) {
    if (used[start]) continue;
    std::vector<Vec2> loop;
    int cur = start;
    EdgeKey entry = segs[start].first;
    while (true) {
      used[cur] = 1;
      const EdgeKey exit = (segs[cur].first == entry) ? segs[cur].second : segs[cur].first;
      loop.push_back(pts.at(exit));
      const auto& inc = incident.at(exit);
      const int nxt = (inc.first == cur) ? inc.second : inc.first;
      if (nxt == -1)
        throw std::runtime_error("extract_zero_contour: open contour (zero set reaches boundary)");
      if (nxt == start || used[nxt]) break;
      entry = exit;
      cur = nxt;
    }
    loops.push_back(std::move(loop));
  }
  if (loops.size() != 1)
    throw std::runtime_error("extract_zero_contour: zero set has " +
                             std::to_string(loops.size()) + " closed components");

  std::vector<Vec2> verts = resample_closed(loops[0], g.h);
  if (shoelace_area(verts) < 0.0) std::reverse(verts.begin(), verts.end());

  // the enclosed region must be where the field is negative
  const std::size_t m = verts.size();
  int votes = 0, total = 0;
  for (std::size_t k = 0; k < m; k += std::max<std::size_t>(1, m / 8)) {
    const Vec2 a = verts[k], b = verts[(k + 1) % m];
    const Vec2 mid = (a + b) * 0.5;
    const Vec2 nrm = (b - a).normalized().perp_right(); // outward for CCW
    const Vec2 probe_in = mid - nrm * (0.75 * g.h);
    if (probe_in.x < 0 || probe_in.x > 1 || probe_in.y < 0 || probe_in.y > 1) continue;
    ++total;
    if (field.interp(probe_in) < 0.0) ++votes;
  }
  if (total > 0 && votes * 2 < total)
    throw std::runtime_error("extract_zero_contour: enclosed region is not the negative phase");

  return Interface(std::move(verts));
}

} // namespace aclab
