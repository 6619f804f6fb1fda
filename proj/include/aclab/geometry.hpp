#pragma once

#include "aclab/fields.hpp"
#include "aclab/grid.hpp"
#include "aclab/vec.hpp"

#include <optional>
#include <vector>

namespace aclab {

/// Closed, simple, positively oriented (CCW) polyline with outward unit
/// normals and signed curvature.  Sign convention: a circle of radius R with
/// outward normal has curvature -1/R, so normal velocity V = m0 * kappa
/// shrinks it.
class Interface {
public:
  // validates: >= 8 vertices, simple, CCW, vertex spacing within a factor 3
  // band of the mean; computes normals and curvatures
  explicit Interface(std::vector<Vec2> vertices);

  static Interface circle(Vec2 center, double radius, int n_vertices);

  const std::vector<Vec2>& vertices() const { return verts_; }
  const std::vector<Vec2>& normals() const { return normals_; }
  const std::vector<double>& curvatures() const { return curv_; }
  std::size_t size() const { return verts_.size(); }

  double length() const;
  double area() const; // enclosed (shoelace), positive for CCW
  Interface resampled(double target_spacing) const;

private:
  std::vector<Vec2> verts_;
  std::vector<Vec2> normals_;
  std::vector<double> curv_;
};

/// signed curvature by 5-vertex local circle fit (see Interface convention)
std::vector<double> interface_curvature(const std::vector<Vec2>& verts,
                                        const std::vector<Vec2>& outward_normals);

double hausdorff_distance(const Interface& a, const Interface& b);

bool polyline_self_intersects(const std::vector<Vec2>& verts);
std::vector<Vec2> polyline_normals(const std::vector<Vec2>& verts); // outward for CCW
std::vector<Vec2> polyline_resample(const std::vector<Vec2>& verts, double spacing);
double polyline_area(const std::vector<Vec2>& verts);

/// algebraic circle fit over all vertices
void fit_circle(const std::vector<Vec2>& verts, Vec2* center, double* radius);

/// Characteristic map X of dX/dt = v(X,t) between t0 and t1, classical RK4
/// with fixed substep.  backward() integrates the reversed-time field.
struct FlowMap {
  const StreamVelocity* velocity = nullptr;
  double t0 = 0.0;
  double t1 = 0.0;
  double step = 1e-3;

  FlowMap(const StreamVelocity& v, double t0_, double t1_, double step_ = 1e-3)
      : velocity(&v), t0(t0_), t1(t1_), step(step_) {}

  Vec2 forward(Vec2 x) const;
  Vec2 backward(Vec2 x) const;
  // also integrates dJ/dt = grad_v J along the path, J(0) = I
  void forward_with_jacobian(Vec2 x, Vec2* x_out, Mat2* jac_out) const;
  void backward_with_jacobian(Vec2 x, Vec2* x_out, Mat2* jac_out) const;
};

inline Vec2 flow_forward(const FlowMap& m, Vec2 x) { return m.forward(x); }
inline Vec2 flow_backward(const FlowMap& m, Vec2 x) { return m.backward(x); }

/// e(x,t) = d0(X_t^{-1}(x)) sampled on a grid, plus |grad e| by centered
/// differences; a level-set function for the advected interface (generally
/// not a distance function).
struct LevelSetField {
  ScalarField e;
  ScalarField gradient_norm;
};

ScalarField signed_distance_circle(Vec2 center, double radius, const Grid& g,
                                   double clearance = 0.0);
ScalarField signed_distance_polyline(const Interface& iface, const Grid& g);

LevelSetField transported_level_set(const ScalarField& d0, const FlowMap& map, const Grid& g);

/// |J^{-T} grad d0 (X_t^{-1} x)| via the variational equation; equals
/// |grad e| at x and deviates from 1 for straining flows.
double stretch_factor(const ScalarField& d0, const FlowMap& map, Vec2 x);

/// marching squares zero contour, stitched, uniformly resampled (spacing ~ h),
/// oriented so the enclosed region has field < 0.
/// Throws if the field has no sign change or the zero set has more than one
/// closed component.
Interface extract_zero_contour(const ScalarField& field);

} // namespace aclab
