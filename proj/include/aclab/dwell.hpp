#pragma once

#include <functional>

namespace aclab {

/// Smooth double-well potential F with global minima F(-1)=F(+1)=0,
/// its derivative f=F' and second derivative f'.
/// Construction checks the well conditions numerically and throws on failure:
///   f(+-1)=0, f'(+-1)>0, F>=0 on [-1,1] with F(+-1)=0, and
///   int_{-1}^{u} f > 0 for u in (-1,1).
class DoubleWell {
public:
  using Fn = std::function<double(double)>;

  DoubleWell(Fn F, Fn f, Fn f_prime);

  double F(double c) const { return F_(c); }
  double f(double c) const { return f_(c); }
  double f_prime(double c) const { return fp_(c); }

  // max |f'| on [-1,1], sampled; enters the reaction stability bound
  double lipschitz_f() const { return lip_f_; }

  // lets hot loops inline the default reaction term instead of going
  // through std::function
  bool is_quartic() const { return quartic_; }

  // F(c) = (1-c^2)^2
  static DoubleWell quartic();

private:
  Fn F_, f_, fp_;
  double lip_f_ = 0.0;
  bool quartic_ = false;
  void validate() const;
};

} // namespace aclab
