#pragma once

#include <cmath>

#include <Eigen/Core>

namespace crawler {

template <typename Scalar>
using Vector4 = Eigen::Matrix<Scalar, 4, 1>;

// z = (x1 - x2, x1 + x2, x1', x2'): strain, twice the CoM displacement and
// the two nodal speeds, all nondimensional.
using StateVector = Vector4<double>;

struct DimensionalParams {
  double mass;            // kg
  double stiffness;       // N/m
  double damping;         // N s/m
  double force_scale;     // N
  double friction_scale;  // N
  double length;          // m
};

struct FrictionParams {
  double n_f = 1.2;
  double eps_f = 0.05;
  double x_offset = 0.0;
  double delta = 0.1;

  // Builds a consistent parameter set: offset from friction_offset() and
  // delta = (n_f - 1) / 2.
  static FrictionParams FromAnisotropy(double n_f, double eps_f);

  void Validate() const;
};

struct DimensionlessGroups {
  double pi_f = 1.0;
  double pi_sigma = 1.0;
  double zeta = 0.2236;
  FrictionParams friction = FrictionParams::FromAnisotropy(1.2, 0.05);

  void Validate() const;
};

struct Nondimensionalization {
  DimensionlessGroups groups;
  double omega_n;       // rad/s
  double time_scale;    // s
  double length_scale;  // m
};

Nondimensionalization nondimensionalize(const DimensionalParams& p,
                                        const FrictionParams& friction);

// Offset that makes the smooth friction vanish at zero speed.
double friction_offset(double n_f, double eps_f);

/// Smooth anisotropic friction. Tends to 1 for v -> -inf and to
/// (1 - n_f) / 2 for v -> +inf.
template <typename Scalar>
Scalar sigmoid_friction(Scalar v, const FrictionParams& fp) {
  using std::exp;
  const Scalar u = (-v - fp.x_offset) / fp.eps_f;
  const Scalar upper = Scalar(1) / (Scalar(1) + exp(u));
  return Scalar(1) - Scalar(0.5) * (1 + fp.n_f) * upper;
}

template <typename Scalar>
Scalar sigmoid_friction_deriv(Scalar v, const FrictionParams& fp) {
  using std::abs;
  using std::exp;
  const Scalar u = (-v - fp.x_offset) / fp.eps_f;
  // logistic'(u) = e^{-|u|} / (1 + e^{-|u|})^2, symmetric in u.
  const Scalar e = exp(-abs(u));
  const Scalar dlogistic = e / ((1 + e) * (1 + e));
  return -Scalar(0.5) * (1 + fp.n_f) * dlogistic / fp.eps_f;
}

// Piecewise-constant friction used by the describing-function analysis.
inline double piecewise_friction(double v, double delta) {
  return v >= 0.0 ? -delta : 1.0;
}

/// Right-hand side g(z, f) of the crawler dynamics in z-coordinates.
template <typename Scalar>
Vector4<Scalar> rhs(const Vector4<Scalar>& z, Scalar f,
                    const DimensionlessGroups& g) {
  const Scalar strain_rate = z(2) - z(3);
  const Scalar coupling = Scalar(0.5) * z(0) + g.zeta * strain_rate;
  Vector4<Scalar> dz;
  dz(0) = strain_rate;
  dz(1) = z(2) + z(3);
  dz(2) = g.pi_sigma * sigmoid_friction(z(2), g.friction) - coupling +
          g.pi_f * f;
  dz(3) = g.pi_sigma * sigmoid_friction(z(3), g.friction) + coupling -
          g.pi_f * f;
  return dz;
}

}  // namespace crawler
