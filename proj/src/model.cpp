#include "crawler/model.hpp"

#include <cmath>
#include <string>

#include "crawler/errors.hpp"

namespace crawler {
namespace {

void RequirePositive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw InvalidParameter(std::string(name) + " must be positive and finite, got " +
                           std::to_string(value));
  }
}

void RequireNonNegative(double value, const char* name) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw InvalidParameter(std::string(name) + " must be non-negative and finite, got " +
                           std::to_string(value));
  }
}

}  // namespace

double friction_offset(double n_f, double eps_f) {
  if (!(n_f > 1.0)) {
    throw NoZeroCrossing("sigmoid friction has no zero crossing for n_f <= 1 (n_f = " +
                         std::to_string(n_f) + ")");
  }
  RequirePositive(eps_f, "eps_f");
  return eps_f * std::log(2.0 / (n_f - 1.0));
}

FrictionParams FrictionParams::FromAnisotropy(double n_f, double eps_f) {
  FrictionParams fp;
  fp.n_f = n_f;
  fp.eps_f = eps_f;
  fp.x_offset = friction_offset(n_f, eps_f);
  fp.delta = 0.5 * (n_f - 1.0);
  fp.Validate();
  return fp;
}

void FrictionParams::Validate() const {
  if (!(n_f > 1.0)) throw NoZeroCrossing("n_f must exceed 1");
  RequirePositive(eps_f, "eps_f");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw InvalidParameter("friction anisotropy delta must lie in (0, 1), got " +
                           std::to_string(delta));
  }
  if (std::abs(delta - 0.5 * (n_f - 1.0)) > 1e-12) {
    throw InvalidParameter("delta must equal (n_f - 1) / 2");
  }
  if (std::abs(sigmoid_friction(0.0, *this)) > 1e-12) {
    throw InvalidParameter("x_offset does not zero the friction at rest");
  }
}

void DimensionlessGroups::Validate() const {
  RequireNonNegative(pi_f, "pi_f");
  RequireNonNegative(pi_sigma, "pi_sigma");
  RequireNonNegative(zeta, "zeta");
  friction.Validate();
}

Nondimensionalization nondimensionalize(const DimensionalParams& p,
                                        const FrictionParams& friction) {
  RequirePositive(p.mass, "mass");
  RequirePositive(p.stiffness, "stiffness");
  // An undamped body is a legal limit; it simply maps to zeta = 0.
  RequireNonNegative(p.damping, "damping");
  RequirePositive(p.force_scale, "force_scale");
  RequirePositive(p.friction_scale, "friction_scale");
  RequirePositive(p.length, "length");

  Nondimensionalization out;
  out.omega_n = std::sqrt(2.0 * p.stiffness / p.mass);
  out.time_scale = 1.0 / out.omega_n;
  out.length_scale = p.length;
  out.groups.pi_f = p.force_scale / (2.0 * p.stiffness * p.length);
  out.groups.pi_sigma = p.friction_scale / (2.0 * p.stiffness * p.length);
  out.groups.zeta = p.damping / std::sqrt(2.0 * p.stiffness * p.mass);
  out.groups.friction = friction;
  out.groups.Validate();
  return out;
}

}  // namespace crawler
