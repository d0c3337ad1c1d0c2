#include "crawler/dfhb.hpp"

#include <cmath>
#include <numbers>

#include "crawler/errors.hpp"

namespace crawler {
namespace {

constexpr double kPi = std::numbers::pi;

void CheckDelta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw InvalidParameter("delta must lie in (0, 1), got " + std::to_string(delta));
  }
}

void CheckGroups(const DimensionlessGroups& g) {
  if (!(g.pi_f > 0.0)) throw InvalidParameter("harmonic balance needs pi_f > 0");
  if (!(g.pi_sigma >= 0.0)) throw InvalidParameter("pi_sigma must be non-negative");
  if (!(g.zeta > 0.0)) throw InvalidParameter("harmonic balance needs zeta > 0");
}

}  // namespace

FourierFrictionCoeffs friction_fourier_coeffs(double a, double theta, double delta) {
  if (!(a > 0.0 && a <= 1.0)) {
    throw OutOfRegime("speed ratio a must lie in (0, 1] for a crawling cycle, got " +
                      std::to_string(a));
  }
  CheckDelta(delta);
  const double root = std::sqrt(1.0 - a * a);
  const double scale = 2.0 * (1.0 + delta) / kPi;
  FourierFrictionCoeffs c;
  c.c0 = (-delta * kPi + (1.0 + delta) * std::acos(a)) / kPi;
  c.c1 = -scale * std::cos(theta) * root;
  c.c2 = scale * std::sin(theta) * root;
  return c;
}

double hb_speed_ratio(double delta) {
  CheckDelta(delta);
  return std::cos(delta * kPi / (1.0 + delta));
}

HbSolution hb_solve(const DimensionlessGroups& g, double delta, double omega) {
  if (!(omega > 0.0)) throw InvalidParameter("forcing frequency must be positive");
  CheckGroups(g);
  HbSolution s;
  s.omega = omega;
  s.a = hb_speed_ratio(delta);
  s.theta1 = 0.0;
  s.theta2 = kPi;

  // sin(phi) = (zeta w A + c) / pi_f and cos(phi) = A (1 - w^2) / (2 pi_f);
  // their squares sum to one, a quadratic in A.
  const double c = 2.0 * g.pi_sigma * (1.0 + delta) * std::sqrt(1.0 - s.a * s.a) / kPi;
  const double detune = 0.5 * (1.0 - omega * omega);
  const double qa = g.zeta * g.zeta * omega * omega + detune * detune;
  const double qb = 2.0 * g.zeta * omega * c;
  const double qc = c * c - g.pi_f * g.pi_f;
  const double disc = qb * qb - 4.0 * qa * qc;
  const double root = disc >= 0.0 ? (-qb + std::sqrt(disc)) / (2.0 * qa) : -1.0;
  if (!(root > 0.0)) {
    throw FrictionDominates("friction dominates at omega = " + std::to_string(omega) +
                            ": no crawling limit cycle is predicted");
  }
  s.A = root;
  const double sin_phi = (g.zeta * omega * s.A + c) / g.pi_f;
  const double cos_phi = s.A * detune / g.pi_f;
  s.phi = std::atan2(sin_phi, cos_phi);
  s.v_tilde = 0.5 * omega * s.A;
  s.v_bar = s.a * s.v_tilde;
  return s;
}

double optimal_speed(const DimensionlessGroups& g, double delta) {
  CheckDelta(delta);
  if (!(g.zeta > 0.0)) throw InvalidParameter("optimal speed needs zeta > 0");
  const double angle = delta * kPi / (1.0 + delta);
  return std::cos(angle) *
         (g.pi_f - 2.0 * g.pi_sigma * ((1.0 + delta) / kPi) * std::sin(angle)) /
         (2.0 * g.zeta);
}

std::vector<HbCurvePoint> hb_speed_curve(const DimensionlessGroups& g, double delta,
                                         const std::vector<double>& omega_grid) {
  std::vector<HbCurvePoint> out;
  out.reserve(omega_grid.size());
  for (double w : omega_grid) {
    HbCurvePoint p;
    p.omega = w;
    try {
      const HbSolution s = hb_solve(g, delta, w);
      const double root = std::sqrt(1.0 - s.a * s.a);
      p.v_com = s.a / (2.0 * g.zeta) *
                (g.pi_f * std::sin(s.phi) - 2.0 * g.pi_sigma * ((1.0 + delta) / kPi) * root);
    } catch (const Error& e) {
      p.note = e.what();
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace crawler
