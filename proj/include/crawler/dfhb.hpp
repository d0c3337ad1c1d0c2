#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crawler/model.hpp"

namespace crawler {

// DC, cos and sin Fourier coefficients of the piecewise friction driven by a
// biased unit cosine a + cos(wt + theta).
struct FourierFrictionCoeffs {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
};

FourierFrictionCoeffs friction_fourier_coeffs(double a, double theta, double delta);

// Harmonic-balance solution for unit sinusoidal forcing at frequency omega.
struct HbSolution {
  double omega = 0.0;
  double A = 0.0;        // strain amplitude
  double phi = 0.0;      // forcing phase relative to the strain
  double a = 0.0;        // v_bar / v_tilde
  double v_bar = 0.0;    // mean nodal (= CoM) speed
  double v_tilde = 0.0;  // nodal speed oscillation amplitude
  double theta1 = 0.0;
  double theta2 = 0.0;
};

// Mean-to-oscillation speed ratio forced by the CoM harmonic balance.
double hb_speed_ratio(double delta);

HbSolution hb_solve(const DimensionlessGroups& g, double delta, double omega);

/// Closed-form optimal mean CoM speed, reached at omega = 1. A non-positive
/// value means friction dominates and no crawling cycle is predicted.
double optimal_speed(const DimensionlessGroups& g, double delta);

struct HbCurvePoint {
  double omega = 0.0;
  std::optional<double> v_com;  // empty when no crawling cycle exists
  std::string note;
};

std::vector<HbCurvePoint> hb_speed_curve(const DimensionlessGroups& g, double delta,
                                         const std::vector<double>& omega_grid);

}  // namespace crawler
