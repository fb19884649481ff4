#pragma once

// Time evolution of the mirror covariance matrix under
//   dV/dt = S V + V S^T + D
// with S = diag(-G1/2, -G1/2, -G2/2, -G2/2). Time is the dimensionless
// gamma*t throughout.
//
// Initial condition: V(0) = I (unit variance per quadrature). This is what
// the closed-form solution reduces to at t = 0; both solvers share it.

#include <optional>
#include <span>
#include <vector>

#include "optosteer/gaussian.hpp"
#include "optosteer/model.hpp"

namespace optosteer::dynamics {

using gaussian::Matrix4;
using gaussian::TwoModeCovariance;
using model::ReducedParams;

struct DriftDiffusion {
  Matrix4 drift;      // S, rad/s
  Matrix4 diffusion;  // D, rad/s
};

DriftDiffusion build_drift_diffusion(const ReducedParams& rp);

/// Analytic V(gamma t). Throws InvalidInput for negative or non-finite time.
TwoModeCovariance covariance_closed_form(const ReducedParams& rp, double gamma_t);

/// Exact gamma t -> infinity limit of the closed form.
TwoModeCovariance stationary_covariance(const ReducedParams& rp);

/// max |S V + V S^T + D| for a given V.
double lyapunov_residual(const DriftDiffusion& dd, const Matrix4& v);

struct CovarianceTrajectory {
  std::vector<double> times;  // gamma t, strictly increasing
  std::vector<TwoModeCovariance> states;
};

struct OdeOptions {
  double step = 1e-4;             // gamma dt
  double convergence_tol = 1e-10; // max element change when halving the step
  int max_halvings = 6;
  /// Defaults to the identity.
  std::optional<Matrix4> initial;
};

/// Classical fixed-step RK4 on the 10 independent elements of V. The step is
/// halved until two successive resolutions agree within `convergence_tol` on
/// every grid point; failing that, throws IntegrationError.
CovarianceTrajectory covariance_ode(const ReducedParams& rp, std::span<const double> grid,
                                    const OdeOptions& options = {});

/// Evenly spaced grid including both ends. Throws InvalidInput unless
/// start >= 0, end > start and points >= 2.
std::vector<double> linear_grid(double start, double end, std::size_t points);

}  // namespace optosteer::dynamics
