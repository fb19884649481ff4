#include "optosteer/dynamics.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <string>

#include "optosteer/error.hpp"

namespace optosteer::dynamics {

namespace {

constexpr int kDim = 4;
constexpr int kPacked = kDim * (kDim + 1) / 2;
using Packed = std::array<double, kPacked>;

Packed pack(const Matrix4& m) {
  Packed out{};
  int k = 0;
  for (int i = 0; i < kDim; ++i)
    for (int j = i; j < kDim; ++j) out[k++] = m(i, j);
  return out;
}

Matrix4 unpack(const Packed& x) {
  Matrix4 m;
  int k = 0;
  for (int i = 0; i < kDim; ++i)
    for (int j = i; j < kDim; ++j) m(i, j) = m(j, i) = x[k++];
  return m;
}

// Lyapunov right-hand side in units of gamma.
class LyapunovSystem {
 public:
  explicit LyapunovSystem(const DriftDiffusion& dd, double gamma)
      : drift_(dd.drift / gamma), diffusion_(dd.diffusion / gamma) {}

  Packed operator()(const Packed& x) const {
    const Matrix4 v = unpack(x);
    return pack(drift_ * v + v * drift_.transpose() + diffusion_);
  }

 private:
  Matrix4 drift_;
  Matrix4 diffusion_;
};

void rk4_step(const LyapunovSystem& f, Packed& x, double h) {
  Packed tmp{};
  const Packed k1 = f(x);
  for (int i = 0; i < kPacked; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
  const Packed k2 = f(tmp);
  for (int i = 0; i < kPacked; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
  const Packed k3 = f(tmp);
  for (int i = 0; i < kPacked; ++i) tmp[i] = x[i] + h * k3[i];
  const Packed k4 = f(tmp);
  for (int i = 0; i < kPacked; ++i)
    x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

// Integrates from 0 through every grid point with steps no larger than `h`.
std::vector<Packed> integrate(const LyapunovSystem& f, const Packed& x0,
                              std::span<const double> grid, double h) {
  std::vector<Packed> out;
  out.reserve(grid.size());
  Packed x = x0;
  double t = 0.0;
  for (double target : grid) {
    const double span = target - t;
    if (span > 0.0) {
      const auto n = static_cast<long>(std::ceil(span / h - 1e-9));
      const double dt = span / static_cast<double>(n);
      for (long s = 0; s < n; ++s) rk4_step(f, x, dt);
    }
    t = target;
    out.push_back(x);
  }
  return out;
}

double max_difference(const std::vector<Packed>& a, const std::vector<Packed>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (int k = 0; k < kPacked; ++k) worst = std::max(worst, std::abs(a[i][k] - b[i][k]));
  return worst;
}

void check_time(double gamma_t) {
  if (!std::isfinite(gamma_t) || gamma_t < 0.0) {
    throw Error(ErrorKind::InvalidInput, "scaled time gamma*t must be finite and >= 0");
  }
}

}  // namespace

DriftDiffusion build_drift_diffusion(const ReducedParams& rp) {
  rp.validate();
  const double n = rp.squeezed_photons();
  const double m = rp.squeezed_correlation();
  const double ga1 = rp.optical_damping(1);
  const double ga2 = rp.optical_damping(2);

  DriftDiffusion dd;
  dd.drift = Matrix4::Zero();
  dd.drift(0, 0) = dd.drift(1, 1) = -0.5 * rp.total_damping(1);
  dd.drift(2, 2) = dd.drift(3, 3) = -0.5 * rp.total_damping(2);

  dd.diffusion = Matrix4::Zero();
  dd.diffusion(0, 0) = dd.diffusion(1, 1) = ga1 * (n + 0.5) + rp.gamma * (rp.nth1 + 0.5);
  dd.diffusion(2, 2) = dd.diffusion(3, 3) = ga2 * (n + 0.5) + rp.gamma * (rp.nth2 + 0.5);
  const double d13 = m * std::sqrt(ga1 * ga2);
  dd.diffusion(0, 2) = dd.diffusion(2, 0) = d13;
  dd.diffusion(1, 3) = dd.diffusion(3, 1) = -d13;
  return dd;
}

TwoModeCovariance covariance_closed_form(const ReducedParams& rp, double gamma_t) {
  rp.validate();
  check_time(gamma_t);
  const double n = rp.squeezed_photons();
  const double m = rp.squeezed_correlation();

  auto local = [&](double c, double nth) {
    const double settled = ((2.0 * n + 1.0) * c + 2.0 * nth + 1.0) / (2.0 * (c + 1.0));
    const double transient = ((1.0 - 2.0 * n) * c - 2.0 * nth + 1.0) / (2.0 * (c + 1.0));
    return settled + transient * std::exp(-(c + 1.0) * gamma_t);
  };
  const double v11 = local(rp.c1, rp.nth1);
  const double v33 = local(rp.c2, rp.nth2);
  const double csum = rp.c1 + rp.c2 + 2.0;
  const double v13 = 2.0 * m * std::sqrt(rp.c1 * rp.c2) / csum *
                     -std::expm1(-0.5 * csum * gamma_t);
  return TwoModeCovariance::squeezed_thermal(v11, v33, v13);
}

TwoModeCovariance stationary_covariance(const ReducedParams& rp) {
  rp.validate();
  const double n = rp.squeezed_photons();
  const double m = rp.squeezed_correlation();
  auto local = [&](double c, double nth) {
    return ((2.0 * n + 1.0) * c + 2.0 * nth + 1.0) / (2.0 * (c + 1.0));
  };
  const double v13 = 2.0 * m * std::sqrt(rp.c1 * rp.c2) / (rp.c1 + rp.c2 + 2.0);
  return TwoModeCovariance::squeezed_thermal(local(rp.c1, rp.nth1), local(rp.c2, rp.nth2), v13);
}

double lyapunov_residual(const DriftDiffusion& dd, const Matrix4& v) {
  return (dd.drift * v + v * dd.drift.transpose() + dd.diffusion).cwiseAbs().maxCoeff();
}

CovarianceTrajectory covariance_ode(const ReducedParams& rp, std::span<const double> grid,
                                    const OdeOptions& options) {
  if (grid.empty()) throw Error(ErrorKind::InvalidInput, "time grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    check_time(grid[i]);
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw Error(ErrorKind::InvalidInput, "time grid must be strictly increasing");
    }
  }
  if (!(options.step > 0.0) || options.max_halvings < 0) {
    throw Error(ErrorKind::InvalidInput, "ODE step must be > 0");
  }

  const LyapunovSystem system(build_drift_diffusion(rp), rp.gamma);
  const Matrix4 v0 = options.initial.value_or(Matrix4::Identity());
  if (!v0.allFinite() || v0 != v0.transpose()) {
    throw Error(ErrorKind::InvalidInput, "initial covariance must be finite and symmetric");
  }
  const Packed x0 = pack(v0);

  double h = options.step;
  std::vector<Packed> coarse = integrate(system, x0, grid, h);
  double change = 0.0;
  for (int halving = 0; halving <= options.max_halvings; ++halving) {
    h *= 0.5;
    std::vector<Packed> fine = integrate(system, x0, grid, h);
    change = max_difference(coarse, fine);
    coarse = std::move(fine);
    if (change <= options.convergence_tol) {
      CovarianceTrajectory out;
      out.times.assign(grid.begin(), grid.end());
      out.states.reserve(coarse.size());
      for (const Packed& x : coarse) out.states.push_back(TwoModeCovariance::from_matrix(unpack(x)));
      return out;
    }
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", change);
  throw Error(ErrorKind::IntegrationError,
              std::string("RK4 did not converge: last halving changed an element by ") + buf);
}

std::vector<double> linear_grid(double start, double end, std::size_t points) {
  if (!std::isfinite(start) || !std::isfinite(end) || start < 0.0 || !(end > start) ||
      points < 2) {
    throw Error(ErrorKind::InvalidInput,
                "grid requires start >= 0, end > start and at least 2 points");
  }
  std::vector<double> grid(points);
  const double width = end - start;
  const auto last = static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = start + width * (static_cast<double>(i) / last);
  }
  grid.back() = end;
  return grid;
}

}  // namespace optosteer::dynamics
