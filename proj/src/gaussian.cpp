#include "optosteer/gaussian.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include "optosteer/error.hpp"

namespace optosteer::gaussian {

namespace {

void require_finite(const Matrix4& m) {
  if (!m.allFinite()) {
    throw Error(ErrorKind::InvalidInput, "covariance matrix has non-finite entries");
  }
}

// det of the conditional covariance of `target` after Gaussian measurements
// on `steering`: M = V_t - V_c^T V_s^{-1} V_c, with det M = det V / det V_s.
double conditional_det(const Matrix2& steering, const Matrix2& target,
                       const Matrix2& coupling) {
  const double det_s = steering.determinant();
  if (!(steering(0, 0) > 0.0) || !(det_s > 0.0)) {
    throw Error(ErrorKind::NonPhysicalState,
                "steering party has a non-positive reduced covariance");
  }
  const Matrix2 m = target - coupling.transpose() * steering.inverse() * coupling;
  const double det_m = m.determinant();
  if (!(m(0, 0) > 0.0) || !(det_m > 0.0)) {
    throw Error(ErrorKind::NonPhysicalState, "conditional covariance is not positive definite");
  }
  return det_m;
}

double steering_from(const Matrix2& steering, const Matrix2& target,
                     const Matrix2& coupling) {
  const double det_m = conditional_det(steering, target, coupling);
  return std::max(0.0, -0.5 * std::log(4.0 * det_m));
}

void require_squeezed_thermal(const Matrix4& m) {
  const double scale = m.diagonal().cwiseAbs().maxCoeff();
  const double tol = kStandardFormTolerance * scale;
  const bool ok = std::abs(m(0, 0) - m(1, 1)) <= tol &&
                  std::abs(m(2, 2) - m(3, 3)) <= tol &&
                  std::abs(m(0, 2) + m(1, 3)) <= tol &&
                  std::abs(m(0, 1)) <= tol && std::abs(m(2, 3)) <= tol &&
                  std::abs(m(0, 3)) <= tol && std::abs(m(1, 2)) <= tol;
  if (!ok) {
    throw Error(ErrorKind::UnsupportedForm,
                "Renyi-2 closed form requires a squeezed thermal state "
                "(v11 = v22, v33 = v44, v13 = -v24, other couplings zero)");
  }
}

}  // namespace

TwoModeCovariance::TwoModeCovariance() : m_(kVacuumVariance * Matrix4::Identity()) {}

TwoModeCovariance TwoModeCovariance::from_matrix(const Matrix4& m) {
  require_finite(m);
  if (m != m.transpose()) {
    throw Error(ErrorKind::InvalidInput, "covariance matrix is not symmetric");
  }
  return TwoModeCovariance(m);
}

TwoModeCovariance TwoModeCovariance::standard_form(double v11, double v22, double v33,
                                                   double v44, double v13, double v24) {
  Matrix4 m = Matrix4::Zero();
  m(0, 0) = v11;
  m(1, 1) = v22;
  m(2, 2) = v33;
  m(3, 3) = v44;
  m(0, 2) = m(2, 0) = v13;
  m(1, 3) = m(3, 1) = v24;
  require_finite(m);
  return TwoModeCovariance(m);
}

TwoModeCovariance TwoModeCovariance::squeezed_thermal(double v11, double v33, double v13) {
  return standard_form(v11, v11, v33, v33, v13, -v13);
}

TwoModeCovariance TwoModeCovariance::squeezed_vacuum(double r) {
  const double c = 0.5 * std::cosh(2.0 * r);
  const double s = 0.5 * std::sinh(2.0 * r);
  return squeezed_thermal(c, c, s);
}

TwoModeCovariance TwoModeCovariance::swap_modes() const {
  Matrix4 s;
  s.topLeftCorner<2, 2>() = m_.bottomRightCorner<2, 2>();
  s.bottomRightCorner<2, 2>() = m_.topLeftCorner<2, 2>();
  s.topRightCorner<2, 2>() = m_.bottomLeftCorner<2, 2>();
  s.bottomLeftCorner<2, 2>() = m_.topRightCorner<2, 2>();
  return TwoModeCovariance(s);
}

Validity validate_cm(const Matrix4& v, double tol) {
  require_finite(v);
  Validity out;
  out.symmetric = (v == v.transpose());

  const Matrix4 sym = 0.5 * (v + v.transpose());
  Eigen::LLT<Matrix4> llt(sym);
  out.positive_definite = llt.info() == Eigen::Success;

  const double det_a = sym.topLeftCorner<2, 2>().determinant();
  const double det_b = sym.bottomRightCorner<2, 2>().determinant();
  const double det_c = sym.topRightCorner<2, 2>().determinant();
  const double det_v = sym.determinant();
  const double delta = det_a + det_b + 2.0 * det_c;
  const double disc = std::sqrt(std::max(0.0, delta * delta - 4.0 * det_v));
  out.nu_minus = std::sqrt(std::max(0.0, 0.5 * (delta - disc)));
  out.nu_plus = std::sqrt(std::max(0.0, 0.5 * (delta + disc)));

  out.bona_fide = out.symmetric && out.positive_definite &&
                  out.nu_minus >= kVacuumVariance - tol;
  return out;
}

std::string_view to_string(SteeringClass c) noexcept {
  switch (c) {
    case SteeringClass::NoWay: return "no_way";
    case SteeringClass::OneWayAToB: return "one_way_a_to_b";
    case SteeringClass::OneWayBToA: return "one_way_b_to_a";
    case SteeringClass::TwoWay: return "two_way";
  }
  return "unknown";
}

double steering_a_to_b(const TwoModeCovariance& v) {
  return steering_from(v.mode_a(), v.mode_b(), v.cross());
}

double steering_b_to_a(const TwoModeCovariance& v) {
  return steering_from(v.mode_b(), v.mode_a(), Matrix2(v.cross().transpose()));
}

double steering_asymmetry(const TwoModeCovariance& v) {
  return std::abs(steering_a_to_b(v) - steering_b_to_a(v));
}

double renyi2_entanglement(const TwoModeCovariance& v) {
  const Matrix4& m = v.matrix();
  require_squeezed_thermal(m);

  const double a = m(0, 0);
  const double b = m(2, 2);
  const double c = m(0, 2);
  const double s = 0.5 * (a + b);
  const double d = 0.5 * (a - b);
  const double g = a * b - c * c;

  if (4.0 * g >= 4.0 * s - 1.0) return 0.0;  // PPT, separable

  // 4g >= 4|d| + 1 is the uncertainty principle for this class; allow
  // rounding at the pure-state edge where it holds with equality.
  const double slack = 4.0 * g - 4.0 * std::abs(d) - 1.0;
  if (slack < -kPhysicalityTolerance * std::max(1.0, 4.0 * s)) {
    throw Error(ErrorKind::NonPhysicalState,
                "squeezed thermal state violates 4g >= 4|d| + 1");
  }

  const double first = std::max(0.0, (4.0 * g - 1.0) * (4.0 * g - 1.0) - 16.0 * d * d);
  const double second = std::max(0.0, s * s - d * d - g);
  const double root = std::sqrt(first * second);
  const double base = ((4.0 * g + 1.0) * s - root) / (4.0 * (d * d + g));
  // E2 = 1/2 ln(base^2)
  return std::max(0.0, std::log(base));
}

SteeringClass classify(double g_ab, double g_ba, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw Error(ErrorKind::InvalidInput, "steering tolerance must be positive");
  }
  const bool ab = g_ab > eps;
  const bool ba = g_ba > eps;
  if (ab && ba) return SteeringClass::TwoWay;
  if (ab) return SteeringClass::OneWayAToB;
  if (ba) return SteeringClass::OneWayBToA;
  return SteeringClass::NoWay;
}

SteeringClass classify_steering(const TwoModeCovariance& v, double eps) {
  return classify(steering_a_to_b(v), steering_b_to_a(v), eps);
}

}  // namespace optosteer::gaussian
