#pragma once

// Gaussian steering, steering asymmetry and Renyi-2 entanglement of a
// two-mode Gaussian state given by its covariance matrix.
//
// Convention: quadratures q = (b + b^dag)/sqrt(2), p = i(b^dag - b)/sqrt(2),
// so [q, p] = i and the vacuum has variance 1/2. The ordered basis is
// (q_A, p_A, q_B, p_B).

#include <array>
#include <string_view>

#include <Eigen/Core>

namespace optosteer::gaussian {

using Matrix4 = Eigen::Matrix4d;
using Matrix2 = Eigen::Matrix2d;

inline constexpr double kVacuumVariance = 0.5;
inline constexpr double kDefaultEpsilon = 1e-9;
inline constexpr double kPhysicalityTolerance = 1e-9;
inline constexpr double kStandardFormTolerance = 1e-10;

/// Symmetric 4x4 covariance matrix of two bosonic modes A and B.
class TwoModeCovariance {
 public:
  /// Vacuum state, V = 1/2 * I.
  TwoModeCovariance();

  /// Throws InvalidInput if `m` has non-finite entries or is not exactly
  /// symmetric.
  static TwoModeCovariance from_matrix(const Matrix4& m);

  /// Block form with V_A = diag(v11, v22), V_B = diag(v33, v44) and
  /// cross block diag(v13, v24).
  static TwoModeCovariance standard_form(double v11, double v22, double v33,
                                         double v44, double v13, double v24);

  /// Squeezed thermal state: v22 = v11, v44 = v33, v24 = -v13.
  static TwoModeCovariance squeezed_thermal(double v11, double v33, double v13);

  /// Two-mode squeezed vacuum with squeezing r.
  static TwoModeCovariance squeezed_vacuum(double r);

  const Matrix4& matrix() const noexcept { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

  Matrix2 mode_a() const { return m_.topLeftCorner<2, 2>(); }
  Matrix2 mode_b() const { return m_.bottomRightCorner<2, 2>(); }
  Matrix2 cross() const { return m_.topRightCorner<2, 2>(); }

  /// Relabels A <-> B.
  TwoModeCovariance swap_modes() const;

  bool operator==(const TwoModeCovariance&) const = default;

 private:
  explicit TwoModeCovariance(const Matrix4& m) : m_(m) {}
  Matrix4 m_;
};

struct Validity {
  bool symmetric = false;
  bool positive_definite = false;
  bool bona_fide = false;
  double nu_minus = 0.0;
  double nu_plus = 0.0;
};

/// Physicality report for an arbitrary real 4x4 matrix. Symplectic
/// eigenvalues come from the two-mode invariants
/// Delta = det V_A + det V_B + 2 det V_AB and det V.
Validity validate_cm(const Matrix4& v, double tol = kPhysicalityTolerance);

enum class SteeringClass { NoWay, OneWayAToB, OneWayBToA, TwoWay };

std::string_view to_string(SteeringClass c) noexcept;

/// G^{A->B} = max(0, -ln(2 sqrt(det M_B))), M_B = V_B - V_AB^T V_A^{-1} V_AB.
double steering_a_to_b(const TwoModeCovariance& v);
double steering_b_to_a(const TwoModeCovariance& v);
double steering_asymmetry(const TwoModeCovariance& v);

/// Gaussian Renyi-2 entanglement. Closed form, valid only for squeezed
/// thermal states; anything else is rejected with UnsupportedForm.
double renyi2_entanglement(const TwoModeCovariance& v);

SteeringClass classify(double g_ab, double g_ba, double eps = kDefaultEpsilon);
SteeringClass classify_steering(const TwoModeCovariance& v,
                                double eps = kDefaultEpsilon);

}  // namespace optosteer::gaussian
