#pragma once

#include <string_view>
#include <utility>
#include <vector>

namespace pensionsim {

/// Age-dependent earnings factor, built from an (age, factor) knot table with
/// Akima's univariate interpolation. The curve passes through every knot, is
/// C1 everywhere, stays local (a knot edit only moves nearby intervals), and
/// is evaluated with constant extension outside the knot range. Results are
/// clamped to [0, 1] since the cubic can overshoot slightly near a peak.
///
/// Immutable after construction; safe to share across threads.
class ProductivityCurve {
 public:
  /// Requires at least 3 knots with strictly increasing ages and values in
  /// (0, 1]. Throws std::invalid_argument otherwise.
  ///
  /// Construction follows Akima's scheme: segment slopes
  /// d_i = (y_{i+1}-y_i)/(x_{i+1}-x_i) are extended past each boundary with
  /// the quadratic rule (d_{-1} = 2 d_0 - d_1 and so on), node tangents are
  ///   t_i = (|d_{i+1}-d_i| d_{i-1} + |d_{i-1}-d_{i-2}| d_i)
  ///         / (|d_{i+1}-d_i| + |d_{i-1}-d_{i-2}|)
  /// with t_i = (d_{i-1}+d_i)/2 when the denominator vanishes, and every
  /// interval carries the cubic Hermite matching endpoint values and tangents.
  explicit ProductivityCurve(std::vector<std::pair<double, double>> knots);

  /// The built-in hump-shaped table peaking at age 35.
  static ProductivityCurve default_curve();

  /// Parses "age value" lines; '#' starts a comment line. Throws on malformed
  /// input or on knots violating the constructor's requirements.
  static ProductivityCurve from_knot_text(std::string_view text);

  /// Factor in [0, 1] at the given age (constant-extended outside the knots).
  double at(double age) const;

  const std::vector<std::pair<double, double>>& knots() const { return knots_; }

 private:
  std::vector<std::pair<double, double>> knots_;
  // Hermite coefficients per interval: value(dx) = c0 + c1 dx + c2 dx^2 + c3 dx^3.
  std::vector<double> c0_, c1_, c2_, c3_;
};

/// The default knot table, exposed so callers can inspect or re-derive it.
std::vector<std::pair<double, double>> default_productivity_knots();

}  // namespace pensionsim
