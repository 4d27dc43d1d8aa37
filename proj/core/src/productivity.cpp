#include "pensionsim/productivity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace pensionsim {

std::vector<std::pair<double, double>> default_productivity_knots() {
  return {{0, 0.60}, {20, 0.85}, {30, 0.98}, {35, 1.00}, {45, 0.95},
          {55, 0.85}, {65, 0.70}, {80, 0.50}, {100, 0.35}};
}

ProductivityCurve::ProductivityCurve(std::vector<std::pair<double, double>> knots)
    : knots_(std::move(knots)) {
  const std::size_t n = knots_.size();
  if (n < 3) {
    throw std::invalid_argument("ProductivityCurve: need at least 3 knots");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && !(knots_[i].first > knots_[i - 1].first)) {
      throw std::invalid_argument("ProductivityCurve: knot ages must be strictly increasing");
    }
    const double v = knots_[i].second;
    if (!(v > 0.0 && v <= 1.0)) {
      throw std::invalid_argument("ProductivityCurve: knot value " + std::to_string(v) +
                                  " outside (0, 1]");
    }
  }

  // Segment slopes with two quadratic-extension slopes on each side, stored
  // shifted by 2: d[i+2] is the slope of [x_i, x_{i+1}].
  std::vector<double> d(n + 3);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    d[i + 2] = (knots_[i + 1].second - knots_[i].second) /
               (knots_[i + 1].first - knots_[i].first);
  }
  d[1] = 2.0 * d[2] - d[3];
  d[0] = 2.0 * d[1] - d[2];
  d[n + 1] = 2.0 * d[n] - d[n - 1];
  d[n + 2] = 2.0 * d[n + 1] - d[n];

  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double w1 = std::abs(d[i + 3] - d[i + 2]);
    const double w2 = std::abs(d[i + 1] - d[i]);
    const double denom = w1 + w2;
    t[i] = denom == 0.0 ? 0.5 * (d[i + 1] + d[i + 2])
                        : (w1 * d[i + 1] + w2 * d[i + 2]) / denom;
  }

  const std::size_t intervals = n - 1;
  c0_.resize(intervals);
  c1_.resize(intervals);
  c2_.resize(intervals);
  c3_.resize(intervals);
  for (std::size_t i = 0; i < intervals; ++i) {
    const double h = knots_[i + 1].first - knots_[i].first;
    const double dy = knots_[i + 1].second - knots_[i].second;
    c0_[i] = knots_[i].second;
    c1_[i] = t[i];
    c2_[i] = (3.0 * dy / h - 2.0 * t[i] - t[i + 1]) / h;
    c3_[i] = (t[i] + t[i + 1] - 2.0 * dy / h) / (h * h);
  }
}

ProductivityCurve ProductivityCurve::default_curve() {
  return ProductivityCurve(default_productivity_knots());
}

ProductivityCurve ProductivityCurve::from_knot_text(std::string_view text) {
  std::vector<std::pair<double, double>> knots;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.front() == '#') continue;
    std::istringstream ls(line);
    double age = 0.0, value = 0.0;
    if (!(ls >> age)) continue;  // blank line
    if (!(ls >> value)) {
      throw std::runtime_error("knot file line " + std::to_string(line_no) +
                               ": expected 'age value'");
    }
    std::string extra;
    if (ls >> extra) {
      throw std::runtime_error("knot file line " + std::to_string(line_no) +
                               ": trailing token '" + extra + "'");
    }
    knots.emplace_back(age, value);
  }
  return ProductivityCurve(std::move(knots));
}

double ProductivityCurve::at(double age) const {
  const auto& first = knots_.front();
  const auto& last = knots_.back();
  double v;
  if (age <= first.first) {
    v = first.second;
  } else if (age >= last.first) {
    v = last.second;
  } else {
    // Last interval whose start is <= age.
    auto it = std::upper_bound(
        knots_.begin(), knots_.end(), age,
        [](double a, const std::pair<double, double>& k) { return a < k.first; });
    const std::size_t i = static_cast<std::size_t>(it - knots_.begin()) - 1;
    const double dx = age - knots_[i].first;
    v = c0_[i] + dx * (c1_[i] + dx * (c2_[i] + dx * c3_[i]));
  }
  return std::clamp(v, 0.0, 1.0);
}

}  // namespace pensionsim
