#include "pensionsim/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace pensionsim {

namespace {

std::vector<double> sorted_checked(std::span<const double> wealths) {
  std::vector<double> w(wealths.begin(), wealths.end());
  for (double v : w) {
    if (v < 0.0) throw std::invalid_argument("wealth values must be non-negative");
  }
  std::stable_sort(w.begin(), w.end());
  return w;
}

}  // namespace

double gini(std::span<const double> wealths) {
  const std::vector<double> w = sorted_checked(wealths);
  const std::size_t n = w.size();
  if (n == 0) return 0.0;

  double total = 0.0;
  double weighted = 0.0;  // sum of rank * wealth, ranks 1..n ascending
  for (std::size_t i = 0; i < n; ++i) {
    total += w[i];
    weighted += static_cast<double>(i + 1) * w[i];
  }
  if (total == 0.0) return 0.0;

  const double dn = static_cast<double>(n);
  return 2.0 * weighted / (dn * total) - (dn + 1.0) / dn;
}

LorenzCurve lorenz(std::span<const double> wealths) {
  const std::vector<double> w = sorted_checked(wealths);
  const std::size_t n = w.size();

  LorenzCurve curve;
  curve.points.reserve(n + 1);
  curve.points.emplace_back(0.0, 0.0);
  if (n == 0) {
    curve.points.emplace_back(1.0, 1.0);
    return curve;
  }

  double total = 0.0;
  for (double v : w) total += v;

  double cum = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    cum += w[k - 1];
    const double pop_frac = static_cast<double>(k) / static_cast<double>(n);
    const double wealth_frac = total == 0.0 ? pop_frac : cum / total;
    curve.points.emplace_back(pop_frac, wealth_frac);
  }
  return curve;
}

std::array<double, 10> deciles(std::span<const double> wealths) {
  const std::vector<double> w = sorted_checked(wealths);
  const std::size_t n = w.size();
  if (n == 0) throw std::invalid_argument("deciles: population must be >= 1");

  double total = 0.0;
  for (double v : w) total += v;

  std::array<double, 10> shares{};
  std::size_t start = 0;
  for (int d = 1; d <= 10; ++d) {
    const std::size_t end = n * static_cast<std::size_t>(d) / 10;
    if (total == 0.0) {
      shares[static_cast<std::size_t>(d - 1)] =
          static_cast<double>(end - start) / static_cast<double>(n);
    } else {
      double sum = 0.0;
      for (std::size_t i = start; i < end; ++i) sum += w[i];
      shares[static_cast<std::size_t>(d - 1)] = sum / total;
    }
    start = end;
  }
  return shares;
}

}  // namespace pensionsim
