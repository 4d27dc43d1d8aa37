#include "pensionsim/pension.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pensionsim {

namespace {

constexpr double kUnits = static_cast<double>(PensionFund::kUnitsPerSugar);

std::int64_t to_units_round(double sugar) {
  return std::llround(sugar * kUnits);
}

// Round down so an amount capped by wealth never exceeds the wealth itself.
std::int64_t to_units_floor(double sugar) {
  return static_cast<std::int64_t>(std::floor(sugar * kUnits));
}

}  // namespace

void PolicyParams::validate() const {
  if (retirement_age < 1) {
    throw std::invalid_argument("PolicyParams: retirement_age must be >= 1");
  }
  if (pension_tax_pct < 0 || pension_tax_pct > 100) {
    throw std::invalid_argument("PolicyParams: pension_tax_pct must be in 0..100, got " +
                                std::to_string(pension_tax_pct));
  }
  if (fixed_fee < 0.0) {
    throw std::invalid_argument("PolicyParams: fixed_fee must be >= 0");
  }
}

double PensionFund::collect_contribution(double income, double wealth_after_income,
                                         const PolicyParams& policy) {
  const double tax_share = income * policy.pension_tax_pct / 100.0;
  const double fee = policy.fixed_fee_mode == FeeMode::Flat
                         ? policy.fixed_fee
                         : income * policy.fixed_fee;
  const double due = tax_share + fee;

  const std::int64_t due_u = std::max<std::int64_t>(0, to_units_round(due));
  const std::int64_t cap_u =
      std::max<std::int64_t>(0, to_units_floor(wealth_after_income));
  const std::int64_t paid_u = std::min(due_u, cap_u);

  balance_u_ += paid_u;
  contributions_u_ += paid_u;
  return from_units(paid_u);
}

PensionFund::PensionPayout PensionFund::pay_pension(double metabolism) {
  const std::int64_t need_u = std::max<std::int64_t>(0, to_units_round(metabolism));
  const std::int64_t from_fund_u = std::min(balance_u_, need_u);
  balance_u_ -= from_fund_u;
  pensions_u_ += from_fund_u;

  PensionPayout out;
  out.from_fund = from_units(from_fund_u);
  out.from_savings = metabolism - out.from_fund;
  return out;
}

double PensionFund::welfare_top_up(double wealth_after_metabolism, double metabolism) {
  // Target one metabolism worth of runway above zero: topping up to exactly
  // zero would still starve the agent at the next check.
  const double need = metabolism - wealth_after_metabolism;
  const std::int64_t need_u = std::max<std::int64_t>(0, to_units_round(need));
  const std::int64_t granted_u = std::min(balance_u_, need_u);
  balance_u_ -= granted_u;
  welfare_u_ += granted_u;
  return from_units(granted_u);
}

}  // namespace pensionsim
