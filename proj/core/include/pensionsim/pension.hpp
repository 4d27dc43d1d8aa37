#pragma once

#include <cstdint>

namespace pensionsim {

enum class FeeMode {
  Flat,          // fixed_fee is a per-step amount of sugar
  Proportional,  // fixed_fee is a fraction of per-step income
};

struct PolicyParams {
  int retirement_age = 60;
  int pension_tax_pct = 0;   // integer percent of per-step income
  double fixed_fee = 0.0;    // interpreted per fixed_fee_mode
  FeeMode fixed_fee_mode = FeeMode::Flat;
  bool social_services = false;
  bool productivity_decay = false;

  /// Throws std::invalid_argument on out-of-range values.
  void validate() const;

  bool operator==(const PolicyParams&) const = default;
};

/// The common pool: contributions in, pensions and welfare out.
///
/// Amounts are kept internally in integer micro-sugar (1e-6 units), so the
/// ledger identity balance == contributions - pensions - welfare is exact and
/// the balance can never go negative. Everything crossing the boundary is
/// quantized once; callers apply the returned (quantized) amounts to agent
/// wealth.
class PensionFund {
 public:
  static constexpr std::int64_t kUnitsPerSugar = 1'000'000;

  double balance() const { return from_units(balance_u_); }
  double contributions_total() const { return from_units(contributions_u_); }
  double pensions_paid_total() const { return from_units(pensions_u_); }
  double welfare_paid_total() const { return from_units(welfare_u_); }

  /// Worker-side levy on one step's income. Due amount is
  ///   income * tax_pct/100 + fixed_fee                  (flat mode), or
  ///   income * (tax_pct/100 + fixed_fee)                (proportional mode),
  /// capped at the worker's wealth after income (no debt; the shortfall is
  /// forgiven). Returns what was actually paid; the caller deducts it.
  double collect_contribution(double income, double wealth_after_income,
                              const PolicyParams& policy);

  struct PensionPayout {
    double from_fund = 0.0;
    double from_savings = 0.0;
  };

  /// Covers a retiree's per-step consumption from the pool while it lasts;
  /// the remainder comes out of the retiree's savings.
  PensionPayout pay_pension(double metabolism);

  /// Emergency draw for a broke worker: tops wealth up to one metabolism
  /// worth of runway above zero, limited by the pool. Returns the grant;
  /// the caller adds it to wealth.
  double welfare_top_up(double wealth_after_metabolism, double metabolism);

  /// Exact in integer units by construction; exposed for assertions.
  bool ledger_consistent() const {
    return balance_u_ == contributions_u_ - pensions_u_ - welfare_u_ &&
           balance_u_ >= 0;
  }

  bool operator==(const PensionFund&) const = default;

 private:
  static double from_units(std::int64_t u) {
    return static_cast<double>(u) / static_cast<double>(kUnitsPerSugar);
  }

  std::int64_t balance_u_ = 0;
  std::int64_t contributions_u_ = 0;
  std::int64_t pensions_u_ = 0;
  std::int64_t welfare_u_ = 0;
};

}  // namespace pensionsim
