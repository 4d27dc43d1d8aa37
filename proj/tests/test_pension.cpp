#include "pensionsim/pension.hpp"

#include <cmath>

#include "doctest.h"
#include "pensionsim/rng.hpp"

using namespace pensionsim;

namespace {

PolicyParams policy(int tax_pct, double fee, FeeMode mode = FeeMode::Flat) {
  PolicyParams p;
  p.pension_tax_pct = tax_pct;
  p.fixed_fee = fee;
  p.fixed_fee_mode = mode;
  return p;
}

double identity_drift(const PensionFund& f) {
  return std::abs(f.balance() - (f.contributions_total() - f.pensions_paid_total() -
                                 f.welfare_paid_total()));
}

}  // namespace

TEST_CASE("contribution arithmetic") {
  PensionFund fund;
  CHECK(fund.collect_contribution(4.0, 10.0, policy(25, 0.5)) ==
        doctest::Approx(1.5).epsilon(1e-12));
  CHECK(fund.balance() == doctest::Approx(1.5));
}

TEST_CASE("no levy means no contribution") {
  PensionFund fund;
  CHECK(fund.collect_contribution(4.0, 10.0, policy(0, 0.0)) == 0.0);
  CHECK(fund.contributions_total() == 0.0);
  CHECK(fund.balance() == 0.0);
}

TEST_CASE("contributions are capped at available wealth") {
  PensionFund fund;
  const double paid = fund.collect_contribution(4.0, 1.2, policy(25, 1.0));  // due 2.0
  CHECK(paid == doctest::Approx(1.2).epsilon(1e-9));
  CHECK(paid <= 1.2);
  CHECK(fund.balance() == doctest::Approx(1.2).epsilon(1e-9));
}

TEST_CASE("proportional fee mode charges a fraction of income") {
  PensionFund fund;
  const double paid = fund.collect_contribution(4.0, 100.0, policy(0, 0.1, FeeMode::Proportional));
  CHECK(paid == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("pensions draw the pool first, then savings") {
  PensionFund fund;
  fund.collect_contribution(10.0, 100.0, policy(100, 0.0));  // balance 10

  auto payout = fund.pay_pension(3.0);
  CHECK(payout.from_fund == doctest::Approx(3.0));
  CHECK(payout.from_savings == doctest::Approx(0.0));
  CHECK(fund.balance() == doctest::Approx(7.0));

  PensionFund empty;
  payout = empty.pay_pension(3.0);
  CHECK(payout.from_fund == 0.0);
  CHECK(payout.from_savings == doctest::Approx(3.0));

  PensionFund thin;
  thin.collect_contribution(1.0, 100.0, policy(100, 0.0));  // balance 1
  payout = thin.pay_pension(3.0);
  CHECK(payout.from_fund == doctest::Approx(1.0));
  CHECK(payout.from_savings == doctest::Approx(2.0));
  CHECK(thin.balance() == 0.0);
}

TEST_CASE("welfare tops a broke worker up to one metabolism of runway") {
  PensionFund fund;
  fund.collect_contribution(100.0, 1000.0, policy(100, 0.0));  // plenty

  const double granted = fund.welfare_top_up(-1.0, 2.0);
  CHECK(granted == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(-1.0 + granted == doctest::Approx(2.0).epsilon(1e-9));

  PensionFund empty;
  CHECK(empty.welfare_top_up(-1.0, 2.0) == 0.0);
}

TEST_CASE("ledger identity survives arbitrary operation sequences") {
  Rng rng(1234);
  for (int trial = 0; trial < 20; ++trial) {
    PensionFund fund;
    const PolicyParams pol = policy(static_cast<int>(rng.uniform_int(0, 100)),
                                    static_cast<double>(rng.uniform_int(0, 300)) / 100.0);
    for (int op = 0; op < 2000; ++op) {
      const long long which = rng.uniform_int(0, 2);
      const double amount = static_cast<double>(rng.uniform_int(0, 700)) / 99.0;
      if (which == 0) {
        fund.collect_contribution(amount, amount * 1.5, pol);
      } else if (which == 1) {
        fund.pay_pension(static_cast<double>(rng.uniform_int(1, 4)));
      } else {
        fund.welfare_top_up(-amount, static_cast<double>(rng.uniform_int(1, 4)));
      }
      CHECK(fund.ledger_consistent());
      CHECK(fund.balance() >= 0.0);
      CHECK(identity_drift(fund) < 1e-9);
    }
  }
}

TEST_CASE("fund can only shrink while nobody contributes") {
  PensionFund fund;
  fund.collect_contribution(50.0, 500.0, policy(100, 0.0));
  Rng rng(9);
  double previous = fund.balance();
  for (int op = 0; op < 200; ++op) {
    if (rng.uniform_int(0, 1) == 0) {
      fund.pay_pension(static_cast<double>(rng.uniform_int(1, 4)));
    } else {
      fund.welfare_top_up(-1.0, static_cast<double>(rng.uniform_int(1, 4)));
    }
    CHECK(fund.balance() <= previous);
    previous = fund.balance();
  }
}

TEST_CASE("policy validation") {
  PolicyParams p;
  p.pension_tax_pct = 101;
  CHECK_THROWS(p.validate());
  p.pension_tax_pct = -1;
  CHECK_THROWS(p.validate());
  p.pension_tax_pct = 0;
  p.fixed_fee = -0.5;
  CHECK_THROWS(p.validate());
  p.fixed_fee = 0;
  p.retirement_age = 0;
  CHECK_THROWS(p.validate());
  p.retirement_age = 60;
  CHECK_NOTHROW(p.validate());
}
