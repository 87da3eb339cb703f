#pragma once

// Synthetic transaction generator with a planted calendar of day-types and
// planted day-type-dependent fraud structure. The parameterization below is
// frozen; downstream tests depend on its stability.
//
// Feature model, per day-type t and separation delta:
//   amount           log-normal; log(amount) ~ N(3.1 + delta*kAmountShift[t], 0.65)
//   hour_of_day      two-component normal mixture, morning N(10.4, 2.1) and
//                    evening N(17.6, 2.6); evening weight
//                    clamp(0.46 + delta*kEveningTilt[t], 0.05, 0.95); clamped to [0, 24)
//   merchant_category softmax(kCategoryLogits[c] + delta*kCategoryTilt[t][c]), 12 levels
//   payment_type     Bernoulli(0.37), day-type independent
//   customer_age     N(41.5, 13.5) clamped to [18, 95], day-type independent
//
// Fraud labels: P(fraud | row) = base_rate * multiplier[t] * lift(row), where
// lift = exp(0.9*u - 0.405) * risk[c] / E_t[risk], u the z-score of log(amount)
// within its day-type. Both lift factors have mean exactly 1 under the day's
// feature distribution, so the per-day-type fraud rate concentrates at
// base_rate * multiplier[t] while staying learnable from amount and category.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "dayshift/calendar.hpp"
#include "dayshift/errors.hpp"
#include "dayshift/rng.hpp"
#include "dayshift/schema.hpp"
#include "dayshift/table.hpp"

namespace dayshift {

struct GenParams {
  double separation = 1.0;  // delta; 0 = all day-types identically distributed
  int tx_per_day = 3000;
  double fraud_base_rate = 0.012;
  std::array<double, kNumDayTypes> fraud_rate_multiplier = {1.0, 2.0, 4.0, 2.0};
  std::uint64_t seed = 42;

  void validate() const {
    if (separation < 0.0) throw DataError("separation must be non-negative");
    if (tx_per_day < 1) throw DataError("tx_per_day must be positive");
    if (fraud_base_rate <= 0.0 || fraud_base_rate >= 1.0) {
      throw DataError("fraud_base_rate must lie in (0, 1)");
    }
    double max_mult = 0.0;
    for (double m : fraud_rate_multiplier) {
      if (m <= 0.0) throw DataError("fraud rate multipliers must be positive");
      max_mult = std::max(max_mult, m);
    }
    if (fraud_base_rate * max_mult >= 0.5) {
      throw DataError("fraud_base_rate x max multiplier must stay below 0.5");
    }
  }
};

namespace synth_detail {

inline constexpr int kNumCategories = 12;

inline constexpr double kLogAmountMean = 3.1;
inline constexpr double kLogAmountSd = 0.65;
inline constexpr std::array<double, kNumDayTypes> kAmountShift = {0.0, 0.22, -0.45, 0.11};

inline constexpr double kMorningHour = 10.4, kMorningSd = 2.1;
inline constexpr double kEveningHour = 17.6, kEveningSd = 2.6;
inline constexpr double kEveningWeightBase = 0.46;
inline constexpr std::array<double, kNumDayTypes> kEveningTilt = {0.0, 0.14, -0.22, 0.07};

inline constexpr std::array<double, kNumCategories> kCategoryLogits = {
    1.6, 1.2, 1.0, 0.8, 0.8, 0.6, 0.4, 0.2, 0.0, -0.2, -0.5, -0.8};

inline constexpr std::array<std::array<double, kNumCategories>, kNumDayTypes> kCategoryTilt = {{
    {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0},
    {-0.30, 0.10, -0.10, 0.50, 0.05, 0.40, 0.00, 0.25, 0.10, -0.05, 0.20, 0.15},
    {-0.90, -0.55, -0.35, 0.20, -0.10, 0.10, 0.30, 0.90, 0.55, 0.25, -0.20, 0.45},
    {-0.15, 0.05, -0.20, 0.15, 0.45, 0.10, 0.30, 0.10, 0.05, 0.20, -0.05, 0.10},
}};

inline constexpr double kPaymentRate = 0.37;
inline constexpr double kAgeMean = 41.5, kAgeSd = 13.5, kAgeLo = 18.0, kAgeHi = 95.0;

inline constexpr double kFraudAmountSlope = 0.9;
inline constexpr std::array<double, kNumCategories> kCategoryRisk = {
    0.6, 0.8, 1.0, 1.0, 1.2, 0.9, 1.0, 2.2, 1.6, 1.0, 0.7, 2.8};

inline std::array<double, kNumCategories> category_probs(DayType t, double delta) {
  std::array<double, kNumCategories> probs{};
  double max_logit = -1e300;
  for (int c = 0; c < kNumCategories; ++c) {
    probs[static_cast<std::size_t>(c)] =
        kCategoryLogits[static_cast<std::size_t>(c)] +
        delta * kCategoryTilt[static_cast<std::size_t>(static_cast<int>(t))][static_cast<std::size_t>(c)];
    max_logit = std::max(max_logit, probs[static_cast<std::size_t>(c)]);
  }
  double sum = 0.0;
  for (double& p : probs) {
    p = std::exp(p - max_logit);
    sum += p;
  }
  for (double& p : probs) p /= sum;
  return probs;
}

}  // namespace synth_detail

inline FeatureSchema synthetic_schema() {
  return FeatureSchema({
      {"amount", FeatureKind::kContinuous, 0},
      {"hour_of_day", FeatureKind::kContinuous, 0},
      {"merchant_category", FeatureKind::kCategorical, synth_detail::kNumCategories},
      {"payment_type", FeatureKind::kBinary, 0},
      {"customer_age", FeatureKind::kContinuous, 0},
  });
}

// Deterministic for fixed (cal, params); each day draws from its own derived
// stream so day contents do not depend on other days' sample counts.
inline TransactionTable generate(const CalendarModel& cal, const GenParams& params) {
  using namespace synth_detail;
  cal.validate();
  params.validate();
  const double delta = params.separation;

  std::array<std::array<double, kNumCategories>, kNumDayTypes> cat_probs{};
  std::array<double, kNumDayTypes> mean_risk{};
  for (int t = 0; t < kNumDayTypes; ++t) {
    cat_probs[static_cast<std::size_t>(t)] = category_probs(static_cast<DayType>(t), delta);
    double m = 0.0;
    for (int c = 0; c < kNumCategories; ++c) {
      m += cat_probs[static_cast<std::size_t>(t)][static_cast<std::size_t>(c)] *
           kCategoryRisk[static_cast<std::size_t>(c)];
    }
    mean_risk[static_cast<std::size_t>(t)] = m;
  }

  FeatureSchema schema = synthetic_schema();
  std::vector<Date> day_dates;
  std::vector<int> day_index;
  std::vector<double> values;
  std::vector<std::uint8_t> labels;
  day_dates.reserve(static_cast<std::size_t>(cal.n_days));

  for (int d = 0; d < cal.n_days; ++d) {
    const Date date = cal.start + d;
    day_dates.push_back(date);
    const DayType t = assign_day_type(cal, date);
    const auto ti = static_cast<std::size_t>(static_cast<int>(t));
    Rng rng(derive_seed(params.seed, seed_domain::kSynthDay, static_cast<std::uint64_t>(d)));

    long long count = 0;
    do {
      count = std::llround(params.tx_per_day + std::sqrt(static_cast<double>(params.tx_per_day)) * rng.normal());
    } while (count < 1);  // the table forbids empty days

    const double mu = kLogAmountMean + delta * kAmountShift[ti];
    const double evening_w =
        std::clamp(kEveningWeightBase + delta * kEveningTilt[ti], 0.05, 0.95);

    for (long long i = 0; i < count; ++i) {
      const double amount_z = rng.normal();
      const double amount = std::exp(mu + kLogAmountSd * amount_z);

      double hour = rng.uniform01() < evening_w ? kEveningHour + kEveningSd * rng.normal()
                                                : kMorningHour + kMorningSd * rng.normal();
      hour = std::clamp(hour, 0.0, 23.999);

      const int category = rng.categorical(cat_probs[ti]);
      const double payment = rng.bernoulli(kPaymentRate) ? 1.0 : 0.0;
      const double age = std::clamp(kAgeMean + kAgeSd * rng.normal(), kAgeLo, kAgeHi);

      const double lift = std::exp(kFraudAmountSlope * amount_z - 0.5 * kFraudAmountSlope * kFraudAmountSlope) *
                          kCategoryRisk[static_cast<std::size_t>(category)] / mean_risk[ti];
      const double p_fraud =
          std::min(0.9, params.fraud_base_rate * params.fraud_rate_multiplier[ti] * lift);
      const bool fraud = rng.bernoulli(p_fraud);

      day_index.push_back(d);
      values.insert(values.end(), {amount, hour, static_cast<double>(category), payment, age});
      labels.push_back(fraud ? 1 : 0);
    }
  }

  return TransactionTable(std::move(schema), std::move(day_dates), std::move(day_index),
                          std::move(values), std::move(labels));
}

}  // namespace dayshift
