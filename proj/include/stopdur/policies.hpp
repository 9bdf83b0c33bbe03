#pragma once

// Optimal stopping rules for each setting, plus objective functions that can
// be evaluated at arbitrary thresholds.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "setting.hpp"
#include "specfun.hpp"

namespace stopdur {

class UnsupportedVariant : public std::invalid_argument {
public:
  UnsupportedVariant(Variant v, const std::string& op)
      : std::invalid_argument(op + ": unsupported setting '" + std::string(variant_tag(v)) + "'") {}
};

namespace constants {

/// Root of sum_j c^j / (j! j) = 1.
inline double gm_constant() {
  static const double c = specfun::solve_root(
      [](double x) {
        double sum = 0.0, term = 1.0;
        for (int j = 1; j < 200; ++j) {
          term *= x / j;
          const double add = term / j;
          sum += add;
          if (add < 1e-17)
            break;
        }
        return sum - 1.0;
      },
      {0.5, 1.0}, 1e-15);
  return c;
}

// Decision constant of the full-information duration problem, as tabulated.
inline constexpr double fi_duration = 2.1198;

/// Root of e^c = 1 + 2c.
inline double fi_best_choice_duration() {
  static const double c =
      specfun::solve_root([](double x) { return std::expm1(x) - 2.0 * x; }, {1.0, 2.0}, 1e-15);
  return c;
}

// Limit of the Gusein-Zade first stage as S grows.
inline constexpr double gusein_zade_limit = 0.2834;

}  // namespace constants

// Single thresholds --------------------------------------------------------

/// Skip the first floor(fraction * N) applicants.
inline SingleThreshold scaled_threshold(std::int64_t n, double fraction) {
  if (n < 1)
    throw std::invalid_argument("scaled_threshold: N must be >= 1");
  if (!(fraction >= 0.0 && fraction <= 1.0))
    throw std::invalid_argument("scaled_threshold: fraction must lie in [0, 1]");
  const auto skip = std::min<std::int64_t>(static_cast<std::int64_t>(std::floor(fraction * n)), n - 1);
  return {std::max<std::int64_t>(skip, 1), skip + 1};
}

inline SingleThreshold single_threshold(const SettingSpec& setting) {
  const std::int64_t n = setting.pool_size();
  switch (setting.variant) {
    case Variant::Secretary: {
      // Lower c while sum_{k=c+1}^{N} 1/(k-1) stays <= 1.
      std::int64_t c = n;
      double tail = 0.0;
      while (c > 1 && tail + 1.0 / static_cast<double>(c - 1) <= 1.0) {
        tail += 1.0 / static_cast<double>(c - 1);
        --c;
      }
      return {c, c};
    }
    case Variant::Bearden: {
      const auto c = std::clamp<std::int64_t>(std::llround(std::sqrt(static_cast<double>(n))), 1, n);
      return {c, c};
    }
    case Variant::Postdoc: {
      if (n == 1)
        return {1, 1};
      const std::int64_t c = n / 2;
      return {c, c + 1};
    }
    default:
      throw UnsupportedVariant(setting.variant, "single_threshold");
  }
}

// Value cutoffs -------------------------------------------------------------

/// A_0..A_{m_max} from A_{m+1} = (A_m^2 + 1) / 2.
inline std::vector<double> moser_values(std::int64_t m_max) {
  std::vector<double> a(static_cast<std::size_t>(m_max + 1), 0.0);
  for (std::int64_t m = 0; m < m_max; ++m)
    a[m + 1] = 0.5 * (a[m] * a[m] + 1.0);
  return a;
}

/// Closed-form approximation of A_m for large m.
inline double moser_approx(double m) { return 1.0 - 2.0 / (m + std::log(m) + 1.76799); }

inline ValueCutoffs moser_cutoffs(std::int64_t n) {
  if (n < 1)
    throw std::invalid_argument("moser_cutoffs: N must be >= 1");
  const auto a = moser_values(n - 1);
  ValueCutoffs out{std::vector<double>(a.rbegin(), a.rend()), false};
  return out;
}

/// B_0..B_{m_max} from B_m = (m + B_{m-1}^2 / m) / 2.
inline std::vector<double> decaying_values(std::int64_t m_max) {
  std::vector<double> b(static_cast<std::size_t>(m_max + 1), 0.0);
  for (std::int64_t m = 1; m <= m_max; ++m) {
    const double md = static_cast<double>(m);
    b[m] = 0.5 * (md + b[m - 1] * b[m - 1] / md);
  }
  return b;
}

/// Rejection probability at each position when the pool decays: B_m/(m+1),
/// m = N - i.
inline ValueCutoffs decaying_cutoffs(std::int64_t n) {
  if (n < 1)
    throw std::invalid_argument("decaying_cutoffs: N must be >= 1");
  const auto b = decaying_values(n - 1);
  ValueCutoffs out;
  out.cutoffs.resize(static_cast<std::size_t>(n));
  for (std::int64_t i = 1; i <= n; ++i) {
    const std::int64_t m = n - i;
    out.cutoffs[i - 1] = b[m] / static_cast<double>(m + 1);
  }
  return out;
}

namespace detail {

// y_m = -ln A_m solves f(y) = sum_{j<=m} expm1(j y)/j - 1 = 0. f is convex
// and increasing and y_m decreases in m, so Newton started at y_{m-1}
// approaches y_m monotonically from above.
inline double gm_solve_log(std::int64_t m, double y) {
  for (int it = 0; it < 100; ++it) {
    const double e1 = std::expm1(y);
    double ej = e1, f = -1.0, df = 0.0;
    for (std::int64_t j = 1; j <= m; ++j) {
      f += ej / static_cast<double>(j);
      df += ej + 1.0;
      ej = ej + e1 + ej * e1;
    }
    const double step = f / df;
    // From above the steps are positive; a nonpositive one means rounding.
    if (step <= 1e-15 * y)
      return step > 0.0 ? y - step : y;
    y -= step;
  }
  throw NumericError("gm_cutoffs: Newton iteration did not converge at m = " + std::to_string(m));
}

class GmValueCache {
public:
  std::vector<double> prefix(std::int64_t m_max) {
    std::lock_guard lock(mu_);
    if (values_.empty()) {
      values_.push_back(0.0);  // A_0
      logs_.push_back(0.0);
    }
    while (static_cast<std::int64_t>(values_.size()) <= m_max) {
      const auto m = static_cast<std::int64_t>(values_.size());
      const double start = m == 1 ? std::numbers::ln2 : logs_.back();
      const double y = gm_solve_log(m, start);
      logs_.push_back(y);
      values_.push_back(std::exp(-y));
    }
    return {values_.begin(), values_.begin() + m_max + 1};
  }

private:
  std::mutex mu_;
  std::vector<double> values_;
  std::vector<double> logs_;
};

inline GmValueCache& gm_cache() {
  static GmValueCache cache;
  return cache;
}

}  // namespace detail

inline constexpr std::int64_t default_m_exact = 10000;

/// Exact best-choice decision values A_0..A_{m_max}.
inline std::vector<double> gm_exact_values(std::int64_t m_max) {
  if (m_max < 0)
    throw std::invalid_argument("gm_exact_values: negative m");
  return detail::gm_cache().prefix(m_max);
}

/// Residual of the defining equation of A_m, for checks.
inline double gm_residual(std::int64_t m, double a) {
  double sum = -1.0;
  for (std::int64_t j = 1; j <= m; ++j)
    sum += (std::pow(a, -static_cast<double>(j)) - 1.0) / static_cast<double>(j);
  return sum;
}

/// Relatively-best acceptance cutoffs. Positions with m = N - i <= m_exact
/// use exact decision values (only meaningful for the best-choice constant);
/// the rest use A_m = m / (m + c).
inline ValueCutoffs gm_cutoffs(std::int64_t n, double c_const, std::int64_t m_exact = 0) {
  if (n < 1)
    throw std::invalid_argument("gm_cutoffs: N must be >= 1");
  if (!(c_const > 0.0))
    throw std::invalid_argument("gm_cutoffs: constant must be positive");
  const std::int64_t exact_top = std::min(std::max<std::int64_t>(m_exact, 0), n - 1);
  const auto exact = m_exact > 0 ? gm_exact_values(exact_top) : std::vector<double>{0.0};
  ValueCutoffs out{std::vector<double>(static_cast<std::size_t>(n)), true};
  for (std::int64_t i = 1; i <= n; ++i) {
    const std::int64_t m = n - i;
    const auto md = static_cast<double>(m);
    out.cutoffs[i - 1] = m <= exact_top && m_exact > 0 ? exact[m] : md / (md + c_const);
  }
  return out;
}

inline ValueCutoffs gm_best_choice_cutoffs(std::int64_t n, std::int64_t m_exact = default_m_exact) {
  return gm_cutoffs(n, constants::gm_constant(), m_exact);
}

// Stage thresholds ----------------------------------------------------------

namespace detail {

inline double lindley_log_factor(double j) { return std::log1p(2.0 / j) / (j + 1.0); }

// Euler-Maclaurin estimate of sum_{j > J} j^-k.
inline double power_tail(double J, int k) {
  return std::pow(J, 1.0 - k) / (k - 1) - 0.5 * std::pow(J, -k) + k * std::pow(J, -k - 1.0) / 12.0;
}

}  // namespace detail

/// V_inf = prod_{j>=1} (1 + 2/j)^(1/(j+1)).
inline double lindley_v_infinity() {
  static const double v = [] {
    specfun::CompensatedSum log_sum;
    double j = 1.0;
    for (;; j += 1.0) {
      const double term = detail::lindley_log_factor(j);
      log_sum.add(term);
      if (term < 1e-12)
        break;
    }
    // log factor = 2/j^2 - 4/j^3 + 20/(3 j^4) + O(j^-5)
    log_sum.add(2.0 * detail::power_tail(j, 2) - 4.0 * detail::power_tail(j, 3) +
                20.0 / 3.0 * detail::power_tail(j, 4));
    return std::exp(log_sum.value());
  }();
  return v;
}

/// Lindley stage fractions c(1..max_stages). Stops early once rounding
/// would make the sequence stall below 1.
inline StageThresholds lindley_stages(std::int64_t max_stages) {
  if (max_stages < 1)
    throw std::invalid_argument("lindley_stages: need at least one stage");
  StageThresholds st;
  double log_c = -std::log(lindley_v_infinity());
  for (std::int64_t x = 1; x <= max_stages; ++x) {
    const double c = std::exp(log_c);
    if (!st.fractions.empty() && !(c > st.fractions.back()))
      break;
    st.fractions.push_back(c);
    log_c += detail::lindley_log_factor(static_cast<double>(x));
  }
  return st;
}

/// Built-in Gusein-Zade stage fractions for the tabulated S.
inline const std::map<int, std::vector<double>>& gusein_zade_table() {
  static const std::map<int, std::vector<double>> table = {
      {1, {1.0 / std::numbers::e}},
      {2, {0.347, 0.6667}},
      {3, {0.3367, 0.5868, 0.7746}},
      {5, {0.3255, 0.5116, 0.6477, 0.7607, 0.8633}},
      {10, {0.3129, 0.4367, 0.5289, 0.6051, 0.6712, 0.7304, 0.7844, 0.8349, 0.883, 0.9312}},
      {15,
       {0.3068, 0.4034, 0.4765, 0.5376, 0.5909, 0.6386, 0.6821, 0.7223, 0.7598, 0.7951, 0.8287, 0.8608,
        0.8919, 0.9226, 0.954}},
      {25,
       {0.3008, 0.3702, 0.4242, 0.4699, 0.5102, 0.5466, 0.5799, 0.6108, 0.6397, 0.6669, 0.6927, 0.7172,
        0.7407, 0.7631, 0.7847, 0.8055, 0.8256, 0.8451, 0.864, 0.8825, 0.9006, 0.9184, 0.936, 0.9538,
        0.9724}},
  };
  return table;
}

/// Caller-supplied stages, validated.
inline StageThresholds stage_thresholds(std::vector<double> fractions) {
  StageThresholds st{std::move(fractions)};
  validate(st);
  return st;
}

inline StageThresholds stage_thresholds(const SettingSpec& setting, std::int64_t max_stages = 50) {
  switch (setting.variant) {
    case Variant::Lindley:
      return lindley_stages(max_stages);
    case Variant::GuseinZade: {
      if (!setting.s)
        throw std::invalid_argument("gusein-zade: S is required for stage thresholds");
      const auto& table = gusein_zade_table();
      const auto it = table.find(*setting.s);
      if (it == table.end())
        throw std::invalid_argument("gusein-zade: no built-in stages for S = " + std::to_string(*setting.s) +
                                    "; supply a custom fraction vector");
      return stage_thresholds(it->second);
    }
    default:
      throw UnsupportedVariant(setting.variant, "stage_thresholds");
  }
}

// Reservation value ---------------------------------------------------------

inline ReservationValue reservation_value(double cost) {
  if (!(cost > 0.0))
    throw std::invalid_argument("reservation_value: cost must be positive");
  if (cost > 0.5)
    return {0.0, true};
  return {std::max(0.0, 1.0 - std::sqrt(2.0 * cost)), false};
}

// Asymptotic thresholds -----------------------------------------------------

/// Root of ln c = b (c - 1) inside (0, 1) for b = 1 + 1/(2C).
inline double szajowski_threshold(double cost_coefficient) {
  if (!(cost_coefficient > 0.0))
    throw std::invalid_argument("szajowski: cost coefficient must be positive");
  const double b = 1.0 + 1.0 / (2.0 * cost_coefficient);
  auto g = [b](double c) { return std::log(c) - b * (c - 1.0); };
  // g peaks at 1/b > 0; walk left until it turns negative.
  const double hi = 1.0 / b;
  double lo = 0.5 * hi;
  while (g(lo) >= 0.0) {
    lo *= 0.5;
    if (lo < 1e-300)
      throw NumericError("szajowski: root not bracketed");
  }
  return specfun::solve_root(g, {lo, hi}, 1e-15);
}

/// -W(-2/e^2)/2, the threshold of both the best-choice duration problem and
/// the interview-cost problem.
inline double best_choice_duration_threshold() {
  return -0.5 * specfun::lambert_w(-2.0 / (std::numbers::e * std::numbers::e), specfun::LambertBranch::principal);
}

inline double asymptotic_threshold(const SettingSpec& setting) {
  using std::numbers::e;
  switch (setting.variant) {
    case Variant::Secretary:
      return 1.0 / e;
    case Variant::Postdoc:
      return 0.5;
    case Variant::Sakaguchi:
      return 1.0 / std::sqrt(e);
    case Variant::PresmanSonin:
    case Variant::NoInfoDuration:
      return 1.0 / (e * e);
    case Variant::Smith: {
      const double p = setting.p.value();
      return p == 1.0 ? 1.0 / e : std::pow(p, 1.0 / (1.0 - p));
    }
    case Variant::NoInfoBestChoiceDuration:
    case Variant::InterviewCost:
      return best_choice_duration_threshold();
    case Variant::SzajowskiCost:
      return szajowski_threshold(setting.cost.value());
    default:
      throw UnsupportedVariant(setting.variant, "asymptotic_threshold");
  }
}

// Objective functions -------------------------------------------------------

/// Objective of the threshold rule "skip c - 1, then take the next
/// relatively best" (Postdoc: skip c, then take the next relatively second best).
inline double objective_value(const SettingSpec& setting, std::int64_t c) {
  const std::int64_t n = setting.pool_size();
  if (c < 1 || c > n)
    throw std::invalid_argument("objective_value: threshold must satisfy 1 <= c <= N");
  const auto nd = static_cast<double>(n);
  const auto cd = static_cast<double>(c);
  switch (setting.variant) {
    case Variant::Secretary: {
      if (c == 1)
        return 1.0 / nd;
      specfun::CompensatedSum sum;
      for (std::int64_t k = c; k <= n; ++k)
        sum.add(1.0 / static_cast<double>(k - 1));
      return (cd - 1.0) / nd * sum.value();
    }
    case Variant::Bearden:
      return (2.0 * nd * cd - cd * cd + cd - nd) / (2.0 * nd * cd);
    case Variant::Postdoc:
      if (n == 1)
        return 0.0;
      return cd * (nd - cd) / (nd * (nd - 1.0));
    case Variant::InterviewCost: {
      if (c == 1)
        return (1.0 - 1.0 / nd) / nd;
      const double bracket = (nd - 1.0) * (specfun::digamma(nd) - specfun::digamma(cd - 1.0)) - (nd - cd + 1.0);
      return (cd - 1.0) / nd * bracket / nd;
    }
    default:
      throw UnsupportedVariant(setting.variant, "objective_value");
  }
}

// Default finite-N policy ---------------------------------------------------

/// The policy used for a finite-N setting: exact where known, the
/// asymptotic rule scaled to N otherwise.
inline Policy default_policy(const SettingSpec& setting) {
  switch (setting.variant) {
    case Variant::Secretary:
    case Variant::Bearden:
    case Variant::Postdoc:
      return single_threshold(setting);
    case Variant::Sakaguchi:
    case Variant::Smith:
    case Variant::NoInfoDuration:
    case Variant::NoInfoBestChoiceDuration:
    case Variant::InterviewCost:
    case Variant::SzajowskiCost:
      return scaled_threshold(setting.pool_size(), asymptotic_threshold(setting));
    case Variant::PresmanSonin:
      return scaled_threshold(setting.b.value(), asymptotic_threshold(setting));
    case Variant::Moser:
      return moser_cutoffs(setting.pool_size());
    case Variant::MoserDecaying:
      return decaying_cutoffs(setting.pool_size());
    case Variant::GMBestChoice:
      return gm_best_choice_cutoffs(setting.pool_size());
    case Variant::FIDuration:
      return gm_cutoffs(setting.pool_size(), constants::fi_duration);
    case Variant::FIBestChoiceDuration:
      return gm_cutoffs(setting.pool_size(), constants::fi_best_choice_duration());
    case Variant::Lindley:
      return lindley_stages(std::max<std::int64_t>(setting.pool_size(), 1));
    case Variant::GuseinZade:
      return stage_thresholds(setting);
    case Variant::HouseSelling:
      return reservation_value(setting.cost.value());
  }
  throw UnsupportedVariant(setting.variant, "default_policy");
}

}  // namespace stopdur
