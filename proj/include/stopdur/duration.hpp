#pragma once

// Distributions of the search duration T: exact finite-N laws, summary
// statistics and asymptotic constants.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "policies.hpp"
#include "setting.hpp"
#include "specfun.hpp"

namespace stopdur {

/// Raised when an exact computation is refused because N is too large.
class CapExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// PMF of T over 1..N. pmf[x-1] = Pr(T = x). When set, no_choice_mass is
/// the part of pmf[N-1] due to reaching the end without a selection.
struct DurationDistribution {
  std::int64_t n = 0;
  std::vector<double> pmf;
  std::optional<double> no_choice_mass;

  [[nodiscard]] double total() const {
    specfun::CompensatedSum s;
    for (double p : pmf)
      s.add(p);
    return s.value();
  }

  [[nodiscard]] std::vector<double> cdf() const {
    std::vector<double> out(pmf.size());
    specfun::CompensatedSum s;
    for (std::size_t i = 0; i < pmf.size(); ++i) {
      s.add(pmf[i]);
      out[i] = s.value();
    }
    return out;
  }

  [[nodiscard]] double mean() const {
    specfun::CompensatedSum s;
    for (std::size_t i = 0; i < pmf.size(); ++i)
      s.add(static_cast<double>(i + 1) * pmf[i]);
    return s.value();
  }

  /// Smallest x with CDF(x) >= p. A 1e-12 slack absorbs rounding in the
  /// cumulative sum.
  [[nodiscard]] std::int64_t quantile(double p) const {
    if (!(p > 0.0 && p <= 1.0))
      throw std::invalid_argument("quantile: p must lie in (0, 1]");
    specfun::CompensatedSum s;
    for (std::size_t i = 0; i < pmf.size(); ++i) {
      s.add(pmf[i]);
      if (s.value() >= p - 1e-12)
        return static_cast<std::int64_t>(i + 1);
    }
    return n;
  }

  [[nodiscard]] std::int64_t median() const { return quantile(0.5); }
};

struct SummaryStats {
  double mean = 0.0;
  std::int64_t median = 0;
  std::map<double, std::int64_t> quantiles;
  std::optional<double> mean_fraction;
  std::optional<double> median_fraction;
  std::optional<double> success_prob;
  std::optional<double> no_choice_prob;
};

inline SummaryStats summarize(const DurationDistribution& d, const std::vector<double>& probs = {}) {
  SummaryStats s;
  s.mean = d.mean();
  s.median = d.median();
  for (double p : probs)
    s.quantiles[p] = d.quantile(p);
  const auto nd = static_cast<double>(d.n);
  s.mean_fraction = s.mean / nd;
  s.median_fraction = static_cast<double>(s.median) / nd;
  s.no_choice_prob = d.no_choice_mass;
  return s;
}

// No-information threshold rules -------------------------------------------

namespace detail {
inline std::int64_t skipped(std::int64_t n, const SingleThreshold& policy) {
  if (n < 1)
    throw std::invalid_argument("threshold rule: N must be >= 1");
  if (policy.first_eligible < 1 || policy.first_eligible > n || policy.c < 1 || policy.c > n)
    throw std::invalid_argument("threshold rule: threshold must lie in 1..N");
  return policy.first_eligible - 1;
}
}  // namespace detail

/// Law of T when the first k = first_eligible - 1 applicants are skipped
/// and the next candidate (an event of probability 1/i at position i,
/// independently) is taken, the last applicant by default.
inline DurationDistribution no_info_pmf(std::int64_t n, const SingleThreshold& policy) {
  const std::int64_t k = detail::skipped(n, policy);
  DurationDistribution d{n, std::vector<double>(static_cast<std::size_t>(n), 0.0), std::nullopt};
  if (k == 0) {
    d.pmf[0] = 1.0;
    return d;
  }
  const auto kd = static_cast<double>(k);
  for (std::int64_t x = k + 1; x < n; ++x) {
    const auto xd = static_cast<double>(x);
    d.pmf[x - 1] = kd / (xd * (xd - 1.0));
  }
  d.pmf[n - 1] = kd / static_cast<double>(n - 1);
  return d;
}

/// Closed-form mean of no_info_pmf: k [N/(N-1) + psi(N-1) - psi(k)].
inline double no_info_mean(std::int64_t n, const SingleThreshold& policy) {
  const std::int64_t k = detail::skipped(n, policy);
  if (k == 0)
    return 1.0;
  const auto nd = static_cast<double>(n);
  const auto kd = static_cast<double>(k);
  return kd * (nd / (nd - 1.0) + specfun::digamma(nd - 1.0) - specfun::digamma(kd));
}

/// The finite-pool table convention (c-1)[N/(N-1) + psi(N) - psi(c-1)]. It
/// exceeds the true mean by (c-1)/(N-1).
inline double tabulated_threshold_mean(std::int64_t n, std::int64_t c) {
  if (c < 2 || c > n)
    throw std::invalid_argument("tabulated_threshold_mean: need 2 <= c <= N");
  const auto nd = static_cast<double>(n);
  const auto k = static_cast<double>(c - 1);
  return k * (nd / (nd - 1.0) + specfun::digamma(nd) - specfun::digamma(k));
}

/// Continuous quantile (c-1)/(1-p) of the threshold rule.
inline double no_info_quantile(std::int64_t c, double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("no_info_quantile: p must lie in (0, 1)");
  if (c < 2)
    throw std::invalid_argument("no_info_quantile: c must be >= 2");
  return static_cast<double>(c - 1) / (1.0 - p);
}

/// Integer version: the ceiling, capped at N.
inline std::int64_t no_info_quantile(std::int64_t c, double p, std::int64_t n) {
  const double q = no_info_quantile(c, p);
  return std::min<std::int64_t>(static_cast<std::int64_t>(std::ceil(q - 1e-9)), n);
}

/// E(T)/N in the limit when a fraction x is skipped: x (1 + ln(1/x)).
inline double asymptotic_fraction_single(double x) {
  if (!(x > 0.0 && x <= 1.0))
    throw std::invalid_argument("asymptotic_fraction_single: x must lie in (0, 1]");
  return x * (1.0 - std::log(x));
}

/// Threshold fraction whose asymptotic mean fraction is p.
inline double inverse_threshold_for_mean(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("inverse_threshold_for_mean: p must lie in (0, 1)");
  return std::exp(1.0 + specfun::lambert_w(-p / std::numbers::e, specfun::LambertBranch::lower));
}

/// Bearden mean with the real threshold sqrt(N).
inline double bearden_mean_real(double n) {
  const double r = std::sqrt(n) - 1.0;
  return r * (n / (n - 1.0) + specfun::digamma(n - 1.0) - specfun::digamma(r));
}

inline double bearden_mean_approx(double n) { return (std::sqrt(n) - 1.0) * (1.0 + 0.5 * std::log(n)) + 1.5; }

// Per-position acceptance ---------------------------------------------------

/// Law of T when applicant i is accepted with probability accept[i-1],
/// independently of the past, the last one by default.
inline DurationDistribution acceptance_pmf(const std::vector<double>& accept) {
  const auto n = static_cast<std::int64_t>(accept.size());
  if (n < 1)
    throw std::invalid_argument("acceptance_pmf: empty");
  DurationDistribution d{n, std::vector<double>(accept.size(), 0.0), std::nullopt};
  double survive = 1.0;
  for (std::int64_t i = 0; i + 1 < n; ++i) {
    d.pmf[i] = survive * accept[i];
    survive *= 1.0 - accept[i];
  }
  d.pmf[n - 1] = survive;
  return d;
}

inline std::int64_t stage_start(double fraction, std::int64_t n) {
  return static_cast<std::int64_t>(std::floor(fraction * static_cast<double>(n))) + 1;
}

/// Finite-N law under stage thresholds: at position i the acceptable
/// relative ranks are 1..d(i), d(i) = number of stages with start <= i.
inline DurationDistribution stage_pmf(std::int64_t n, const StageThresholds& stages) {
  validate(stages);
  if (n < 1)
    throw std::invalid_argument("stage_pmf: N must be >= 1");
  std::vector<double> accept(static_cast<std::size_t>(n), 0.0);
  for (std::int64_t i = 1; i <= n; ++i) {
    std::int64_t d = 0;
    for (double f : stages.fractions)
      d += stage_start(f, n) <= i;
    accept[i - 1] = static_cast<double>(std::min(d, i)) / static_cast<double>(i);
  }
  return acceptance_pmf(accept);
}

/// Smith: a candidate at position i > k appears with probability 1/i and
/// accepts with probability p. No acceptance by N means no choice.
inline DurationDistribution refusal_pmf(std::int64_t n, const SingleThreshold& policy, double p) {
  const std::int64_t k = detail::skipped(n, policy);
  std::vector<double> accept(static_cast<std::size_t>(n), 0.0);
  for (std::int64_t i = k + 1; i <= n; ++i)
    accept[i - 1] = p / static_cast<double>(i);
  auto d = acceptance_pmf(accept);
  d.no_choice_mass = d.pmf[n - 1] * (1.0 - accept[n - 1]);
  return d;
}

// Full-information cutoff rules --------------------------------------------

namespace detail {
inline void check_cutoffs(std::int64_t n, const ValueCutoffs& policy, bool candidate_only) {
  if (n < 1)
    throw std::invalid_argument("cutoff rule: N must be >= 1");
  if (static_cast<std::int64_t>(policy.cutoffs.size()) != n)
    throw std::invalid_argument("cutoff rule: cutoff vector length must equal N");
  if (policy.candidate_only != candidate_only)
    throw std::invalid_argument(candidate_only ? "gm_pmf: cutoffs must be candidate_only"
                                               : "cutoff_pmf: cutoffs must not be candidate_only");
  for (double p : policy.cutoffs)
    if (!(p >= 0.0 && p <= 1.0))
      throw std::invalid_argument("cutoff rule: cutoffs must lie in [0, 1]");
}
}  // namespace detail

/// Pr(T = x) = (1 - P_x) prod_{i<x} P_i, the product kept in log space.
inline DurationDistribution cutoff_pmf(std::int64_t n, const ValueCutoffs& policy) {
  detail::check_cutoffs(n, policy, false);
  DurationDistribution d{n, std::vector<double>(static_cast<std::size_t>(n), 0.0), std::nullopt};
  specfun::CompensatedSum log_prod;
  for (std::int64_t x = 1; x <= n; ++x) {
    const double p = policy.cutoffs[x - 1];
    d.pmf[x - 1] = (1.0 - p) * std::exp(log_prod.value());
    if (p == 0.0)
      return d;  // certain stop; nothing survives past x
    log_prod.add(std::log(p));
  }
  d.pmf[n - 1] += std::exp(log_prod.value());
  return d;
}

/// E(T) = sum_x prod_{i<x} P_i.
inline double cutoff_mean(const ValueCutoffs& policy) {
  specfun::CompensatedSum mean, log_prod;
  for (double p : policy.cutoffs) {
    mean.add(std::exp(log_prod.value()));
    if (p == 0.0)
      break;
    log_prod.add(std::log(p));
  }
  return mean.value();
}

inline constexpr std::int64_t default_gm_cap = 20000;

namespace detail {
// reach[x-1] = Pr(T >= x) for x = 1..N+1, where Pr(T >= x+1) =
// (1/x) sum_{i<=x} P_i^x for a relatively-best cutoff rule.
inline std::vector<double> gm_reach(std::int64_t n, const ValueCutoffs& policy, std::int64_t cap) {
  detail::check_cutoffs(n, policy, true);
  if (n > cap)
    throw CapExceeded("gm_pmf: exact mode unavailable for N = " + std::to_string(n) + " (cap " +
                      std::to_string(cap) + "); use the asymptotic report instead");
  std::vector<double> logs(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i)
    logs[i] = std::log(policy.cutoffs[i]);
  std::vector<double> reach(static_cast<std::size_t>(n + 1));
  reach[0] = 1.0;
  for (std::int64_t x = 1; x <= n; ++x) {
    const auto xd = static_cast<double>(x);
    specfun::CompensatedSum s;
    for (std::int64_t i = 0; i < x; ++i) {
      const double e = xd * logs[i];
      if (e < -745.0)
        break;  // cutoffs decrease with position, so the rest vanish too
      s.add(std::exp(e));
    }
    reach[x] = s.value() / xd;
  }
  return reach;
}
}  // namespace detail

/// Law of T when only relatively best applicants above the cutoff are
/// accepted. no_choice_mass = (1/N) sum_i P_i^N is included in pmf[N].
inline DurationDistribution gm_pmf(std::int64_t n, const ValueCutoffs& policy, std::int64_t cap = default_gm_cap) {
  const auto reach = detail::gm_reach(n, policy, cap);
  DurationDistribution d{n, std::vector<double>(static_cast<std::size_t>(n), 0.0), reach[n]};
  for (std::int64_t x = 1; x < n; ++x)
    d.pmf[x - 1] = reach[x - 1] - reach[x];
  d.pmf[n - 1] = reach[n - 1];
  return d;
}

/// E(T) = sum_{x=1}^{N} Pr(T >= x).
inline double gm_mean(std::int64_t n, const ValueCutoffs& policy, std::int64_t cap = default_gm_cap) {
  const auto reach = detail::gm_reach(n, policy, cap);
  specfun::CompensatedSum s;
  for (std::int64_t x = 0; x < n; ++x)
    s.add(reach[x]);
  return s.value();
}

/// Exact law of T for a finite-N setting under the given policy.
inline DurationDistribution exact_distribution(const SettingSpec& setting, const Policy& policy,
                                               std::int64_t gm_cap = default_gm_cap) {
  const std::int64_t n = setting.pool_size();
  auto need = [&](auto* p, const char* what) {
    if (!p)
      throw std::invalid_argument(std::string("exact_distribution: '") + std::string(variant_tag(setting.variant)) +
                                  "' needs a " + what + " policy");
    return p;
  };
  switch (setting.variant) {
    case Variant::Secretary:
    case Variant::Bearden:
    case Variant::Postdoc:
    case Variant::NoInfoDuration:
    case Variant::NoInfoBestChoiceDuration:
    case Variant::InterviewCost:
    case Variant::SzajowskiCost:
      return no_info_pmf(n, *need(std::get_if<SingleThreshold>(&policy), "single-threshold"));
    case Variant::Sakaguchi: {
      const auto* st = need(std::get_if<SingleThreshold>(&policy), "single-threshold");
      auto d = no_info_pmf(n, *st);
      // Nobody eligible turned out best so far: Pr = k/N.
      d.no_choice_mass = static_cast<double>(st->first_eligible - 1) / static_cast<double>(n);
      return d;
    }
    case Variant::Smith:
      return refusal_pmf(n, *need(std::get_if<SingleThreshold>(&policy), "single-threshold"), setting.p.value());
    case Variant::Moser:
    case Variant::MoserDecaying:
      return cutoff_pmf(n, *need(std::get_if<ValueCutoffs>(&policy), "value-cutoff"));
    case Variant::GMBestChoice:
    case Variant::FIDuration:
    case Variant::FIBestChoiceDuration:
      return gm_pmf(n, *need(std::get_if<ValueCutoffs>(&policy), "value-cutoff"), gm_cap);
    case Variant::Lindley:
    case Variant::GuseinZade:
      return stage_pmf(n, *need(std::get_if<StageThresholds>(&policy), "stage-threshold"));
    default:
      throw UnsupportedVariant(setting.variant, "exact_distribution");
  }
}

// Unbounded horizon --------------------------------------------------------

/// T is geometric with success probability sqrt(2 cost).
inline SummaryStats house_selling_stats(double cost, const std::vector<double>& probs = {}) {
  const ReservationValue rv = reservation_value(cost);
  SummaryStats s;
  const double p = rv.degenerate ? 1.0 : std::min(1.0, std::sqrt(2.0 * cost));
  s.mean = 1.0 / p;
  auto geometric_quantile = [p](double q) -> std::int64_t {
    if (p >= 1.0)
      return 1;
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(std::log1p(-q) / std::log1p(-p) - 1e-12)));
  };
  s.median = geometric_quantile(0.5);
  for (double q : probs) {
    if (!(q > 0.0 && q < 1.0))
      throw std::invalid_argument("house_selling_stats: quantile probabilities must lie in (0, 1)");
    s.quantiles[q] = geometric_quantile(q);
  }
  return s;
}

// Multi-stage asymptotics ---------------------------------------------------

/// F(m) = 1 - prod_{i<=d} c_i / m^d with d stages below m. The mass left at
/// m = 1 belongs to the forced final pick, so F(1) = 1.
inline double multi_stage_cdf(const StageThresholds& stages, double m) {
  validate(stages);
  if (m >= 1.0)
    return 1.0;
  double log_prod = 0.0;
  int d = 0;
  for (double c : stages.fractions) {
    if (!(c < m))
      break;
    log_prod += std::log(c);
    ++d;
  }
  if (d == 0)
    return 0.0;
  return 1.0 - std::exp(log_prod - d * std::log(m));
}

/// Solves multi_stage_cdf(m) = p: the geometric mean of the passed stages,
/// scaled by 1/(1-p).
inline double multi_stage_quantile(const StageThresholds& stages, double p) {
  validate(stages);
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("multi_stage_quantile: p must lie in (0, 1)");
  const auto& c = stages.fractions;
  double log_prod = 0.0;
  for (std::size_t d = 1; d <= c.size(); ++d) {
    log_prod += std::log(c[d - 1]);
    const double m = std::exp((log_prod - std::log1p(-p)) / static_cast<double>(d));
    const double upper = d < c.size() ? c[d] : 1.0;
    if (m > c[d - 1] && m <= upper)
      return m;
  }
  return 1.0;
}

/// Asymptotic E(T)/N under stage thresholds, closing with c_{S+1} = 1.
inline double multi_stage_mean(const StageThresholds& stages) {
  validate(stages);
  const auto& c = stages.fractions;
  const std::size_t s = c.size();
  auto next = [&](std::size_t d) { return d < s ? c[d] : 1.0; };  // c_{d+1}
  specfun::CompensatedSum total;
  total.add(c[0] * std::log(next(1) / c[0]));
  double prod = c[0];
  for (std::size_t d = 2; d <= s; ++d) {
    prod *= c[d - 1];
    const double k = static_cast<double>(d - 1);
    total.add(static_cast<double>(d) / k * prod * (std::pow(c[d - 1], -k) - std::pow(next(d), -k)));
  }
  total.add(prod);
  return total.value();
}

// Lindley series -------------------------------------------------------------

struct LindleySeries {
  int terms = 0;
  double partial_sum = 0.0;  // first `terms` terms
  double tail = 0.0;         // the rest, summed numerically
  double tail_bound = 0.0;   // analytic bound on the rest
  double mean = 0.0;         // from the truncated sum
  double mean_with_tail = 0.0;
};

/// E(T)/N = (1/V) {ln(3)/2 + 2 - sum_k a_k}, a_k = prod_{j=2}^{k+1}
/// (1 + 2/j)^(-(j-1)/(j+1)) / (k(k+1)).
inline LindleySeries lindley_series(int terms = 50) {
  if (terms < 1)
    throw std::invalid_argument("lindley_series: need at least one term");
  LindleySeries out;
  out.terms = terms;
  specfun::CompensatedSum head, tail;
  double log_prod = 0.0;
  for (std::int64_t k = 1;; ++k) {
    const auto j = static_cast<double>(k + 1);
    log_prod -= (j - 1.0) / (j + 1.0) * std::log1p(2.0 / j);
    const auto kd = static_cast<double>(k);
    const double a = std::exp(log_prod) / (kd * (kd + 1.0));
    if (k <= terms) {
      head.add(a);
    } else {
      tail.add(a);
      // a_k ~ 6 P / k^4; once tiny, close with the integral of that envelope.
      if (a < 1e-20 * std::max(1.0, tail.value())) {
        tail.add(a * kd / 3.0);
        break;
      }
    }
  }
  const double v = lindley_v_infinity();
  const double K = terms;
  out.partial_sum = head.value();
  out.tail = tail.value();
  // sum_{k>K} 6/(k(k+1)(k+2)(k+3)) = 2/((K+1)(K+2)(K+3)), times
  // prod_{j>=2} (1 + 2/j)^(2/(j+1)) = V^2/3.
  out.tail_bound = v * v / 3.0 * 2.0 / ((K + 1.0) * (K + 2.0) * (K + 3.0));
  const double lead = 0.5 * std::log(3.0) + 2.0;
  out.mean = (lead - out.partial_sum) / v;
  out.mean_with_tail = (lead - out.partial_sum - out.tail) / v;
  return out;
}

inline double lindley_asymptotic_mean() { return lindley_series(50).mean; }

// Full-information asymptotics ----------------------------------------------

/// Mean fraction pi(c) = (e^c - 1 - c) E1(c) + e^-c.
inline double fi_mean_fraction(double c) {
  return (std::expm1(c) - c) * specfun::exp_integral_e1(c) + std::exp(-c);
}

/// Pr(no choice) = e^-c - c E1(c).
inline double fi_no_choice(double c) { return std::exp(-c) - c * specfun::exp_integral_e1(c); }

/// Residual of m = 2 int_0^m exp(-c m / (1 - x)) dx.
inline double fi_median_residual(double c, double m) {
  const double integral =
      specfun::integrate([c, m](double x) { return std::exp(-c * m / (1.0 - x)); }, 0.0, m, 1e-12);
  return m - 2.0 * integral;
}

/// Median fraction m(c).
inline double fi_median_fraction(double c) {
  return specfun::solve_root([c](double m) { return fi_median_residual(c, m); }, {0.01, 0.99}, 1e-13);
}

struct AsymptoticReport {
  double mean_fraction = 0.0;
  std::optional<double> median_fraction;
  std::optional<double> no_choice_prob;
  std::optional<double> success_prob;
  std::optional<double> threshold_fraction;
  std::optional<double> constant_c;
  std::optional<double> payoff;            // expected payoff where it differs from success
  std::optional<double> conditional_mean;  // E(T)/N given that someone is chosen
};

namespace detail {
inline AsymptoticReport single_threshold_report(double x) {
  AsymptoticReport r;
  r.mean_fraction = asymptotic_fraction_single(x);
  r.median_fraction = std::min(1.0, 2.0 * x);
  r.threshold_fraction = x;
  return r;
}

inline AsymptoticReport full_information_report(double c) {
  AsymptoticReport r;
  r.constant_c = c;
  r.mean_fraction = fi_mean_fraction(c);
  r.median_fraction = fi_median_fraction(c);
  r.no_choice_prob = fi_no_choice(c);
  return r;
}
}  // namespace detail

inline AsymptoticReport asymptotic_report(const SettingSpec& setting) {
  using std::numbers::e;
  const double root_e = std::sqrt(e);
  switch (setting.variant) {
    case Variant::Secretary: {
      auto r = detail::single_threshold_report(1.0 / e);
      r.success_prob = 1.0 / e;
      return r;
    }
    case Variant::Postdoc: {
      AsymptoticReport r;
      r.mean_fraction = 0.5 * (1.0 + std::numbers::ln2);
      r.median_fraction = 1.0;
      r.threshold_fraction = 0.5;
      r.success_prob = 0.25;
      return r;
    }
    case Variant::Sakaguchi: {
      auto r = detail::single_threshold_report(1.0 / root_e);
      r.median_fraction = 1.0;
      r.no_choice_prob = 1.0 / root_e;
      r.conditional_mean = 1.0 / (2.0 * (root_e - 1.0));
      return r;
    }
    case Variant::PresmanSonin: {
      // With n = u b, u uniform: T = n below the threshold t = e^-2,
      // otherwise E(T/n) -> (t/u)(1 + ln(u/t)). Averaging gives 5t.
      AsymptoticReport r;
      r.mean_fraction = 5.0 / (e * e);
      r.threshold_fraction = 1.0 / (e * e);
      r.success_prob = 2.0 / (e * e);
      return r;
    }
    case Variant::Smith: {
      const double p = setting.p.value();
      const double x = asymptotic_threshold(setting);
      // Refused offers keep the search going: Pr(T/N > m) = (x/m)^p past
      // the threshold, so E(T)/N = x + x/p.
      AsymptoticReport r;
      r.threshold_fraction = x;
      r.mean_fraction = x * (1.0 + 1.0 / p);
      r.success_prob = x;
      return r;
    }
    case Variant::NoInfoDuration: {
      auto r = detail::single_threshold_report(1.0 / (e * e));
      r.payoff = 2.0 / (e * e);
      return r;
    }
    case Variant::NoInfoBestChoiceDuration:
    case Variant::InterviewCost:
    case Variant::SzajowskiCost:
      return detail::single_threshold_report(asymptotic_threshold(setting));
    case Variant::Moser: {
      AsymptoticReport r;
      r.mean_fraction = 1.0 / 3.0;
      r.median_fraction = 1.0 - std::sqrt(0.5);
      return r;
    }
    case Variant::GMBestChoice: {
      auto r = detail::full_information_report(constants::gm_constant());
      r.success_prob = r.mean_fraction;
      return r;
    }
    case Variant::FIDuration:
      return detail::full_information_report(constants::fi_duration);
    case Variant::FIBestChoiceDuration:
      return detail::full_information_report(constants::fi_best_choice_duration());
    case Variant::Lindley: {
      const auto stages = lindley_stages(200);
      AsymptoticReport r;
      r.mean_fraction = lindley_asymptotic_mean();
      r.median_fraction = multi_stage_quantile(stages, 0.5);
      r.threshold_fraction = stages.fractions.front();
      return r;
    }
    case Variant::GuseinZade: {
      AsymptoticReport r;
      if (!setting.s) {
        r.mean_fraction = constants::gusein_zade_limit;
        r.median_fraction = constants::gusein_zade_limit;
        r.threshold_fraction = constants::gusein_zade_limit;
        return r;
      }
      const auto stages = stage_thresholds(setting);
      r.mean_fraction = multi_stage_mean(stages);
      r.median_fraction = multi_stage_quantile(stages, 0.5);
      r.threshold_fraction = stages.fractions.front();
      return r;
    }
    default:
      throw UnsupportedVariant(setting.variant, "asymptotic_report");
  }
}

}  // namespace stopdur
