#pragma once

// Stochastic and exhaustive oracles for the duration laws.
//
// Every trial owns a SplitMix64 stream seeded from (seed, trial index), so a
// run is reproducible and would not change if trials were split across
// workers. Best-so-far settings jump from record to record: after a record at
// k the next one is at floor(k/U) + 1, since Pr(no record in k+1..j) = k/j.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "duration.hpp"
#include "policies.hpp"
#include "setting.hpp"
#include "specfun.hpp"

namespace stopdur {

class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Independent stream for one trial.
  static SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64(mix(seed ^ mix(index + 0x9e3779b97f4a7c15ULL)));
  }

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform_open0() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

  /// Uniform on 1..n.
  std::int64_t uniform_int(std::int64_t n) {
    const auto wide = static_cast<unsigned __int128>(next()) * static_cast<std::uint64_t>(n);
    return static_cast<std::int64_t>(wide >> 64) + 1;
  }

  bool bernoulli(double p) { return uniform() < p; }

private:
  std::uint64_t state_;
};

struct SimulationSummary {
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  double mean_t = 0.0;
  double se_mean = 0.0;
  std::int64_t median_t = 0;
  double mean_fraction = 0.0;  // T/N (T/n for a random pool)
  double se_fraction = 0.0;
  std::optional<double> success_rate;
  std::optional<double> no_choice_rate;
  std::optional<double> mean_payoff;
  std::optional<double> se_payoff;
  std::vector<std::int64_t> histogram;  // histogram[x-1] = #trials with T = x
};

namespace detail {

struct TrialOutcome {
  std::int64_t t = 0;
  std::int64_t pool = 0;  // pool size of this trial
  bool chosen = true;
  bool success = false;
  double payoff = 0.0;
};

struct Moments {
  specfun::CompensatedSum sum, sum_sq;
  void add(double v) {
    sum.add(v);
    sum_sq.add(v * v);
  }
  [[nodiscard]] double mean(double n) const { return sum.value() / n; }
  [[nodiscard]] double se(double n) const {
    if (n < 2)
      return 0.0;
    const double m = mean(n);
    const double var = std::max(0.0, (sum_sq.value() - n * m * m) / (n - 1.0));
    return std::sqrt(var / n);
  }
};

/// Next record position after a record (or the skipped block) ending at k.
inline std::int64_t next_record(SplitMix64& rng, std::int64_t k) {
  if (k == 0)
    return 1;
  const double j = std::floor(static_cast<double>(k) / rng.uniform_open0()) + 1.0;
  return j > 9.0e18 ? std::numeric_limits<std::int64_t>::max() : static_cast<std::int64_t>(j);
}

/// Number of draws until one exceeds v (geometric with success 1 - v).
inline std::int64_t geometric_gap(SplitMix64& rng, double v) {
  if (v <= 0.0)
    return 1;
  if (v >= 1.0)
    return std::numeric_limits<std::int64_t>::max();
  const double g = std::floor(std::log(rng.uniform_open0()) / std::log(v)) + 1.0;
  return g > 9.0e18 ? std::numeric_limits<std::int64_t>::max() : static_cast<std::int64_t>(g);
}

inline bool best_so_far_setting(Variant v) {
  switch (v) {
    case Variant::Secretary:
    case Variant::Bearden:
    case Variant::Sakaguchi:
    case Variant::Smith:
    case Variant::PresmanSonin:
    case Variant::NoInfoDuration:
    case Variant::NoInfoBestChoiceDuration:
    case Variant::InterviewCost:
    case Variant::SzajowskiCost:
      return true;
    default:
      return false;
  }
}

inline TrialOutcome best_so_far_trial(const SettingSpec& s, const SingleThreshold& pol, SplitMix64& rng) {
  const Variant v = s.variant;
  const std::int64_t n = v == Variant::PresmanSonin ? rng.uniform_int(*s.b) : *s.n;
  const std::int64_t k = pol.first_eligible - 1;
  TrialOutcome out;
  out.pool = n;
  if (k >= n) {
    // The random pool ran out inside the sampling phase.
    out.t = n;
    out.chosen = false;
    return out;
  }
  std::int64_t pos = next_record(rng, k);
  if (v == Variant::Smith) {
    const double p = *s.p;
    while (pos <= n && !rng.bernoulli(p))
      pos = next_record(rng, pos);
  }
  const bool candidate = pos <= n;
  const bool forced = !candidate && v != Variant::Sakaguchi && v != Variant::Smith && v != Variant::PresmanSonin;
  out.t = candidate ? pos : n;
  out.chosen = candidate || forced;
  if (candidate) {
    const std::int64_t next = next_record(rng, pos);
    out.success = next > n;
    const double nd = static_cast<double>(n);
    switch (v) {
      case Variant::Bearden:
      case Variant::SzajowskiCost:
        // value of a relative best among pos draws: max of pos uniforms
        out.payoff = std::pow(rng.uniform_open0(), 1.0 / static_cast<double>(pos));
        break;
      case Variant::Sakaguchi:
        out.payoff = out.success ? 1.0 : -1.0;
        break;
      case Variant::NoInfoDuration:
        out.payoff = static_cast<double>(std::min(next, n + 1) - pos);
        break;
      case Variant::NoInfoBestChoiceDuration:
        out.payoff = out.success ? (nd - static_cast<double>(pos) + 1.0) / nd : 0.0;
        break;
      case Variant::InterviewCost:
        out.payoff = out.success ? 1.0 - static_cast<double>(pos) / nd : 0.0;
        break;
      default:
        out.payoff = out.success ? 1.0 : 0.0;
    }
  } else if (forced && (v == Variant::Bearden || v == Variant::SzajowskiCost)) {
    out.payoff = rng.uniform();  // the last applicant's value is unconstrained
  }
  if (v == Variant::SzajowskiCost) {
    const double nd = static_cast<double>(n);
    out.payoff -= *s.cost * (nd - static_cast<double>(out.t) + 1.0) / (nd - static_cast<double>(pol.first_eligible) + 1.0);
  }
  return out;
}

/// Overall rank of the applicant picked at t with relative rank r, by
/// drawing the rest of the relative-rank sequence.
inline std::int64_t final_rank(SplitMix64& rng, std::int64_t r, std::int64_t t, std::int64_t n) {
  std::int64_t q = r;
  for (std::int64_t i = t + 1; i <= n; ++i)
    if (rng.uniform_int(i) <= q)
      ++q;
  return q;
}

inline TrialOutcome rank_trial(const SettingSpec& s, const Policy& policy, SplitMix64& rng,
                               const std::vector<std::int64_t>& acceptable) {
  const std::int64_t n = *s.n;
  TrialOutcome out;
  out.pool = n;
  std::int64_t r = 0;
  std::int64_t t = n;
  for (std::int64_t i = 1; i <= n; ++i) {
    r = rng.uniform_int(i);
    const bool accept = s.variant == Variant::Postdoc
                            ? i >= std::get<SingleThreshold>(policy).first_eligible && r == 2
                            : r <= acceptable[i - 1];
    if (accept || i == n) {
      t = i;
      break;
    }
  }
  out.t = t;
  const std::int64_t rank = final_rank(rng, r, t, n);
  switch (s.variant) {
    case Variant::Postdoc:
      out.success = rank == 2;
      out.payoff = out.success ? 1.0 : 0.0;
      break;
    case Variant::Lindley:
      out.payoff = static_cast<double>(rank);
      break;
    default:
      out.success = rank <= *s.s;
      out.payoff = out.success ? 1.0 : 0.0;
  }
  return out;
}

inline TrialOutcome value_trial(const SettingSpec& s, const ValueCutoffs& pol, SplitMix64& rng) {
  const std::int64_t n = *s.n;
  TrialOutcome out;
  out.pool = n;
  if (!pol.candidate_only) {
    for (std::int64_t i = 1; i <= n; ++i) {
      const double u = rng.uniform();
      if (u > pol.cutoffs[i - 1] || i == n) {
        out.t = i;
        const double scale = s.variant == Variant::MoserDecaying ? static_cast<double>(n + 1 - i) : 1.0;
        out.payoff = u * scale;
        return out;
      }
    }
  }
  // Relatively-best cutoffs: jump between records of the value sequence.
  std::int64_t pos = 1;
  double v = rng.uniform();
  while (!(v > pol.cutoffs[pos - 1])) {
    const std::int64_t gap = geometric_gap(rng, v);
    if (gap > n - pos) {
      out.t = n;
      out.chosen = false;
      return out;
    }
    pos += gap;
    v += (1.0 - v) * rng.uniform();
  }
  out.t = pos;
  const std::int64_t gap = geometric_gap(rng, v);
  const std::int64_t next = gap > n - pos ? n + 1 : pos + gap;
  out.success = next > n;
  const double nd = static_cast<double>(n);
  switch (s.variant) {
    case Variant::FIDuration:
      out.payoff = static_cast<double>(next - pos);
      break;
    case Variant::FIBestChoiceDuration:
      out.payoff = out.success ? (nd - static_cast<double>(pos) + 1.0) / nd : 0.0;
      break;
    default:
      out.payoff = out.success ? 1.0 : 0.0;
  }
  return out;
}

inline TrialOutcome house_trial(const SettingSpec& s, const ReservationValue& pol, SplitMix64& rng) {
  TrialOutcome out;
  std::int64_t t = 0;
  double u;
  do {
    u = rng.uniform();
    ++t;
  } while (!pol.degenerate && u < pol.gamma);
  out.t = t;
  out.pool = t;
  out.payoff = u - *s.cost * static_cast<double>(t);
  return out;
}

[[noreturn]] inline void mismatch(const SettingSpec& s, const char* expected) {
  throw std::invalid_argument(std::string("simulate: setting '") + std::string(variant_tag(s.variant)) +
                              "' needs a " + expected + " policy");
}

}  // namespace detail

inline SimulationSummary simulate(const SettingSpec& setting, const Policy& policy, std::int64_t trials,
                                  std::uint64_t seed) {
  if (trials < 1)
    throw std::invalid_argument("simulate: trials must be >= 1");
  setting.validate();
  const Variant v = setting.variant;
  if (v != Variant::HouseSelling && v != Variant::PresmanSonin)
    (void)setting.pool_size();

  // Per-position acceptable rank for stage rules.
  std::vector<std::int64_t> acceptable;
  enum class Kind { best_so_far, rank, value, house } kind;
  if (detail::best_so_far_setting(v)) {
    const auto* st = std::get_if<SingleThreshold>(&policy);
    if (!st)
      detail::mismatch(setting, "single-threshold");
    const std::int64_t horizon = v == Variant::PresmanSonin ? *setting.b : *setting.n;
    if (st->first_eligible < 1 || st->first_eligible > horizon)
      throw std::invalid_argument("simulate: threshold outside 1..N");
    kind = Kind::best_so_far;
  } else if (v == Variant::Postdoc) {
    const auto* st = std::get_if<SingleThreshold>(&policy);
    if (!st)
      detail::mismatch(setting, "single-threshold");
    kind = Kind::rank;
  } else if (v == Variant::Lindley || v == Variant::GuseinZade) {
    const auto* st = std::get_if<StageThresholds>(&policy);
    if (!st)
      detail::mismatch(setting, "stage-threshold");
    if (v == Variant::GuseinZade && !setting.s)
      throw std::invalid_argument("simulate: gusein-zade needs S");
    validate(*st);
    const std::int64_t n = *setting.n;
    acceptable.assign(static_cast<std::size_t>(n), 0);
    for (double f : st->fractions) {
      const std::int64_t start = stage_start(f, n);
      for (std::int64_t i = std::max<std::int64_t>(start, 1); i <= n; ++i)
        ++acceptable[i - 1];
    }
    kind = Kind::rank;
  } else if (v == Variant::HouseSelling) {
    if (!std::holds_alternative<ReservationValue>(policy))
      detail::mismatch(setting, "reservation-value");
    kind = Kind::house;
  } else {
    const auto* vc = std::get_if<ValueCutoffs>(&policy);
    if (!vc)
      detail::mismatch(setting, "value-cutoff");
    const bool want_candidates = v != Variant::Moser && v != Variant::MoserDecaying;
    if (vc->candidate_only != want_candidates)
      throw std::invalid_argument("simulate: cutoff semantics do not match the setting");
    if (static_cast<std::int64_t>(vc->cutoffs.size()) != *setting.n)
      throw std::invalid_argument("simulate: cutoff vector length must equal N");
    kind = Kind::value;
  }

  const bool track_success = v != Variant::Moser && v != Variant::MoserDecaying && v != Variant::Lindley &&
                             v != Variant::HouseSelling && v != Variant::Bearden && v != Variant::SzajowskiCost;
  const bool track_no_choice = v == Variant::Sakaguchi || v == Variant::Smith || v == Variant::PresmanSonin ||
                               v == Variant::GMBestChoice || v == Variant::FIDuration ||
                               v == Variant::FIBestChoiceDuration;

  SimulationSummary out;
  out.trials = trials;
  out.seed = seed;
  if (v == Variant::PresmanSonin)
    out.histogram.assign(static_cast<std::size_t>(*setting.b), 0);
  else if (v != Variant::HouseSelling)
    out.histogram.assign(static_cast<std::size_t>(*setting.n), 0);

  detail::Moments t_mom, frac_mom, pay_mom;
  std::int64_t successes = 0, no_choice = 0;
  for (std::int64_t trial = 0; trial < trials; ++trial) {
    auto rng = SplitMix64::substream(seed, static_cast<std::uint64_t>(trial));
    detail::TrialOutcome o;
    switch (kind) {
      case Kind::best_so_far:
        o = detail::best_so_far_trial(setting, std::get<SingleThreshold>(policy), rng);
        break;
      case Kind::rank:
        o = detail::rank_trial(setting, policy, rng, acceptable);
        break;
      case Kind::value:
        o = detail::value_trial(setting, std::get<ValueCutoffs>(policy), rng);
        break;
      case Kind::house:
        o = detail::house_trial(setting, std::get<ReservationValue>(policy), rng);
        break;
    }
    if (static_cast<std::size_t>(o.t) > out.histogram.size())
      out.histogram.resize(static_cast<std::size_t>(o.t), 0);
    ++out.histogram[o.t - 1];
    t_mom.add(static_cast<double>(o.t));
    frac_mom.add(static_cast<double>(o.t) / static_cast<double>(o.pool));
    pay_mom.add(o.payoff);
    successes += o.success;
    no_choice += !o.chosen;
  }

  const auto nt = static_cast<double>(trials);
  out.mean_t = t_mom.mean(nt);
  out.se_mean = t_mom.se(nt);
  out.mean_fraction = frac_mom.mean(nt);
  out.se_fraction = frac_mom.se(nt);
  std::int64_t cum = 0;
  for (std::size_t i = 0; i < out.histogram.size(); ++i) {
    cum += out.histogram[i];
    if (2 * cum >= trials) {
      out.median_t = static_cast<std::int64_t>(i + 1);
      break;
    }
  }
  if (track_success)
    out.success_rate = static_cast<double>(successes) / nt;
  if (track_no_choice)
    out.no_choice_rate = static_cast<double>(no_choice) / nt;
  if (v != Variant::Secretary && v != Variant::GMBestChoice && v != Variant::GuseinZade && v != Variant::Postdoc &&
      v != Variant::PresmanSonin && v != Variant::Smith) {
    out.mean_payoff = pay_mom.mean(nt);
    out.se_payoff = pay_mom.se(nt);
  }
  return out;
}

// Exhaustive enumeration ------------------------------------------------------

struct ExactEnumeration {
  DurationDistribution distribution;
  std::optional<double> success_prob;
  std::optional<double> expected_rank;
};

inline constexpr std::int64_t max_enumeration_n = 8;

/// Walks all N! relative-rank sequences (r_i uniform on 1..i) and applies
/// the rule. Counts are exact integers divided by N! at the end.
inline ExactEnumeration enumerate_exact(const SettingSpec& setting, const Policy& policy) {
  const std::int64_t n = setting.pool_size();
  if (n > max_enumeration_n)
    throw std::invalid_argument("enumerate_exact: N must be <= " + std::to_string(max_enumeration_n));
  const Variant v = setting.variant;

  // acceptable[i-1]: largest relative rank accepted at position i (0 = none);
  // Postdoc accepts exactly rank 2.
  std::vector<int> acceptable(static_cast<std::size_t>(n), 0);
  bool postdoc = false;
  bool no_forced_pick = false;
  if (const auto* st = std::get_if<SingleThreshold>(&policy)) {
    if (st->first_eligible < 1 || st->first_eligible > n)
      throw std::invalid_argument("enumerate_exact: threshold outside 1..N");
    switch (v) {
      case Variant::Postdoc:
        postdoc = true;
        [[fallthrough]];
      case Variant::Secretary:
      case Variant::Bearden:
      case Variant::InterviewCost:
      case Variant::NoInfoDuration:
      case Variant::NoInfoBestChoiceDuration:
      case Variant::SzajowskiCost:
        break;
      case Variant::Sakaguchi:
        no_forced_pick = true;
        break;
      default:
        throw UnsupportedVariant(v, "enumerate_exact");
    }
    for (std::int64_t i = st->first_eligible; i <= n; ++i)
      acceptable[i - 1] = postdoc ? 2 : 1;
  } else if (const auto* stages = std::get_if<StageThresholds>(&policy)) {
    if (v != Variant::Lindley && v != Variant::GuseinZade)
      throw UnsupportedVariant(v, "enumerate_exact");
    validate(*stages);
    for (double f : stages->fractions)
      for (std::int64_t i = stage_start(f, n); i <= n; ++i)
        ++acceptable[i - 1];
  } else {
    throw UnsupportedVariant(v, "enumerate_exact");
  }

  std::vector<std::int64_t> counts(static_cast<std::size_t>(n), 0);
  std::int64_t success = 0, rank_total = 0, no_choice = 0, total = 0;
  std::vector<int> r(static_cast<std::size_t>(n), 1);  // odometer digits, r[i-1] in 1..i
  for (;;) {
    std::int64_t t = 0;
    for (std::int64_t i = 1; i <= n; ++i) {
      const int ri = r[i - 1];
      const bool accept = postdoc ? (acceptable[i - 1] == 2 && ri == 2) : ri <= acceptable[i - 1];
      if (accept) {
        t = i;
        break;
      }
    }
    bool chosen = t != 0;
    if (!chosen) {
      t = n;
      no_choice += no_forced_pick;
      chosen = !no_forced_pick;
    }
    ++counts[t - 1];
    ++total;
    std::int64_t q = r[t - 1];
    for (std::int64_t i = t + 1; i <= n; ++i)
      if (r[i - 1] <= q)
        ++q;
    rank_total += q;
    if (chosen) {
      if (v == Variant::Postdoc)
        success += q == 2;
      else if (v == Variant::GuseinZade)
        success += q <= setting.s.value_or(1);
      else
        success += q == 1;
    }

    std::int64_t pos = n;
    while (pos >= 1 && r[pos - 1] == pos) {
      r[pos - 1] = 1;
      --pos;
    }
    if (pos == 0)
      break;
    ++r[pos - 1];
  }

  ExactEnumeration out;
  out.distribution.n = n;
  out.distribution.pmf.resize(static_cast<std::size_t>(n));
  const auto td = static_cast<double>(total);
  for (std::int64_t x = 0; x < n; ++x)
    out.distribution.pmf[x] = static_cast<double>(counts[x]) / td;
  if (no_forced_pick)
    out.distribution.no_choice_mass = static_cast<double>(no_choice) / td;
  if (v == Variant::Lindley)
    out.expected_rank = static_cast<double>(rank_total) / td;
  else
    out.success_prob = static_cast<double>(success) / td;
  return out;
}

}  // namespace stopdur
