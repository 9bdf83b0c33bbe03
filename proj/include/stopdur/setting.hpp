#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace stopdur {

/// Problem variants. Tags follow the usual names in the optimal stopping
/// literature.
enum class Variant {
  Secretary,                 // no information, best choice (dowry)
  Bearden,                   // best-so-far indicator, cardinal payoff
  Postdoc,                   // pick the second best
  Sakaguchi,                 // win/lose/draw marriage, payoffs {-1, 0, 1}
  Smith,                     // offers refused with probability 1 - p
  PresmanSonin,              // pool size uniform on 1..b
  NoInfoDuration,            // no-information duration problem
  NoInfoBestChoiceDuration,  // duration, paid only if best overall
  InterviewCost,             // best choice with cost 1/N per interview
  SzajowskiCost,             // Bearden setting with a decision cost
  Moser,                     // full information, cardinal payoff
  MoserDecaying,             // Moser with a pool whose best leaves each round
  GMBestChoice,              // full information, best choice
  FIDuration,                // full-information duration problem
  FIBestChoiceDuration,      // full-information best-choice duration
  Lindley,                   // minimum expected rank
  GuseinZade,                // overall rank S or better
  HouseSelling,              // unbounded horizon with observation cost
};

inline constexpr std::array<Variant, 18> all_variants = {
    Variant::Secretary,      Variant::Bearden,
    Variant::Postdoc,        Variant::Sakaguchi,
    Variant::Smith,          Variant::PresmanSonin,
    Variant::NoInfoDuration, Variant::NoInfoBestChoiceDuration,
    Variant::InterviewCost,  Variant::SzajowskiCost,
    Variant::Moser,          Variant::MoserDecaying,
    Variant::GMBestChoice,   Variant::FIDuration,
    Variant::FIBestChoiceDuration, Variant::Lindley,
    Variant::GuseinZade,     Variant::HouseSelling,
};

/// Command-line style tag, e.g. "presman-sonin".
inline std::string_view variant_tag(Variant v) {
  switch (v) {
    case Variant::Secretary: return "secretary";
    case Variant::Bearden: return "bearden";
    case Variant::Postdoc: return "postdoc";
    case Variant::Sakaguchi: return "sakaguchi";
    case Variant::Smith: return "smith";
    case Variant::PresmanSonin: return "presman-sonin";
    case Variant::NoInfoDuration: return "noinfo-duration";
    case Variant::NoInfoBestChoiceDuration: return "noinfo-bestchoice-duration";
    case Variant::InterviewCost: return "interview-cost";
    case Variant::SzajowskiCost: return "szajowski-cost";
    case Variant::Moser: return "moser";
    case Variant::MoserDecaying: return "moser-decaying";
    case Variant::GMBestChoice: return "gm-bestchoice";
    case Variant::FIDuration: return "fi-duration";
    case Variant::FIBestChoiceDuration: return "fi-bestchoice-duration";
    case Variant::Lindley: return "lindley";
    case Variant::GuseinZade: return "gusein-zade";
    case Variant::HouseSelling: return "house-selling";
  }
  return "unknown";
}

inline std::optional<Variant> parse_variant(std::string_view tag) {
  for (Variant v : all_variants)
    if (variant_tag(v) == tag)
      return v;
  return std::nullopt;
}

/// Problem variant plus its parameters. Construct with `make`, which
/// rejects parameters the variant does not use.
struct SettingSpec {
  Variant variant = Variant::Secretary;
  std::optional<std::int64_t> n;  // pool size; absent means "asymptotic"
  std::optional<int> s;           // target rank (GuseinZade)
  std::optional<double> p;        // acceptance probability (Smith)
  std::optional<std::int64_t> b;  // maximum pool size (PresmanSonin)
  std::optional<double> cost;     // per-observation / decision cost

  struct Params {
    std::optional<std::int64_t> n;
    std::optional<int> s;
    std::optional<double> p;
    std::optional<std::int64_t> b;
    std::optional<double> cost;
  };

  static SettingSpec make(Variant v, const Params& params = {}) {
    SettingSpec spec{v, params.n, params.s, params.p, params.b, params.cost};
    spec.validate();
    return spec;
  }

  static SettingSpec with_n(Variant v, std::int64_t n) { return make(v, {.n = n}); }

  /// Pool size, throwing if the setting is asymptotic.
  [[nodiscard]] std::int64_t pool_size() const {
    if (!n)
      throw std::invalid_argument(std::string(variant_tag(variant)) + ": pool size N required");
    return *n;
  }

  void validate() const {
    const std::string name(variant_tag(variant));
    auto reject = [&](bool present, const char* what) {
      if (present)
        throw std::invalid_argument(name + ": parameter '" + what + "' is not used by this setting");
    };
    auto require = [&](bool present, const char* what) {
      if (!present)
        throw std::invalid_argument(name + ": parameter '" + what + "' is required");
    };
    const bool uses_n = variant != Variant::HouseSelling && variant != Variant::PresmanSonin;
    reject(!uses_n && n.has_value(), "n");
    reject(variant != Variant::GuseinZade && s.has_value(), "s");
    reject(variant != Variant::Smith && p.has_value(), "p");
    reject(variant != Variant::PresmanSonin && b.has_value(), "b");
    const bool uses_cost = variant == Variant::HouseSelling || variant == Variant::SzajowskiCost ||
                           variant == Variant::InterviewCost;
    reject(!uses_cost && cost.has_value(), "cost");

    if (variant == Variant::Smith)
      require(p.has_value(), "p");
    if (variant == Variant::PresmanSonin)
      require(b.has_value(), "b");
    if (variant == Variant::HouseSelling || variant == Variant::SzajowskiCost)
      require(cost.has_value(), "cost");

    if (n && *n < 1)
      throw std::invalid_argument(name + ": N must be >= 1");
    if (s && *s < 1)
      throw std::invalid_argument(name + ": S must be >= 1");
    if (p && !(*p > 0.0 && *p <= 1.0))
      throw std::invalid_argument(name + ": p must lie in (0, 1]");
    if (b && *b < 1)
      throw std::invalid_argument(name + ": b must be >= 1");
    if (cost && !(*cost >= 0.0))
      throw std::invalid_argument(name + ": cost must be nonnegative");
  }
};

// Policies ------------------------------------------------------------------

/// Skip the first first_eligible - 1 applicants, then take the first
/// eligible candidate; the last applicant is taken by default.
struct SingleThreshold {
  std::int64_t c = 1;
  std::int64_t first_eligible = 1;
};

/// Once a fraction fractions[d-1] of the pool has been seen, candidates of
/// relative rank <= d become acceptable.
struct StageThresholds {
  std::vector<double> fractions;
};

/// Per-position cutoffs. cutoffs[i-1] applies to the i-th interview; an
/// applicant is accepted when its value exceeds the cutoff (and, when
/// candidate_only is set, it is the best so far).
struct ValueCutoffs {
  std::vector<double> cutoffs;
  bool candidate_only = false;
};

/// Time-invariant acceptance level for the unbounded horizon.
struct ReservationValue {
  double gamma = 0.0;
  bool degenerate = false;  // cost > 1/2: accept the first offer
};

using Policy = std::variant<SingleThreshold, StageThresholds, ValueCutoffs, ReservationValue>;

inline void validate(const StageThresholds& st) {
  if (st.fractions.empty())
    throw std::invalid_argument("stage thresholds: empty");
  double prev = 0.0;
  for (double f : st.fractions) {
    if (!(f > prev && f <= 1.0))
      throw std::invalid_argument("stage thresholds must be strictly increasing in (0, 1]");
    prev = f;
  }
}

}  // namespace stopdur
