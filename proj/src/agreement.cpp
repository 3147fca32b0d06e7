#include "scghr/agreement.hpp"

#include <cmath>

#include <fmt/format.h>

namespace scghr {

AgreementReport bland_altman(std::vector<AgreementPair> pairs, double multiplier) {
  if (pairs.size() < 2)
    throw NoDataError(fmt::format("Bland-Altman needs at least 2 pairs, got {}", pairs.size()));
  if (!(multiplier > 0.0) || !std::isfinite(multiplier))
    throw std::invalid_argument("Bland-Altman multiplier must be positive");

  const auto n = static_cast<double>(pairs.size());
  double sum = 0.0;
  for (const auto& p : pairs) sum += p.hr_a_bpm - p.hr_b_bpm;
  const double bias = sum / n;
  double ss = 0.0;
  for (const auto& p : pairs) {
    const double d = p.hr_a_bpm - p.hr_b_bpm - bias;
    ss += d * d;
  }
  const double sd = std::sqrt(ss / (n - 1.0));

  AgreementReport r;
  r.pairs = std::move(pairs);
  r.bias_bpm = bias;
  r.sd_bpm = sd;
  r.multiplier = multiplier;
  r.loa_low_bpm = bias - multiplier * sd;
  r.loa_high_bpm = bias + multiplier * sd;
  return r;
}

double ecg_combined_hr(const std::vector<BeatEvent>& ecg_events, const LungVolume& lv,
                       const GateConfig& cfg) {
  const auto groups = classify_events(ecg_events, lv, cfg);
  return combined_hr(pairwise_hr(groups.llv, cfg), pairwise_hr(groups.hlv, cfg));
}

double ecg_all_pairs_hr(const std::vector<BeatEvent>& ecg_events) {
  if (ecg_events.size() < 2) throw NoDataError("all-pairs ECG HR needs at least 2 R-peaks");
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < ecg_events.size(); ++i)
    sum += 60.0 / (ecg_events[i + 1].time - ecg_events[i].time);
  return sum / static_cast<double>(ecg_events.size() - 1);
}

}  // namespace scghr
