#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "vira/audio/framing.hpp"
#include "vira/core.hpp"

namespace vira::audio {

struct PitchEstimate {
  double f0_hz = 0.0;
  double strength = 0.0;  // normalized autocorrelation at the chosen lag, in [0,1]
};

namespace detail {

/// Normalized cross-correlation r(lag) = sum(x[n]·x[n+lag]) / sqrt(E0·E1)
/// over the overlapping region. Robust against window tapering, unlike the
/// biased r(lag)/r(0) form.
class Autocorrelator {
 public:
  explicit Autocorrelator(std::span<const float> x) : x_(x.size()) {
    double mean = 0.0;
    for (float v : x) mean += v;
    mean = x.empty() ? 0.0 : mean / static_cast<double>(x.size());
    for (size_t i = 0; i < x.size(); ++i) x_[i] = static_cast<double>(x[i]) - mean;
    sq_prefix_.resize(x_.size() + 1, 0.0);
    for (size_t i = 0; i < x_.size(); ++i) sq_prefix_[i + 1] = sq_prefix_[i] + x_[i] * x_[i];
  }

  size_t size() const { return x_.size(); }

  double at(int lag) const {
    const size_t n = x_.size();
    if (lag <= 0 || static_cast<size_t>(lag) >= n) return 0.0;
    const size_t m = n - static_cast<size_t>(lag);
    double num = 0.0;
    for (size_t i = 0; i < m; ++i) num += x_[i] * x_[i + lag];
    const double e0 = sq_prefix_[m] - sq_prefix_[0];
    const double e1 = sq_prefix_[n] - sq_prefix_[lag];
    const double denom = std::sqrt(e0 * e1);
    if (denom <= 1e-12) return 0.0;
    return num / denom;
  }

 private:
  std::vector<double> x_;
  std::vector<double> sq_prefix_;
};

/// Parabolic refinement of a sampled peak; returns (lag offset, value).
inline std::pair<double, double> refine_peak(double rm1, double r0, double rp1) {
  const double denom = rm1 - 2.0 * r0 + rp1;
  if (std::abs(denom) < 1e-12) return {0.0, r0};
  double d = 0.5 * (rm1 - rp1) / denom;
  d = std::clamp(d, -0.5, 0.5);
  const double v = r0 - 0.25 * (rm1 - rp1) * d;
  return {d, v};
}

}  // namespace detail

/// Autocorrelation F0 estimate over [f0_min, f0_max]. Returns nothing when
/// the strongest peak is below the voicing threshold.
///
/// Candidate peaks within 10% of the best one compete and the shortest lag
/// wins, which rejects the subharmonic (octave-down) errors a plain argmax
/// makes on pulse-like excitation.
inline std::optional<PitchEstimate> estimate_pitch(std::span<const float> frame, int sample_rate,
                                                   const FeatureConfig& cfg = {}) {
  if (frame.empty() || sample_rate <= 0) return std::nullopt;

  const int lag_min = std::max(2, static_cast<int>(std::floor(sample_rate / cfg.f0_max_hz)));
  int lag_max = static_cast<int>(std::ceil(sample_rate / cfg.f0_min_hz));
  lag_max = std::min<int>(lag_max, static_cast<int>(frame.size()) - lag_min);
  if (lag_max <= lag_min) return std::nullopt;

  detail::Autocorrelator ac(frame);
  std::vector<double> r(static_cast<size_t>(lag_max) + 1, 0.0);
  for (int lag = lag_min; lag <= lag_max; ++lag) r[static_cast<size_t>(lag)] = ac.at(lag);

  double best = 0.0;
  for (int lag = lag_min; lag <= lag_max; ++lag) best = std::max(best, r[static_cast<size_t>(lag)]);
  if (best < cfg.voicing_threshold) return std::nullopt;

  // Shortest local maximum within 10% of the global one.
  int chosen = -1;
  for (int lag = lag_min; lag <= lag_max; ++lag) {
    const double v = r[static_cast<size_t>(lag)];
    const double left = lag > lag_min ? r[static_cast<size_t>(lag) - 1] : -1.0;
    const double right = lag < lag_max ? r[static_cast<size_t>(lag) + 1] : -1.0;
    const bool local_max = v >= left && v > right;
    if (local_max && v >= 0.9 * best && v >= cfg.voicing_threshold) {
      chosen = lag;
      break;
    }
  }
  if (chosen < 0) return std::nullopt;

  double lag_f = chosen;
  double strength = r[static_cast<size_t>(chosen)];
  if (chosen > lag_min && chosen < lag_max) {
    auto [d, v] = detail::refine_peak(r[static_cast<size_t>(chosen) - 1],
                                      r[static_cast<size_t>(chosen)],
                                      r[static_cast<size_t>(chosen) + 1]);
    lag_f += d;
    strength = v;
  }

  PitchEstimate est;
  est.f0_hz = std::clamp(sample_rate / lag_f, cfg.f0_min_hz, cfg.f0_max_hz);
  est.strength = clamp01(strength);
  return est;
}

/// Harmonics-to-noise ratio 10·log10(r/(1-r)) from the normalized
/// autocorrelation r at the pitch period, capped to [0, 40] dB.
inline double compute_hnr(std::span<const float> frame, int sample_rate, double f0_hz) {
  if (!(f0_hz > 0.0) || !std::isfinite(f0_hz)) {
    throw std::domain_error("compute_hnr requires a voiced frame with a valid F0");
  }
  const int lag = static_cast<int>(std::lround(sample_rate / f0_hz));
  if (lag < 1 || static_cast<size_t>(lag) + 1 >= frame.size()) {
    throw std::domain_error("compute_hnr: frame too short for the pitch period");
  }
  detail::Autocorrelator ac(frame);
  double r = ac.at(lag);
  r = std::max(r, std::max(ac.at(lag - 1), ac.at(std::min<int>(lag + 1, static_cast<int>(frame.size()) - 1))));

  if (r >= 0.9999) return 40.0;
  if (r <= 0.0) return 0.0;
  return std::clamp(10.0 * std::log10(r / (1.0 - r)), 0.0, 40.0);
}

inline double compute_hnr(const AudioFrame& frame, double f0_hz) {
  return compute_hnr(frame.samples, frame.sample_rate, f0_hz);
}

}  // namespace vira::audio
