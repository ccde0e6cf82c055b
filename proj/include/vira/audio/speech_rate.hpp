#pragma once

#include <cmath>
#include <vector>

#include "vira/audio/features.hpp"

namespace vira::audio {

/// Alternating peak/valley counter with a prominence gate: a peak counts
/// once the smoothed energy has risen out of the last valley and fallen
/// back by at least `prominence_db`. Region edges act as deep valleys so
/// one sustained vowel yields exactly one nucleus.
class SyllablePeakCounter {
 public:
  explicit SyllablePeakCounter(double prominence_db) : prominence_(prominence_db) {}

  void feed(double energy_db) {
    if (rising_) {
      if (energy_db > extreme_) {
        extreme_ = energy_db;
        extreme_time_ = pending_time_;
      } else if (energy_db < extreme_ - prominence_) {
        ++count_;
        peak_times_.push_back(extreme_time_);
        rising_ = false;
        extreme_ = energy_db;
      }
    } else {
      if (energy_db < extreme_) {
        extreme_ = energy_db;
      } else if (energy_db > extreme_ + prominence_) {
        rising_ = true;
        extreme_ = energy_db;
        extreme_time_ = pending_time_;
      }
    }
  }

  void feed(double energy_db, double time) {
    pending_time_ = time;
    feed(energy_db);
  }

  void end_region() {
    feed(kEnergyFloorDb, pending_time_);
    rising_ = true;
    extreme_ = kEnergyFloorDb;
  }

  int count() const { return count_; }
  const std::vector<double>& peak_times() const { return peak_times_; }

 private:
  double prominence_;
  bool rising_ = true;
  double extreme_ = kEnergyFloorDb;
  double extreme_time_ = 0.0;
  double pending_time_ = 0.0;
  int count_ = 0;
  std::vector<double> peak_times_;
};

/// Times of syllable nuclei: prominent maxima of smoothed energy inside
/// voiced regions.
inline std::vector<double> syllable_peak_times(const std::vector<FrameFeatures>& features,
                                               const FeatureConfig& cfg = {}) {
  SyllablePeakCounter counter(cfg.syllable_prominence_db);
  // 3-frame moving average; short enough to keep fast syllables apart.
  std::vector<double> window;
  bool in_region = false;
  for (const auto& f : features) {
    if (f.voiced) {
      in_region = true;
      window.push_back(f.energy_db);
      if (window.size() > 3) window.erase(window.begin());
      double smoothed = 0.0;
      for (double v : window) smoothed += v;
      smoothed /= static_cast<double>(window.size());
      counter.feed(smoothed, f.time);
    } else if (in_region) {
      counter.end_region();
      window.clear();
      in_region = false;
    }
  }
  if (in_region) counter.end_region();
  return counter.peak_times();
}

/// Syllable nuclei per second over the given span.
inline double estimate_speech_rate(const std::vector<FrameFeatures>& features, double span_s,
                                   const FeatureConfig& cfg = {}) {
  if (span_s <= 0.0) return 0.0;
  return static_cast<double>(syllable_peak_times(features, cfg).size()) / span_s;
}

}  // namespace vira::audio
