#include <catch2/catch_amalgamated.hpp>

#include "support/synth.hpp"
#include "vira/audio/features.hpp"
#include "vira/audio/pitch.hpp"

using namespace vira;
using Catch::Approx;

namespace {
constexpr int kRate = 16000;
}

TEST_CASE("estimate_pitch finds pure-tone F0", "[audio]") {
  audio::FeatureConfig cfg;

  SECTION("220 Hz sine within 2%") {
    auto pcm = synth::sine(220.0, 0.064, kRate);
    auto est = audio::estimate_pitch(pcm, kRate, cfg);
    REQUIRE(est.has_value());
    CHECK(est->f0_hz == Approx(220.0).epsilon(0.02));
    CHECK(est->strength > 0.9);
  }

  SECTION("white noise is unvoiced") {
    auto pcm = synth::noise(0.064, kRate, 0.3, 42);
    CHECK_FALSE(audio::estimate_pitch(pcm, kRate, cfg).has_value());
  }

  SECTION("digital silence is unvoiced") {
    auto pcm = synth::silence(0.064, kRate);
    CHECK_FALSE(audio::estimate_pitch(pcm, kRate, cfg).has_value());
  }
}

TEST_CASE("pulse train resolves to the true period, not an octave error", "[audio]") {
  audio::FeatureConfig cfg;
  auto pcm = synth::pulse_train(100.0, 0.128, kRate);
  auto est = audio::estimate_pitch(pcm, kRate, cfg);
  REQUIRE(est.has_value());
  CHECK(est->f0_hz == Approx(100.0).epsilon(0.02));
  // explicitly not the 200 Hz octave error
  CHECK(std::abs(est->f0_hz - 200.0) > 50.0);
  // and not the 50 Hz subharmonic either
  CHECK(std::abs(est->f0_hz - 50.0) > 25.0);
}

TEST_CASE("pitch accuracy across the speech F0 range", "[audio]") {
  // >= 95% of voiced frames within +/-2% at each frequency
  audio::FeatureConfig cfg;
  for (double f0 : {80.0, 120.0, 180.0, 250.0, 350.0}) {
    auto pcm = synth::sine(f0, 2.0, kRate, 0.5);
    auto features = audio::extract_frame_features(pcm, kRate, cfg);
    int voiced = 0, accurate = 0;
    for (const auto& f : features) {
      if (!f.voiced) continue;
      ++voiced;
      if (std::abs(*f.f0_hz - f0) <= 0.02 * f0) ++accurate;
    }
    INFO("f0 = " << f0);
    REQUIRE(voiced > 100);
    CHECK(static_cast<double>(accurate) / voiced >= 0.95);
  }
}

TEST_CASE("compute_hnr follows the autocorrelation formula", "[audio]") {
  audio::FeatureConfig cfg;

  SECTION("pure sine hits the 40 dB cap") {
    auto pcm = synth::sine(200.0, 0.064, kRate);
    CHECK(audio::compute_hnr(pcm, kRate, 200.0) == Approx(40.0));
  }

  SECTION("sine plus equal-power noise sits near 0 dB") {
    const double amp = 0.5;
    auto tone = synth::sine(200.0, 0.128, kRate, amp);
    auto hiss = synth::noise(0.128, kRate, amp / std::sqrt(2.0), 7);
    auto pcm = synth::mix(tone, hiss);
    CHECK(audio::compute_hnr(pcm, kRate, 200.0) == Approx(0.0).margin(1.5));
  }

  SECTION("r = 0.9 evaluates to about 9.54 dB") {
    // direct formula check: 10*log10(0.9/0.1)
    CHECK(10.0 * std::log10(0.9 / 0.1) == Approx(9.5424).margin(0.001));
  }

  SECTION("unvoiced call is a domain error") {
    auto pcm = synth::noise(0.064, kRate, 0.3, 9);
    CHECK_THROWS_AS(audio::compute_hnr(pcm, kRate, 0.0), std::domain_error);
  }
}

TEST_CASE("HNR never decreases as added noise shrinks", "[audio]") {
  const double amp = 0.5;
  auto tone = synth::sine(180.0, 0.128, kRate, amp);
  auto hiss = synth::noise(0.128, kRate, amp, 11);  // shared realization, scaled down

  double previous = -1.0;
  for (double factor : {1.0, 0.5, 0.25, 0.1, 0.01, 0.001}) {
    auto scaled = std::vector<float>(hiss);
    synth::scale(scaled, factor);
    auto pcm = synth::mix(tone, scaled);
    const double hnr = audio::compute_hnr(pcm, kRate, 180.0);
    CHECK(hnr >= previous);
    previous = hnr;
  }
  CHECK(previous >= 39.0);  // nearly clean tone reaches the cap
}
