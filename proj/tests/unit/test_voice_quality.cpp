#include <catch2/catch_amalgamated.hpp>

#include "support/synth.hpp"
#include "vira/audio/voice_quality.hpp"

using namespace vira;
using Catch::Approx;

namespace {
constexpr int kRate = 16000;

audio::VoicedSegment segment_with_periods(std::vector<double> periods,
                                          std::vector<double> amps) {
  audio::VoicedSegment seg;
  seg.period_sequence = std::move(periods);
  seg.peak_amplitudes = std::move(amps);
  return seg;
}
}  // namespace

TEST_CASE("voiced segment extraction", "[audio]") {
  audio::FeatureConfig cfg;

  SECTION("fully unvoiced input yields no segments") {
    auto pcm = synth::noise(1.0, kRate, 0.2, 3);
    auto features = audio::extract_frame_features(pcm, kRate, cfg);
    CHECK(audio::extract_voiced_segments(features, pcm, kRate, cfg).empty());
  }

  SECTION("1 s of 150 Hz voicing gives one segment with ~150 periods") {
    auto pcm = synth::sine(150.0, 1.0, kRate, 0.5);
    auto features = audio::extract_frame_features(pcm, kRate, cfg);
    auto segments = audio::extract_voiced_segments(features, pcm, kRate, cfg);
    REQUIRE(segments.size() == 1);
    CHECK(segments[0].period_sequence.size() == Approx(150).margin(8));
    for (double p : segments[0].period_sequence) {
      CHECK(p >= 1.0 / cfg.f0_max_hz);
      CHECK(p <= 1.0 / cfg.f0_min_hz);
      CHECK(p == Approx(1.0 / 150.0).epsilon(0.1));
    }
  }

  SECTION("voiced-silence-voiced gives two segments") {
    auto pcm = synth::concat({std::span<const float>(synth::sine(150.0, 0.6, kRate)),
                              std::span<const float>(synth::silence(0.5, kRate)),
                              std::span<const float>(synth::sine(150.0, 0.6, kRate))});
    auto features = audio::extract_frame_features(pcm, kRate, cfg);
    auto segments = audio::extract_voiced_segments(features, pcm, kRate, cfg);
    REQUIRE(segments.size() == 2);
    CHECK(segments[0].end < segments[1].start);
  }
}

TEST_CASE("jitter on constructed period sequences", "[audio]") {
  SECTION("perfectly periodic segment has zero jitter") {
    auto seg = segment_with_periods({0.01, 0.01, 0.01, 0.01}, {1, 1, 1, 1, 1});
    REQUIRE(audio::compute_jitter(seg).has_value());
    CHECK(*audio::compute_jitter(seg) == Approx(0.0));
  }

  SECTION("alternating 10 / 10.2 ms periods: 0.2/10.1") {
    auto seg = segment_with_periods({0.010, 0.0102, 0.010, 0.0102}, {1, 1, 1, 1, 1});
    REQUIRE(audio::compute_jitter(seg).has_value());
    CHECK(*audio::compute_jitter(seg) == Approx(0.0002 / 0.0101).epsilon(1e-6));
  }

  SECTION("two periods are not enough") {
    auto seg = segment_with_periods({0.01, 0.0102}, {1, 1, 1});
    CHECK_FALSE(audio::compute_jitter(seg).has_value());
  }
}

TEST_CASE("shimmer on constructed amplitude sequences", "[audio]") {
  SECTION("constant amplitudes have zero shimmer") {
    auto seg = segment_with_periods({0.01, 0.01, 0.01}, {0.7, 0.7, 0.7, 0.7});
    REQUIRE(audio::compute_shimmer(seg).has_value());
    CHECK(*audio::compute_shimmer(seg) == Approx(0.0));
  }

  SECTION("amplitudes alternating 1.0 / 0.8: 0.2/0.9") {
    auto seg = segment_with_periods({0.01, 0.01, 0.01}, {1.0, 0.8, 1.0, 0.8});
    REQUIRE(audio::compute_shimmer(seg).has_value());
    CHECK(*audio::compute_shimmer(seg) == Approx(0.2 / 0.9).epsilon(1e-6));
  }

  SECTION("all-zero amplitudes are degenerate") {
    auto seg = segment_with_periods({0.01, 0.01, 0.01}, {0, 0, 0, 0});
    CHECK_FALSE(audio::compute_shimmer(seg).has_value());
  }
}

TEST_CASE("jitter and shimmer are scale invariant", "[audio]") {
  audio::FeatureConfig cfg;
  auto pcm = synth::am_tone(150.0, 2.0, 1.0, kRate, 0.5, 0.35);
  auto features = audio::extract_frame_features(pcm, kRate, cfg);
  auto segments = audio::extract_voiced_segments(features, pcm, kRate, cfg);
  REQUIRE_FALSE(segments.empty());
  const auto jitter = audio::compute_jitter(segments[0]);
  const auto shimmer = audio::compute_shimmer(segments[0]);
  REQUIRE(jitter.has_value());
  REQUIRE(shimmer.has_value());

  auto scaled = std::vector<float>(pcm);
  synth::scale(scaled, 0.25);
  auto features2 = audio::extract_frame_features(scaled, kRate, cfg);
  auto segments2 = audio::extract_voiced_segments(features2, scaled, kRate, cfg);
  REQUIRE_FALSE(segments2.empty());
  CHECK(*audio::compute_jitter(segments2[0]) == Approx(*jitter).margin(1e-9));
  CHECK(*audio::compute_shimmer(segments2[0]) == Approx(*shimmer).margin(1e-9));
}

TEST_CASE("voice break counting distinguishes breaks from pauses", "[audio]") {
  audio::FeatureConfig cfg;

  auto make_segment = [](double start, double end) {
    audio::VoicedSegment s;
    s.start = start;
    s.end = end;
    return s;
  };

  SECTION("one unbroken segment has no breaks") {
    std::vector<audio::VoicedSegment> segs = {make_segment(0.0, 2.0)};
    auto stats = audio::count_voice_breaks(segs, 2.0, cfg);
    CHECK(stats.count == 0);
    CHECK(stats.fraction == Approx(0.0));
  }

  SECTION("a 0.1 s gap is a break") {
    std::vector<audio::VoicedSegment> segs = {make_segment(0.0, 1.0), make_segment(1.1, 2.1)};
    auto stats = audio::count_voice_breaks(segs, 2.1, cfg);
    CHECK(stats.count == 1);
    CHECK(stats.fraction == Approx(0.1 / 2.0).epsilon(0.01));
  }

  SECTION("a 1 s gap is a pause, not a break") {
    std::vector<audio::VoicedSegment> segs = {make_segment(0.0, 1.0), make_segment(2.0, 3.0)};
    auto stats = audio::count_voice_breaks(segs, 3.0, cfg);
    CHECK(stats.count == 0);
  }
}
