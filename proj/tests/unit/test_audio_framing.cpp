#include <catch2/catch_amalgamated.hpp>

#include "support/synth.hpp"
#include "support/tmpdir.hpp"
#include "vira/audio/framing.hpp"
#include "vira/audio/wav.hpp"

using namespace vira;
using Catch::Approx;

TEST_CASE("frame_stream tiles with configured window and hop", "[audio]") {
  audio::FeatureConfig cfg;
  const int rate = 16000;

  SECTION("1 s of audio at 32/16 ms gives 61 frames") {
    auto pcm = synth::sine(200.0, 1.0, rate);
    auto frames = audio::frame_stream(pcm, rate, cfg);
    REQUIRE(frames.size() == 61);  // floor((1000-32)/16)+1
    CHECK(frames.front().start_time == Approx(0.0));
    CHECK(frames[1].start_time == Approx(0.016));
    CHECK(frames.back().start_time == Approx(0.960));
    for (const auto& f : frames) CHECK(f.samples.size() == 512);
  }

  SECTION("input shorter than one window gives no frames") {
    auto pcm = synth::sine(200.0, 0.010, rate);
    CHECK(audio::frame_stream(pcm, rate, cfg).empty());
  }

  SECTION("empty input gives no frames") {
    CHECK(audio::frame_stream({}, rate, cfg).empty());
  }

  SECTION("unsupported sample rate is a configuration error") {
    auto pcm = synth::sine(200.0, 0.1, 4000);
    CHECK_THROWS_AS(audio::frame_stream(pcm, 4000, cfg), ConfigError);
    CHECK_THROWS_AS(audio::frame_stream(pcm, 96000, cfg), ConfigError);
  }
}

TEST_CASE("WAV round trip and channel/rate validation", "[audio]") {
  testsupport::TmpDir tmp("wav");

  SECTION("mono 16-bit round trips") {
    auto pcm = synth::sine(220.0, 0.25, 16000, 0.4);
    audio::write_wav(tmp.file("mono.wav"), pcm, 16000);
    auto wav = audio::read_wav(tmp.file("mono.wav"));
    REQUIRE(wav.sample_rate == 16000);
    REQUIRE(wav.samples.size() == pcm.size());
    for (size_t i = 0; i < pcm.size(); i += 97) {
      CHECK(wav.samples[i] == Approx(pcm[i]).margin(1.0 / 32768.0 + 1e-6));
    }
  }

  SECTION("stereo input is a configuration error") {
    auto pcm = synth::sine(220.0, 0.1, 16000, 0.4);  // written as interleaved 2ch
    audio::write_wav(tmp.file("stereo.wav"), pcm, 16000, /*channels=*/2);
    CHECK_THROWS_AS(audio::read_wav(tmp.file("stereo.wav")), ConfigError);
  }

  SECTION("out-of-range sample rate is a configuration error") {
    auto pcm = synth::sine(220.0, 0.1, 16000, 0.4);
    audio::write_wav(tmp.file("slow.wav"), pcm, 4000);
    CHECK_THROWS_AS(audio::read_wav(tmp.file("slow.wav")), ConfigError);
  }

  SECTION("missing file is an I/O error") {
    CHECK_THROWS_AS(audio::read_wav(tmp.file("nope.wav")), IoError);
  }
}

TEST_CASE("linear resampler preserves duration and low-frequency content", "[audio]") {
  auto pcm = synth::sine(200.0, 0.5, 48000, 0.5);
  auto down = audio::resample_linear(pcm, 48000, 16000);
  REQUIRE(down.size() == Approx(pcm.size() / 3.0).epsilon(0.01));
  // the resampled tone keeps its period: count zero crossings
  size_t crossings = 0;
  for (size_t i = 1; i < down.size(); ++i) {
    if ((down[i - 1] >= 0.0f) != (down[i] >= 0.0f)) ++crossings;
  }
  CHECK(crossings == Approx(200 * 0.5 * 2).margin(3));
}
