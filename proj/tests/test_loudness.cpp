#include <cmath>
#include <random>

#include "doctest.h"

#include "wordalign/loudness.hpp"

using namespace wordalign;

namespace {

std::vector<float> sine(double amplitude, double freq_hz, int rate, double seconds) {
  auto n = static_cast<std::size_t>(rate * seconds);
  std::vector<float> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = static_cast<float>(amplitude * std::sin(2.0 * M_PI * freq_hz * i / rate));
  }
  return v;
}

}  // namespace

TEST_CASE("rms of canonical signals") {
  CHECK(!rms_dbfs(std::vector<float>(100, 0.0f)).has_value());  // silent

  std::vector<float> square(100);
  for (std::size_t i = 0; i < square.size(); ++i) square[i] = i % 2 ? 1.0f : -1.0f;
  auto db = rms_dbfs(square);
  REQUIRE(db.has_value());
  CHECK(*db == doctest::Approx(0.0).epsilon(1e-9));

  // Full-scale sine over whole periods: RMS 1/sqrt(2) -> -3.0103 dBFS.
  auto sine_db = rms_dbfs(sine(1.0, 100.0, 16000, 1.0));
  REQUIRE(sine_db.has_value());
  CHECK(*sine_db == doctest::Approx(-3.0103).epsilon(0.003));

  CHECK_THROWS_AS(rms_dbfs(std::vector<float>{}), RangeError);
}

TEST_CASE("halving amplitude drops rms by 6.02 dB") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<float> noise(-0.8f, 0.8f);
  std::vector<float> a(4096), b(4096);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = noise(rng);
    b[i] = a[i] * 0.5f;
  }
  auto da = rms_dbfs(a);
  auto db = rms_dbfs(b);
  REQUIRE(da.has_value());
  REQUIRE(db.has_value());
  CHECK(*db - *da == doctest::Approx(20.0 * std::log10(0.5)).epsilon(1e-6));
}

TEST_CASE("style scale interpolates and clamps") {
  LoudnessMap map;  // defaults -40,-10 -> 0.8,1.6
  CHECK(style_scale(-10.0, map) == 1.6);
  CHECK(style_scale(-40.0, map) == 0.8);
  CHECK(style_scale(-25.0, map) == doctest::Approx(1.2).epsilon(1e-12));
  CHECK(style_scale(0.0, map) == 1.6);     // clamp high
  CHECK(style_scale(-80.0, map) == 0.8);   // clamp low
  CHECK(style_scale(std::nullopt, map) == 0.8);
}

TEST_CASE("style scale is monotone in loudness") {
  LoudnessMap map;
  double prev = 0.0;
  for (int db = -60; db <= 0; ++db) {
    double s = style_scale(static_cast<double>(db), map);
    CHECK(s >= prev);
    CHECK(s >= map.lo_scale);
    CHECK(s <= map.hi_scale);
    prev = s;
  }
}

TEST_CASE("invalid loudness maps are rejected") {
  LoudnessMap bad;
  bad.lo_db = -10.0;
  bad.hi_db = -10.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = LoudnessMap{};
  bad.lo_scale = 0.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = LoudnessMap{};
  bad.lo_scale = 1.6;
  bad.hi_scale = 0.8;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("decorate scores the word's span") {
  LoudnessMap map;
  AudioStore store(16000);

  // 0.5 s silence, then 0.5 s of calibrated uniform noise at -25 dBFS:
  // uniform noise in [-a, a] has RMS a/sqrt(3).
  double target_rms = std::pow(10.0, -25.0 / 20.0);
  double amplitude = target_rms * std::sqrt(3.0);
  std::mt19937 rng(29);
  std::uniform_real_distribution<float> noise(static_cast<float>(-amplitude),
                                              static_cast<float>(amplitude));
  std::vector<float> samples(16000, 0.0f);
  for (std::size_t i = 8000; i < samples.size(); ++i) samples[i] = noise(rng);
  store.append(samples);

  // Independent check of the generated noise level.
  double sum_sq = 0.0;
  for (std::size_t i = 8000; i < samples.size(); ++i) {
    sum_sq += static_cast<double>(samples[i]) * samples[i];
  }
  double measured_db = 20.0 * std::log10(std::sqrt(sum_sq / 8000.0));
  REQUIRE(measured_db == doctest::Approx(-25.0).epsilon(0.02));

  WordSegment silent_word;
  silent_word.word = "quiet";
  silent_word.start_s = 0.0;
  silent_word.end_s = 0.5;
  auto decorated = decorate(silent_word, store, map);
  CHECK(!decorated.loudness_dbfs.has_value());
  CHECK(decorated.style_scale == map.lo_scale);
  CHECK(decorated.word == "quiet");
  CHECK(decorated.start_s == 0.0);
  CHECK(decorated.end_s == 0.5);

  WordSegment noisy_word;
  noisy_word.word = "loud";
  noisy_word.start_s = 0.5;
  noisy_word.end_s = 1.0;
  decorated = decorate(noisy_word, store, map);
  REQUIRE(decorated.loudness_dbfs.has_value());
  CHECK(*decorated.loudness_dbfs == doctest::Approx(-25.0).epsilon(0.02));
  CHECK(decorated.style_scale == doctest::Approx(1.2).epsilon(0.05));

  WordSegment outside;
  outside.word = "late";
  outside.start_s = 0.9;
  outside.end_s = 1.4;
  CHECK_THROWS_AS(decorate(outside, store, map), RangeError);
}
