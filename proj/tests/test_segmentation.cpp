#include <doctest.h>

#include <random>

#include "penair/error.hpp"
#include "penair/segmentation.hpp"
#include "penair/synth.hpp"

using namespace penair;

namespace {

SampleStream stream_from(const std::vector<Tick>& t, const std::vector<int>& status) {
  std::vector<Sample> rows;
  for (std::size_t i = 0; i < t.size(); ++i) {
    rows.push_back({0, 0, t[i], status[i] ? PenStatus::OnSurface : PenStatus::InAir, 0, 0,
                    status[i] ? 100 : 0});
  }
  return SampleStream(rows);
}

SampleStream regular(std::size_t n, Tick period, int status) {
  std::vector<Tick> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<Tick>(i) * period;
  return stream_from(t, std::vector<int>(n, status));
}

SampleStream from_diffs(const std::vector<Tick>& diffs) {
  std::vector<Tick> t{0};
  for (Tick d : diffs) t.push_back(t.back() + d);
  return stream_from(t, std::vector<int>(t.size(), 1));
}

}  // namespace

TEST_CASE("nominal period is the modal difference") {
  CHECK(nominal_period(from_diffs({2, 2, 2, 2})) == 2);
  CHECK(nominal_period(from_diffs({2, 2, 2, 150, 2})) == 2);
  CHECK(nominal_period(from_diffs({3, 3, 2, 2})) == 2);
  CHECK(nominal_period(from_diffs({2, 2, 3, 3})) == 2);
  CHECK(nominal_period(from_diffs({7})) == 7);
}

TEST_CASE("nominal period needs two samples") {
  CHECK_THROWS_AS(nominal_period(regular(1, 2, 1)), Error);
  CHECK_THROWS_AS(detect_gaps(regular(1, 2, 1)), Error);
}

TEST_CASE("gap threshold") {
  CHECK(gap_threshold(2, {}) == 6);
  CHECK(gap_threshold(1, {1.5, {}}) == 2);  // period + 1 beats 1.5
  CHECK(gap_threshold(2, {2.5, {}}) == 5);
  CHECK(gap_threshold(2, {3.0, 20}) == 20);
  CHECK_THROWS_AS(gap_threshold(2, {1.0, {}}), Error);
}

TEST_CASE("detect_gaps") {
  CHECK(detect_gaps(regular(50, 2, 1)).empty());

  const auto gaps = detect_gaps(from_diffs({2, 2, 2, 14, 2, 2}));
  REQUIRE(gaps.size() == 1);
  CHECK(gaps[0] == Gap{3, 14});

  // exactly the threshold is not a gap
  CHECK(detect_gaps(from_diffs({2, 2, 2, 6, 2, 2})).empty());
  CHECK(detect_gaps(from_diffs({2, 2, 2, 7, 2, 2})).size() == 1);
}

TEST_CASE("detect_gaps finds the 11 injected gaps of a synthetic session") {
  synth::SynthSpec spec;
  spec.nominal_period = 2;
  spec.jitter = 1;
  spec.seed = 4;
  for (int i = 0; i < 11; ++i) {
    spec.plan.push_back({StrokeClass::OnSurface, 80 + 7 * i});
    spec.plan.push_back({StrokeClass::InAirLong, 30 + 11 * i});
  }
  spec.plan.push_back({StrokeClass::OnSurface, 90});
  const auto session = synth::generate_session(spec);
  const auto gaps = detect_gaps(session.stream);
  CHECK(gaps.size() == 11);
  CHECK(session.truth.count[StrokeClass::InAirLong] == 11);
}

TEST_CASE("all on-surface, constant period") {
  const auto seg = segment(regular(100, 2, 1));
  REQUIRE(seg.strokes.size() == 1);
  CHECK(seg.strokes[0].cls == StrokeClass::OnSurface);
  CHECK(seg.strokes[0].duration() == 99 * 2);
  CHECK(seg.strokes[0].samples == SampleRange{0, 100});
  CHECK(seg.count[StrokeClass::InAirShort] == 0);
  CHECK(seg.count[StrokeClass::InAirLong] == 0);
  CHECK(seg.time[StrokeClass::OnSurface] == 198);
}

TEST_CASE("run-length partition of statuses 1,1,0,0,1") {
  const auto seg = segment(stream_from({0, 2, 4, 6, 8}, {1, 1, 0, 0, 1}));
  REQUIRE(seg.strokes.size() == 3);
  CHECK(seg.strokes[0] == Stroke{StrokeClass::OnSurface, 0, 4, {0, 3}});
  CHECK(seg.strokes[1] == Stroke{StrokeClass::InAirShort, 4, 8, {2, 5}});
  CHECK(seg.strokes[2] == Stroke{StrokeClass::OnSurface, 8, 8, {4, 5}});
  CHECK(seg.count[StrokeClass::OnSurface] == 2);
  CHECK(seg.count[StrokeClass::InAirShort] == 1);
  CHECK(seg.count[StrokeClass::InAirLong] == 0);
}

TEST_CASE("a gap inside an in-air run splits it") {
  // ten in-air samples with a jump between the 5th and 6th
  std::vector<Tick> t{0, 2, 4, 6, 8, 10, 12, 14};  // on-surface lead-in
  std::vector<int> st(8, 1);
  Tick now = 16;
  for (int i = 0; i < 10; ++i) {
    t.push_back(now);
    st.push_back(0);
    now += i == 4 ? 60 : 2;
  }
  t.push_back(now);
  st.push_back(1);
  const auto seg = segment(stream_from(t, st));
  CHECK(seg.count[StrokeClass::InAirShort] == 2);
  CHECK(seg.count[StrokeClass::InAirLong] == 1);
  CHECK(seg.count[StrokeClass::OnSurface] == 2);
  CHECK(seg.time[StrokeClass::InAirLong] == 60);
  const auto& gap = seg.strokes[2];
  CHECK(gap.cls == StrokeClass::InAirLong);
  CHECK(gap.samples.empty());
}

TEST_CASE("single-sample stream") {
  const auto seg = segment(regular(1, 2, 0));
  REQUIRE(seg.strokes.size() == 1);
  CHECK(seg.strokes[0].cls == StrokeClass::InAirShort);
  CHECK(seg.strokes[0].duration() == 0);
  CHECK(seg.count[StrokeClass::InAirShort] == 1);
  CHECK(seg.nominal_period == 0);
}

TEST_CASE("a lone sample next to a gap is a zero-length stroke") {
  // in-air, in-air, on-surface, <gap>, on-surface, on-surface
  const auto seg = segment(stream_from({0, 2, 4, 80, 82, 84}, {0, 0, 1, 1, 1, 1}));
  REQUIRE(seg.strokes.size() == 4);
  CHECK(seg.strokes[0] == Stroke{StrokeClass::InAirShort, 0, 4, {0, 3}});
  CHECK(seg.strokes[1] == Stroke{StrokeClass::OnSurface, 4, 4, {2, 3}});
  CHECK(seg.strokes[2] == Stroke{StrokeClass::InAirLong, 4, 80, {}});
  CHECK(seg.strokes[3] == Stroke{StrokeClass::OnSurface, 80, 84, {3, 6}});
  CHECK(seg.count[StrokeClass::OnSurface] == 2);

  // a gap as the very first interval
  const auto lead = segment(stream_from({0, 90, 92, 94}, {0, 1, 1, 1}));
  REQUIRE(lead.strokes.size() == 3);
  CHECK(lead.strokes[0] == Stroke{StrokeClass::InAirShort, 0, 0, {0, 1}});
  CHECK(lead.strokes[1].cls == StrokeClass::InAirLong);
}

TEST_CASE("adjacent gaps are separate strokes") {
  const auto seg = segment(from_diffs({2, 2, 2, 2, 2, 40, 50, 2, 2, 2}));
  CHECK(seg.count[StrokeClass::InAirLong] == 2);
  CHECK(seg.time[StrokeClass::InAirLong] == 90);
}

TEST_CASE("properties over random streams") {
  std::mt19937_64 rng(77);
  for (int round = 0; round < 300; ++round) {
    std::vector<Tick> t;
    std::vector<int> st;
    Tick now = static_cast<Tick>(rng() % 50);
    const std::size_t n = 1 + rng() % 400;
    int status = static_cast<int>(rng() % 2);
    for (std::size_t i = 0; i < n; ++i) {
      t.push_back(now);
      if (rng() % 10 == 0) status ^= 1;
      st.push_back(status);
      now += rng() % 25 == 0 ? 20 + static_cast<Tick>(rng() % 300) : 2 + static_cast<Tick>(rng() % 2);
    }
    const auto stream = stream_from(t, st);
    const auto seg = segment(stream);

    // tiling
    Tick total = 0;
    for (StrokeClass c : kStrokeClasses) total += seg.time[c];
    CHECK(total == stream.last_t() - stream.first_t());
    REQUIRE(!seg.strokes.empty());
    CHECK(seg.strokes.front().start_t == stream.first_t());
    CHECK(seg.strokes.back().end_t == stream.last_t());
    for (std::size_t i = 1; i < seg.strokes.size(); ++i) {
      CHECK(seg.strokes[i].start_t == seg.strokes[i - 1].end_t);
    }

    // counts agree with the stroke list and with gap detection
    PerClass<std::size_t> counted;
    for (const auto& s : seg.strokes) counted[s.cls] += 1;
    CHECK(counted == seg.count);
    if (stream.size() >= 2) CHECK(seg.count[StrokeClass::InAirLong] == detect_gaps(stream).size());

    // determinism
    const auto again = segment(stream);
    CHECK(again.strokes == seg.strokes);
  }
}
