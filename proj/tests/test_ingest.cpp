#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "penair/error.hpp"
#include "penair/ingest.hpp"
#include "penair/synth.hpp"

using namespace penair;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected penair::Error");
  return ErrorKind::Io;
}

std::size_t line_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("single 7-column row") {
  const auto parsed = parse_session("10 20 100 1 0 0 512");
  REQUIRE(parsed.stream.size() == 1);
  const Sample s = parsed.stream[0];
  CHECK(s.x == 10);
  CHECK(s.y == 20);
  CHECK(s.t == 100);
  CHECK(s.status == PenStatus::OnSurface);
  CHECK(s.pressure == 512);
  CHECK(parsed.warnings.empty());
}

TEST_CASE("4-column rows default the optional fields") {
  const auto parsed = parse_session("1 2 10 0\n3 4 12 1\n");
  REQUIRE(parsed.stream.size() == 2);
  CHECK(parsed.stream[1].status == PenStatus::OnSurface);
  CHECK(parsed.stream[1].azimuth == 0);
  CHECK(parsed.stream[1].altitude == 0);
  CHECK(parsed.stream[1].pressure == 0);
}

TEST_CASE("duplicate timestamp keeps the first row and warns") {
  const auto parsed = parse_session("1 1 100 1 0 0 5\n2 2 100 0 0 0 0\n");
  REQUIRE(parsed.stream.size() == 1);
  CHECK(parsed.stream[0].x == 1);
  CHECK(parsed.duplicates == 1);
  REQUIRE(parsed.warnings.size() == 1);
  CHECK(parsed.warnings[0].line == 2);
}

TEST_CASE("decreasing timestamp is an order error at its line") {
  const auto bad = [] { parse_session("1 1 100 1 0 0 5\n2 2 98 1 0 0 5\n"); };
  CHECK(kind_of(bad) == ErrorKind::Order);
  CHECK(line_of(bad) == 2);
}

TEST_CASE("malformed rows") {
  SUBCASE("non-integer field") {
    const auto bad = [] { parse_session("1 1 100 1 0 0 5\n1 x 102 1 0 0 5\n"); };
    CHECK(kind_of(bad) == ErrorKind::Parse);
    CHECK(line_of(bad) == 2);
  }
  SUBCASE("mixed widths are rejected") {
    CHECK(kind_of([] { parse_session("1 1 100 1 0 0 5\n1 1 102 1\n"); }) == ErrorKind::Parse);
    CHECK(kind_of([] { parse_session("1 1 100 1\n1 1 102 1 0 0 5\n"); }) == ErrorKind::Parse);
  }
  SUBCASE("3-column legacy row") {
    CHECK(kind_of([] { parse_session("1 1 100\n"); }) == ErrorKind::Parse);
    ParseOptions opts;
    opts.derive_status_from_pressure = true;
    CHECK(kind_of([&] { parse_session("1 1 100\n", opts); }) == ErrorKind::Parse);
  }
  SUBCASE("status outside {0,1}") {
    CHECK(kind_of([] { parse_session("1 1 100 2 0 0 5\n"); }) == ErrorKind::Parse);
  }
  SUBCASE("negative pressure") {
    CHECK(kind_of([] { parse_session("1 1 100 1 0 0 -5\n"); }) == ErrorKind::Parse);
  }
}

TEST_CASE("empty input") {
  CHECK(kind_of([] { parse_session(""); }) == ErrorKind::EmptyInput);
  CHECK(kind_of([] { parse_session("\n  \n\t\n"); }) == ErrorKind::EmptyInput);
}

TEST_CASE("CRLF, tabs, blank lines and the sample-count header") {
  const auto parsed = parse_session("2\r\n1\t2  10 1 0 0 9\r\n\r\n3 4\t12 0 0 0 0\r\n");
  REQUIRE(parsed.stream.size() == 2);
  CHECK(parsed.stream[1].t == 12);
}

TEST_CASE("status derived from pressure") {
  ParseOptions opts;
  opts.derive_status_from_pressure = true;
  const auto parsed = parse_session("1 1 10 0 0 0 300\n1 1 12 1 0 0 0\n", opts);
  CHECK(parsed.stream[0].status == PenStatus::OnSurface);
  CHECK(parsed.stream[1].status == PenStatus::InAir);
}

TEST_CASE("serialize then parse is the identity on collapsed streams") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 50; ++round) {
    std::vector<Sample> rows;
    Tick t = static_cast<Tick>(rng() % 100);
    const std::size_t n = 1 + rng() % 200;
    for (std::size_t i = 0; i < n; ++i) {
      t += 1 + static_cast<Tick>(rng() % 40);
      const bool down = rng() % 2 == 0;
      rows.push_back({static_cast<std::int64_t>(rng() % 20000) - 10000,
                      static_cast<std::int64_t>(rng() % 20000), t,
                      down ? PenStatus::OnSurface : PenStatus::InAir,
                      static_cast<std::int64_t>(rng() % 3600), static_cast<std::int64_t>(rng() % 900),
                      down ? static_cast<std::int64_t>(rng() % 1024) : 0});
    }
    const SampleStream stream(rows, "s");
    const auto again = parse_session(serialize_session(stream), ParseOptions{false, "s"});
    CHECK(again.stream == stream);
    CHECK(again.duplicates == 0);
  }
}

TEST_CASE("manifest loading") {
  SUBCASE("one data row, relative path resolved") {
    const auto m = load_manifest("path,database,task,subject,cohort\na/b.svc,db,spiral,s1,control\n",
                                 "/data/corpus");
    REQUIRE(m.records.size() == 1);
    CHECK(m.records[0].path == std::filesystem::path("/data/corpus/a/b.svc"));
    CHECK(m.records[0].cohort == "control");
  }
  SUBCASE("header only is an empty manifest") {
    CHECK(load_manifest("path,database,task,subject,cohort\n").records.empty());
  }
  SUBCASE("identical rows") {
    CHECK(kind_of([] {
            load_manifest("path,database,task,subject,cohort\nx.svc,d,t,s,c\nx.svc,d,t,s,c\n");
          }) == ErrorKind::Duplicate);
  }
  SUBCASE("same subject under two cohorts is still one key") {
    CHECK(kind_of([] {
            load_manifest("path,database,task,subject,cohort\nx.svc,d,t,s,c1\nx.svc,d,t,s,c2\n");
          }) == ErrorKind::Duplicate);
  }
  SUBCASE("misspelled header") {
    CHECK(kind_of([] { load_manifest("path,databse,task,subject,cohort\n"); }) == ErrorKind::Format);
    CHECK(kind_of([] { load_manifest(""); }) == ErrorKind::Format);
  }
  SUBCASE("empty label") {
    CHECK(kind_of([] { load_manifest("path,database,task,subject,cohort\nx.svc,d,,s,c\n"); }) ==
          ErrorKind::Value);
  }
  SUBCASE("embedded comma shows up as a wrong field count") {
    CHECK(kind_of([] { load_manifest("path,database,task,subject,cohort\nx.svc,d,t,s,c,extra\n"); }) ==
          ErrorKind::Format);
  }
}

TEST_CASE("manifest serialization round trip") {
  const std::filesystem::path base = "/corpus";
  CorpusManifest m;
  m.records.push_back({"/corpus/a/1.svc", "db", "t1", "s1", "pd"});
  m.records.push_back({"/elsewhere/2.svc", "db", "t1", "s2", "hc"});
  const auto text = serialize_manifest(m, base);
  CHECK(text.find("a/1.svc,db") != std::string::npos);
  CHECK(load_manifest(text, base).records == m.records);
}

TEST_CASE("validate_stream") {
  SUBCASE("single sample") {
    const auto r = validate_stream(parse_session("5 5 40 1 0 0 7").stream);
    CHECK(r.sample_count == 1);
    CHECK(r.span == 0);
    CHECK(r.status_transitions == 0);
    CHECK(r.min_pressure == 7);
    CHECK(r.max_pressure == 7);
  }
  SUBCASE("alternating status") {
    std::string text;
    for (int i = 0; i < 10; ++i) {
      text += "0 0 " + std::to_string(10 + 2 * i) + (i % 2 ? " 1 0 0 100\n" : " 0 0 0 0\n");
    }
    const auto r = validate_stream(parse_session(text).stream);
    CHECK(r.sample_count == 10);
    CHECK(r.span == 18);
    CHECK(r.status_transitions == 9);
    CHECK(r.min_pressure == 0);
    CHECK(r.max_pressure == 100);
  }
  SUBCASE("synthetic stream matches the generator's ground truth") {
    synth::SynthSpec spec;
    spec.nominal_period = 2;
    spec.jitter = 0;
    spec.seed = 99;
    // 300 + 200 + 250 + 249 samples plus the closing one
    spec.plan = {{StrokeClass::OnSurface, 600}, {StrokeClass::InAirShort, 400},
                 {StrokeClass::OnSurface, 500}, {StrokeClass::InAirShort, 498}};
    const auto session = synth::generate_session(spec);
    const auto r = validate_stream(session.stream);
    CHECK(r.sample_count == 1000);
    CHECK(r.sample_count == session.stream.size());
    CHECK(r.span == session.truth.time[StrokeClass::OnSurface] +
                        session.truth.time[StrokeClass::InAirShort] +
                        session.truth.time[StrokeClass::InAirLong]);
    CHECK(r.status_transitions == 3);
    CHECK(r.status_transitions == session.truth.status_transitions);
    CHECK(r.min_pressure == 0);
    CHECK(r.max_pressure > 0);
  }
}

TEST_CASE("parse_session_file reads from disk and labels the source") {
  const auto path = std::filesystem::temp_directory_path() / "penair_ingest_test.svc";
  {
    std::ofstream out(path);
    out << "1 1 10 1 0 0 3\n1 1 12 1 0 0 3\n";
  }
  const auto parsed = parse_session_file(path);
  CHECK(parsed.stream.size() == 2);
  CHECK(parsed.stream.source_id() == path.string());
  std::filesystem::remove(path);
  CHECK(kind_of([&] { parse_session_file(path); }) == ErrorKind::Io);
}
