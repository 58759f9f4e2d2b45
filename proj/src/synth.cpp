#include "penair/synth.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "penair/error.hpp"

namespace penair::synth {
namespace {

[[noreturn]] void spec_fail(const std::string& msg) { throw Error(ErrorKind::Spec, msg); }

bool tracked(StrokeClass c) { return c != StrokeClass::InAirLong; }

// Smooth pen-tip path: velocity follows a damped random walk, and the
// position jumps when the pen leaves tracking range.
class PenPath {
public:
  explicit PenPath(std::mt19937_64& rng) : rng_(rng) {
    std::uniform_real_distribution<double> start(2000.0, 8000.0);
    x_ = start(rng_);
    y_ = start(rng_);
  }

  void step() {
    std::normal_distribution<double> accel(0.0, 1.5);
    vx_ = 0.9 * vx_ + accel(rng_);
    vy_ = 0.9 * vy_ + accel(rng_);
    x_ += vx_;
    y_ += vy_;
  }

  void jump() {
    std::uniform_real_distribution<double> offset(-400.0, 400.0);
    x_ += offset(rng_);
    y_ += offset(rng_);
    vx_ = vy_ = 0.0;
  }

  std::int64_t x() const { return std::llround(x_); }
  std::int64_t y() const { return std::llround(y_); }

private:
  std::mt19937_64& rng_;
  double x_ = 0, y_ = 0, vx_ = 0, vy_ = 0;
};

}  // namespace

std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t file_seed(std::uint64_t master, std::size_t cohort, std::size_t task,
                        std::size_t subject) noexcept {
  std::uint64_t h = mix_seed(master);
  h = mix_seed(h ^ cohort);
  h = mix_seed(h ^ task);
  return mix_seed(h ^ subject);
}

void validate_spec(const SynthSpec& spec) {
  if (spec.nominal_period < 1) spec_fail("nominal period must be >= 1");
  if (!(spec.gap_factor > 1.0)) spec_fail("gap factor must be > 1");
  if (spec.jitter < 0 || spec.jitter >= spec.nominal_period) {
    spec_fail("jitter must lie in [0, nominal period)");
  }
  if (!(static_cast<double>(spec.jitter) <
        (spec.gap_factor - 1.0) * static_cast<double>(spec.nominal_period))) {
    spec_fail("jitter must stay below (gap_factor - 1) * nominal period");
  }
  if (!(spec.jitter_rate >= 0.0 && spec.jitter_rate <= 1.0)) spec_fail("jitter rate must lie in [0, 1]");
  if (spec.plan.empty()) spec_fail("stroke plan is empty");
  if (!tracked(spec.plan.front().cls) || !tracked(spec.plan.back().cls)) {
    spec_fail("stroke plan must start and end with a tracked stroke");
  }
  const Tick threshold = gap_threshold(spec.nominal_period, SegmentationConfig{spec.gap_factor, {}});
  for (std::size_t i = 0; i < spec.plan.size(); ++i) {
    const PlanEntry& e = spec.plan[i];
    if (e.duration < 1) spec_fail("plan entry " + std::to_string(i) + " has non-positive duration");
    if (i > 0 && spec.plan[i - 1].cls == e.cls) {
      spec_fail("plan entries " + std::to_string(i - 1) + " and " + std::to_string(i) +
                " share a class");
    }
    if (e.cls == StrokeClass::InAirLong && e.duration <= threshold) {
      spec_fail("in-air-long entry " + std::to_string(i) + " does not exceed the gap threshold " +
                std::to_string(threshold));
    }
  }
}

Session generate_session(const SynthSpec& spec) {
  validate_spec(spec);
  std::mt19937_64 rng(spec.seed);
  PenPath pen(rng);
  std::bernoulli_distribution perturb(spec.jitter_rate);
  std::uniform_int_distribution<Tick> delta(1, std::max<Tick>(spec.jitter, 1));
  std::bernoulli_distribution negative(0.5);
  std::uniform_int_distribution<std::int64_t> pressure_drift(-12, 12);

  const Tick max_step = spec.nominal_period + spec.jitter;
  const auto draw_step = [&] {
    if (spec.jitter == 0 || !perturb(rng)) return spec.nominal_period;
    const Tick d = delta(rng);
    return negative(rng) ? spec.nominal_period - d : spec.nominal_period + d;
  };

  std::vector<Sample> samples;
  GroundTruth truth;
  std::int64_t pressure = 400;
  std::uniform_int_distribution<Tick> start_offset(0, 1000);
  Tick t = start_offset(rng);

  const auto emit = [&](StrokeClass cls) {
    const bool down = cls == StrokeClass::OnSurface;
    if (down) pressure = std::clamp<std::int64_t>(pressure + pressure_drift(rng), 100, 1023);
    if (!samples.empty() && (samples.back().status == PenStatus::OnSurface) != down) {
      ++truth.status_transitions;
    }
    samples.push_back(Sample{pen.x(), pen.y(), t, down ? PenStatus::OnSurface : PenStatus::InAir,
                             1800 + (pen.x() & 63), 550 + (pen.y() & 31), down ? pressure : 0});
  };

  for (std::size_t k = 0; k < spec.plan.size(); ++k) {
    const PlanEntry& e = spec.plan[k];
    Stroke stroke;
    stroke.cls = e.cls;
    stroke.start_t = t;

    if (e.cls == StrokeClass::InAirLong) {
      // the previous tracked segment already emitted its closing sample at t
      t += e.duration + spec.nominal_period;
      pen.jump();
    } else {
      const Tick end = t + e.duration;
      const std::size_t first = samples.size();
      emit(e.cls);
      while (end - t > max_step) {
        t += draw_step();
        pen.step();
        emit(e.cls);
      }
      t = end;
      pen.step();
      const bool next_tracked = k + 1 < spec.plan.size() && tracked(spec.plan[k + 1].cls);
      if (!next_tracked) emit(e.cls);
      // the boundary sample belongs to this stroke and to the next one
      stroke.samples = {first, samples.size() + (next_tracked ? 1 : 0)};
    }

    stroke.end_t = t;
    truth.time[e.cls] += stroke.duration();
    truth.count[e.cls] += 1;
    truth.strokes.push_back(stroke);
  }

  return Session{SampleStream(samples, "synth:" + std::to_string(spec.seed)), std::move(truth)};
}

SynthSpec draw_session_spec(const CorpusSpec& corpus, const CohortSpec& cohort, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto draw = [&](TickRange r) {
    return std::uniform_int_distribution<std::int64_t>(r.lo, r.hi)(rng);
  };

  const auto n_strokes = static_cast<std::size_t>(std::max<std::int64_t>(1, draw(cohort.strokes)));
  const std::size_t moves = n_strokes - 1;
  const auto n_gaps = std::min(moves, static_cast<std::size_t>(std::max<std::int64_t>(0, draw(cohort.gaps))));

  std::vector<std::size_t> order(moves);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<bool> has_gap(moves, false);
  for (std::size_t i = 0; i < n_gaps; ++i) has_gap[order[i]] = true;

  SynthSpec spec;
  spec.nominal_period = corpus.period;
  spec.jitter = corpus.jitter;
  spec.jitter_rate = corpus.jitter_rate;
  spec.gap_factor = corpus.gap_factor;
  spec.seed = mix_seed(seed);

  std::bernoulli_distribution direct_lift(0.5);
  for (std::size_t s = 0; s < n_strokes; ++s) {
    spec.plan.push_back({StrokeClass::OnSurface, draw(cohort.surface_ticks)});
    if (s == moves) break;
    if (!has_gap[s]) {
      spec.plan.push_back({StrokeClass::InAirShort, draw(cohort.air_ticks)});
    } else if (direct_lift(rng)) {
      spec.plan.push_back({StrokeClass::InAirLong, draw(cohort.gap_ticks)});
    } else {
      spec.plan.push_back({StrokeClass::InAirShort, draw(cohort.air_ticks)});
      spec.plan.push_back({StrokeClass::InAirLong, draw(cohort.gap_ticks)});
      spec.plan.push_back({StrokeClass::InAirShort, draw(cohort.air_ticks)});
    }
  }
  return spec;
}

namespace {

[[noreturn]] void format_fail(std::size_t line, const std::string& msg) {
  throw Error(ErrorKind::Format, "spec line " + std::to_string(line) + ": " + msg, line);
}

std::int64_t to_int(std::string_view s, std::size_t line) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) format_fail(line, "not an integer: " + std::string(s));
  return v;
}

double to_double(std::string_view s, std::size_t line) {
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) format_fail(line, "not a number: " + std::string(s));
  return v;
}

}  // namespace

CorpusSpec parse_corpus_spec(std::string_view text) {
  CorpusSpec spec;
  bool tasks_set = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream fields(raw);
    std::vector<std::string> tok;
    for (std::string f; fields >> f;) tok.push_back(f);
    if (tok.empty()) continue;

    const std::string& key = tok[0];
    const auto want = [&](std::size_t n) {
      if (tok.size() != n + 1) format_fail(line, "'" + key + "' takes " + std::to_string(n) + " value(s)");
    };
    const auto range = [&]() {
      want(2);
      TickRange r{to_int(tok[1], line), to_int(tok[2], line)};
      if (r.lo > r.hi || r.lo < 0) format_fail(line, "'" + key + "' needs 0 <= min <= max");
      return r;
    };
    const auto current = [&]() -> CohortSpec& {
      if (spec.cohorts.empty()) format_fail(line, "'" + key + "' must follow a cohort line");
      return spec.cohorts.back();
    };

    if (key == "database") {
      want(1);
      spec.database = tok[1];
    } else if (key == "tasks" || key == "task") {
      if (tok.size() < 2) format_fail(line, "'tasks' needs at least one name");
      if (!tasks_set) spec.tasks.clear();
      tasks_set = true;
      spec.tasks.insert(spec.tasks.end(), tok.begin() + 1, tok.end());
    } else if (key == "period") {
      want(1);
      spec.period = to_int(tok[1], line);
    } else if (key == "jitter") {
      want(1);
      spec.jitter = to_int(tok[1], line);
    } else if (key == "jitter_rate") {
      want(1);
      spec.jitter_rate = to_double(tok[1], line);
    } else if (key == "gap_factor") {
      want(1);
      spec.gap_factor = to_double(tok[1], line);
    } else if (key == "cohort") {
      want(2);
      CohortSpec c;
      c.name = tok[1];
      const std::int64_t n = to_int(tok[2], line);
      if (n < 1) format_fail(line, "cohort needs at least one file");
      c.n_files = static_cast<std::size_t>(n);
      spec.cohorts.push_back(std::move(c));
    } else if (key == "strokes") {
      current().strokes = range();
      if (current().strokes.lo < 1) format_fail(line, "'strokes' needs min >= 1");
    } else if (key == "surface_ticks") {
      current().surface_ticks = range();
    } else if (key == "air_ticks") {
      current().air_ticks = range();
    } else if (key == "gaps") {
      current().gaps = range();
    } else if (key == "gap_ticks") {
      current().gap_ticks = range();
    } else {
      format_fail(line, "unknown key '" + key + "'");
    }
  }
  if (spec.cohorts.empty()) throw Error(ErrorKind::Format, "corpus spec defines no cohorts");
  const auto check_label = [](const std::string& label) {
    if (label.find(',') != std::string::npos) {
      throw Error(ErrorKind::Format, "label '" + label + "' contains a comma");
    }
  };
  check_label(spec.database);
  for (const auto& t : spec.tasks) check_label(t);
  for (const auto& c : spec.cohorts) check_label(c.name);
  return spec;
}

CorpusSpec load_corpus_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_corpus_spec(buf.str());
}

CorpusManifest generate_corpus(const CorpusSpec& corpus, std::uint64_t master_seed,
                               const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  CorpusManifest manifest;
  std::error_code ec;
  for (std::size_t ci = 0; ci < corpus.cohorts.size(); ++ci) {
    const CohortSpec& cohort = corpus.cohorts[ci];
    for (std::size_t ti = 0; ti < corpus.tasks.size(); ++ti) {
      const fs::path dir = out_dir / cohort.name / corpus.tasks[ti];
      fs::create_directories(dir, ec);
      if (ec) throw Error(ErrorKind::Io, "cannot create " + dir.string() + ": " + ec.message());
      for (std::size_t si = 0; si < cohort.n_files; ++si) {
        char subject[64];
        std::snprintf(subject, sizeof subject, "%03zu", si + 1);
        const std::string subject_id = cohort.name + "_" + subject;
        const SynthSpec spec = draw_session_spec(corpus, cohort, file_seed(master_seed, ci, ti, si));
        const Session session = generate_session(spec);

        const fs::path file = dir / (subject_id + ".svc");
        std::ofstream out(file, std::ios::binary | std::ios::trunc);
        out << serialize_session(session.stream);
        if (!out) throw Error(ErrorKind::Io, "cannot write " + file.string());
        manifest.records.push_back({file.lexically_normal(), corpus.database, corpus.tasks[ti],
                                    subject_id, cohort.name});
      }
    }
  }

  const fs::path manifest_path = out_dir / "manifest.csv";
  std::ofstream out(manifest_path, std::ios::binary | std::ios::trunc);
  out << serialize_manifest(manifest, out_dir.lexically_normal());
  if (!out) throw Error(ErrorKind::Io, "cannot write " + manifest_path.string());
  return manifest;
}

}  // namespace penair::synth
