#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "penair/ingest.hpp"
#include "penair/segmentation.hpp"

namespace penair::synth {

struct PlanEntry {
  StrokeClass cls = StrokeClass::OnSurface;
  /// Tracked classes: time from the segment's first sample to the next
  /// segment's first sample. InAirLong: untracked time; the emitted
  /// timestamp jump is duration + nominal_period.
  Tick duration = 0;
};

struct SynthSpec {
  Tick nominal_period = 2;
  /// Perturbed steps are nominal_period + d with 1 <= |d| <= jitter.
  Tick jitter = 0;
  /// Share of steps that get perturbed; the rest are exactly nominal.
  double jitter_rate = 0.2;
  /// Must match the segmentation config the stream will be checked with.
  double gap_factor = 3.0;
  std::vector<PlanEntry> plan;
  std::uint64_t seed = 0;
};

struct GroundTruth {
  PerClass<Tick> time;
  PerClass<std::size_t> count;
  std::vector<Stroke> strokes;
  std::size_t status_transitions = 0;
};

struct Session {
  SampleStream stream;
  GroundTruth truth;
};

/// Throws Spec when the plan or sampling parameters would make the ground
/// truth ambiguous: period < 1, jitter outside [0, period) or not below
/// (gap_factor - 1) * period, an empty plan, a plan that starts or ends in
/// InAirLong, repeated consecutive classes, non-positive durations, or an
/// InAirLong duration not above the gap threshold.
void validate_spec(const SynthSpec& spec);

Session generate_session(const SynthSpec& spec);

/// splitmix64 finalizer; used to derive per-file seeds from a master seed.
std::uint64_t mix_seed(std::uint64_t x) noexcept;

struct TickRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

struct CohortSpec {
  std::string name;
  std::size_t n_files = 1;
  TickRange strokes{4, 8};          // on-surface strokes per file
  TickRange surface_ticks{60, 200};  // per on-surface stroke
  TickRange air_ticks{20, 80};       // per in-air-short stroke
  TickRange gaps{0, 3};              // in-air-long events per file
  TickRange gap_ticks{40, 160};      // untracked ticks per event
};

struct CorpusSpec {
  std::string database = "synthetic";
  std::vector<std::string> tasks{"task"};
  Tick period = 2;
  Tick jitter = 1;
  double jitter_rate = 0.2;
  double gap_factor = 3.0;
  std::vector<CohortSpec> cohorts;
};

/// Line-oriented corpus description; see README for the grammar.
CorpusSpec parse_corpus_spec(std::string_view text);
CorpusSpec load_corpus_spec(const std::filesystem::path& path);

/// Seed for one file, derived from the master seed and the file's cohort,
/// task and subject indices.
std::uint64_t file_seed(std::uint64_t master, std::size_t cohort, std::size_t task,
                        std::size_t subject) noexcept;

/// Draws a stroke plan for one file: on-surface strokes separated by
/// in-air-short moves, with some moves replaced by in-air-long events
/// (either directly between on-surface strokes or between two short moves).
SynthSpec draw_session_spec(const CorpusSpec& corpus, const CohortSpec& cohort,
                            std::uint64_t seed);

/// Writes <out>/<cohort>/<task>/<subject>.svc for every file plus
/// <out>/manifest.csv and returns the manifest (with resolved paths).
CorpusManifest generate_corpus(const CorpusSpec& corpus, std::uint64_t master_seed,
                               const std::filesystem::path& out_dir);

}  // namespace penair::synth
