// penair: segment digitizer recordings into on-surface / in-air strokes,
// tabulate per-cohort timing and compare cohorts with a rank-sum test.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "penair/error.hpp"
#include "penair/features.hpp"
#include "penair/ingest.hpp"
#include "penair/report.hpp"
#include "penair/segmentation.hpp"
#include "penair/stats.hpp"
#include "penair/synth.hpp"

namespace {

using namespace penair;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitDegenerate = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  double gap_factor = 3.0;
  double anomaly_threshold = 0.7;
  std::size_t exact_limit = stats::kDefaultExactLimit;
  std::string format = "csv";
  std::string out;
  bool derive_status = false;

  report::Format fmt() const { return *report::parse_format(format); }
  SegmentationConfig seg() const { return SegmentationConfig{gap_factor, {}}; }
  AnomalyPolicy anomaly() const { return AnomalyPolicy{anomaly_threshold}; }
};

void check_globals(const Globals& g) {
  if (!(g.gap_factor > 1.0)) throw UsageError("--gap-factor must be > 1");
  if (!(g.anomaly_threshold > 0.0 && g.anomaly_threshold <= 1.0)) {
    throw UsageError("--anomaly-threshold must lie in (0, 1]");
  }
  if (g.exact_limit > stats::kMaxExactLimit) {
    throw UsageError("--exact-limit must be at most " + std::to_string(stats::kMaxExactLimit));
  }
  if (!report::parse_format(g.format)) throw UsageError("--format must be csv or md");
}

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(g.out, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw Error(ErrorKind::Io, "cannot write " + g.out);
}

ParsedSession load_session(const std::filesystem::path& path, const Globals& g) {
  ParseOptions opts;
  opts.derive_status_from_pressure = g.derive_status;
  ParsedSession parsed = parse_session_file(path, opts);
  for (const auto& w : parsed.warnings) {
    std::cerr << "WARN " << path.string() << ':' << w.line << ' ' << w.message << '\n';
  }
  return parsed;
}

std::vector<FeatureVector> extract_features(const CorpusManifest& manifest, const Globals& g) {
  std::vector<FeatureVector> out;
  out.reserve(manifest.records.size());
  for (const auto& rec : manifest.records) {
    const ParsedSession parsed = load_session(rec.path, g);
    out.push_back(feature_vector(segment(parsed.stream, g.seg()), g.anomaly(), rec));
  }
  return out;
}

// Markdown variant of a CSV block: header row, separator, data rows.
std::string csv_to_markdown(const std::string& csv) {
  std::string out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    std::size_t end = csv.find('\n', pos);
    if (end == std::string::npos) end = csv.size();
    std::string line = csv.substr(pos, end - pos);
    std::size_t cols = 1;
    std::string row = "| ";
    for (char c : line) {
      if (c == ',') {
        row += " | ";
        ++cols;
      } else {
        row += c;
      }
    }
    out += row + " |\n";
    if (line_no++ == 0) {
      out += '|';
      for (std::size_t i = 0; i < cols; ++i) out += "---|";
      out += '\n';
    }
    pos = end + 1;
  }
  return out;
}

std::string tabular(const Globals& g, const std::string& csv) {
  return g.fmt() == report::Format::Csv ? csv : csv_to_markdown(csv);
}

int run_parse(const Globals& g, const std::string& file) {
  const ParsedSession parsed = load_session(file, g);
  const ValidationReport r = validate_stream(parsed.stream);
  std::string csv = "path,samples,span,transitions,min_pressure,max_pressure,duplicates\n";
  csv += file + ',' + std::to_string(r.sample_count) + ',' + std::to_string(r.span) + ',' +
         std::to_string(r.status_transitions) + ',' + std::to_string(r.min_pressure) + ',' +
         std::to_string(r.max_pressure) + ',' + std::to_string(parsed.duplicates) + '\n';
  emit(g, tabular(g, csv));
  return kExitOk;
}

int run_segment(const Globals& g, const std::string& file) {
  const ParsedSession parsed = load_session(file, g);
  const SessionSegmentation seg = segment(parsed.stream, g.seg());
  std::string csv = "class,start_t,end_t,duration,n_samples\n";
  for (const auto& s : seg.strokes) {
    csv += std::string(to_string(s.cls)) + ',' + std::to_string(s.start_t) + ',' +
           std::to_string(s.end_t) + ',' + std::to_string(s.duration()) + ',' +
           std::to_string(s.samples.size()) + '\n';
  }
  emit(g, tabular(g, csv));
  return kExitOk;
}

int run_features(const Globals& g, const std::string& manifest_path) {
  const auto vectors = extract_features(load_manifest_file(manifest_path), g);
  std::string csv = "path,database,task,subject,cohort,T_S,T_AS,T_AL,Strokes_S,Strokes_AS,Strokes_AL,anomalous\n";
  for (const auto& v : vectors) {
    csv += v.source.path.generic_string() + ',' + v.source.database + ',' + v.source.task + ',' +
           v.source.subject + ',' + v.source.cohort + ',' + std::to_string(v.t_s) + ',' +
           std::to_string(v.t_as) + ',' + std::to_string(v.t_al) + ',' +
           std::to_string(v.strokes_s) + ',' + std::to_string(v.strokes_as) + ',' +
           std::to_string(v.strokes_al) + ',' + (v.anomalous ? "true" : "false") + '\n';
  }
  emit(g, tabular(g, csv));
  return kExitOk;
}

int run_aggregate(const Globals& g, const std::string& manifest_path) {
  const auto vectors = extract_features(load_manifest_file(manifest_path), g);
  if (vectors.empty()) throw Error(ErrorKind::EmptyCohort, "manifest lists no files");
  const auto summaries = aggregate_all(vectors);
  emit(g, report::render_time_table(summaries, g.fmt()));
  return kExitOk;
}

struct CompareArgs {
  std::string manifest;
  std::string cohort_a;
  std::string cohort_b;
  std::string database;
  std::vector<std::string> tasks;
  std::vector<std::string> features;
};

int run_compare(const Globals& g, const CompareArgs& args) {
  auto vectors = extract_features(load_manifest_file(args.manifest), g);
  if (!args.database.empty()) {
    std::erase_if(vectors, [&](const FeatureVector& v) { return v.source.database != args.database; });
  }

  std::vector<std::string> cohorts;
  for (const auto& v : vectors) {
    if (std::find(cohorts.begin(), cohorts.end(), v.source.cohort) == cohorts.end()) {
      cohorts.push_back(v.source.cohort);
    }
  }
  std::string a = args.cohort_a;
  std::string b = args.cohort_b;
  if (a.empty() && b.empty()) {
    if (cohorts.size() != 2) {
      throw UsageError("manifest has " + std::to_string(cohorts.size()) +
                       " cohorts; pick two with --cohort-a/--cohort-b");
    }
    a = cohorts[0];
    b = cohorts[1];
  } else if (a.empty() || b.empty()) {
    throw UsageError("--cohort-a and --cohort-b go together");
  }

  std::vector<FeatureVector> group_a, group_b;
  std::vector<std::string> tasks = args.tasks;
  const bool collect_tasks = tasks.empty();
  for (const auto& v : vectors) {
    if (v.source.cohort != a && v.source.cohort != b) continue;
    (v.source.cohort == a ? group_a : group_b).push_back(v);
    if (collect_tasks && std::find(tasks.begin(), tasks.end(), v.source.task) == tasks.end()) {
      tasks.push_back(v.source.task);
    }
  }

  std::vector<Feature> features;
  for (const auto& name : args.features) {
    const auto f = parse_feature(name);
    if (!f) throw UsageError("unknown feature '" + name + "'");
    features.push_back(*f);
  }
  if (features.empty()) features.assign(kFeatures.begin(), kFeatures.end());

  const stats::CompareConfig cfg{g.exact_limit};
  std::vector<stats::TestResult> results;
  for (const auto& task : tasks) {
    for (Feature f : features) results.push_back(stats::compare_cohorts(group_a, group_b, task, f, cfg));
  }
  if (results.empty()) throw Error(ErrorKind::EmptyCohort, "nothing to compare");
  emit(g, report::render_p_table(results, g.fmt()));
  return kExitOk;
}

int run_synth(const Globals& g, const std::string& spec_path, std::uint64_t seed) {
  if (g.out.empty()) throw UsageError("synth needs --out DIR");
  const auto corpus = synth::load_corpus_spec(spec_path);
  const auto manifest = synth::generate_corpus(corpus, seed, g.out);
  std::cerr << "wrote " << manifest.records.size() << " files and "
            << (std::filesystem::path(g.out) / "manifest.csv").string() << '\n';
  return kExitOk;
}

int run_render(const Globals& g, const std::string& file) {
  const ParsedSession parsed = load_session(file, g);
  emit(g, report::render_trajectories(parsed.stream, segment(parsed.stream, g.seg())));
  return kExitOk;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EmptyCohort:
    case ErrorKind::EmptyGroup:
    case ErrorKind::InsufficientData:
    case ErrorKind::UndefinedPercentage:
      return kExitDegenerate;
    case ErrorKind::Value:
      return kExitUsage;
    default:
      return kExitParse;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"penair: pen-up/pen-down stroke timing analysis for digitizer recordings"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--gap-factor", g.gap_factor, "Gap threshold as a multiple of the modal period")
      ->capture_default_str();
  app.add_option("--anomaly-threshold", g.anomaly_threshold,
                 "In-air-long share of total time above which a file is excluded")
      ->capture_default_str();
  app.add_option("--exact-limit", g.exact_limit, "Largest pooled size tested exactly")
      ->capture_default_str();
  app.add_option("--format", g.format, "Table format: csv or md")->capture_default_str();
  app.add_option("--out", g.out, "Output file (synth: output directory)");
  app.add_flag("--derive-status", g.derive_status, "Take pen status from pressure > 0");

  std::string file;
  auto* parse = app.add_subcommand("parse", "Validate a sample file and report its basic counts");
  parse->add_option("file", file, "Sample file")->required();
  auto* seg = app.add_subcommand("segment", "Emit the stroke segmentation of a sample file");
  seg->add_option("file", file, "Sample file")->required();
  auto* features = app.add_subcommand("features", "Per-file features for every manifest entry");
  features->add_option("manifest", file, "Corpus manifest (CSV)")->required();
  auto* aggregate = app.add_subcommand("aggregate", "Per-cohort, per-task time and stroke table");
  aggregate->add_option("manifest", file, "Corpus manifest (CSV)")->required();

  CompareArgs cmp;
  auto* compare = app.add_subcommand("compare", "Rank-sum test between two cohorts per task and feature");
  compare->add_option("manifest", cmp.manifest, "Corpus manifest (CSV)")->required();
  compare->add_option("--cohort-a", cmp.cohort_a, "First cohort label");
  compare->add_option("--cohort-b", cmp.cohort_b, "Second cohort label");
  compare->add_option("--database", cmp.database, "Restrict to one database label");
  compare->add_option("--task", cmp.tasks, "Restrict to these tasks");
  compare->add_option("--feature", cmp.features, "Restrict to these features (T_S ... Strokes_AL)");

  std::string spec_path;
  std::uint64_t seed = 0;
  auto* synth_cmd = app.add_subcommand("synth", "Write a seeded synthetic corpus and its manifest");
  synth_cmd->add_option("--spec", spec_path, "Corpus spec file")->required();
  synth_cmd->add_option("--seed", seed, "Master seed")->required();

  auto* render = app.add_subcommand("render", "SVG of on-surface and in-air trajectories");
  render->add_option("file", file, "Sample file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    check_globals(g);
    if (*parse) return run_parse(g, file);
    if (*seg) return run_segment(g, file);
    if (*features) return run_features(g, file);
    if (*aggregate) return run_aggregate(g, file);
    if (*compare) return run_compare(g, cmp);
    if (*synth_cmd) return run_synth(g, spec_path, seed);
    if (*render) return run_render(g, file);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  }
  return kExitUsage;
}
