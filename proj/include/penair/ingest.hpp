#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "penair/sample.hpp"

namespace penair {

struct ParseOptions {
  /// Replace the status column with (pressure > 0).
  bool derive_status_from_pressure = false;
  std::string source_id;
};

struct ParseWarning {
  std::size_t line = 0;
  std::string message;
};

struct ParsedSession {
  SampleStream stream;
  std::vector<ParseWarning> warnings;
  std::size_t duplicates = 0;
};

/// Parses an SVC-style sample file: one sample per line, either
/// `x y t status azimuth altitude pressure` or `x y t status`. Fields are
/// separated by spaces or tabs; CRLF is accepted. The column count is fixed
/// by the first data row. A leading line holding a single integer (the SVC
/// sample-count header) is skipped. Rows repeating the previous timestamp
/// are dropped with a warning.
ParsedSession parse_session(std::string_view text, const ParseOptions& options = {});

/// Reads a whole file and forwards to parse_session; source_id defaults to
/// the path.
ParsedSession parse_session_file(const std::filesystem::path& path, ParseOptions options = {});

/// 7-column text form, LF line endings.
std::string serialize_session(const SampleStream& stream);

struct ManifestRecord {
  std::filesystem::path path;
  std::string database;
  std::string task;
  std::string subject;
  std::string cohort;

  friend bool operator==(const ManifestRecord&, const ManifestRecord&) = default;
};

struct CorpusManifest {
  std::vector<ManifestRecord> records;
};

/// CSV with header `path,database,task,subject,cohort`. Relative paths are
/// resolved against `base_dir`.
CorpusManifest load_manifest(std::string_view text, const std::filesystem::path& base_dir = {});
CorpusManifest load_manifest_file(const std::filesystem::path& path);

/// Inverse of load_manifest; paths are written relative to `base_dir` when
/// they live beneath it.
std::string serialize_manifest(const CorpusManifest& manifest,
                               const std::filesystem::path& base_dir = {});

struct ValidationReport {
  std::size_t sample_count = 0;
  Tick span = 0;
  std::size_t status_transitions = 0;
  std::int64_t min_pressure = 0;
  std::int64_t max_pressure = 0;
};

ValidationReport validate_stream(const SampleStream& stream);

}  // namespace penair
