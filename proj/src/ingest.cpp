#include "penair/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "penair/error.hpp"
#include "penair/kernels.hpp"

namespace penair {
namespace {

// Splits on LF, dropping a trailing CR from each line.
std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

bool parse_int(std::string_view s, std::int64_t& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size() && !s.empty();
}

std::string_view trim(std::string_view s) {
  const auto not_space = [](char c) { return c != ' ' && c != '\t' && c != '\r'; };
  const auto first = std::find_if(s.begin(), s.end(), not_space);
  const auto last = std::find_if(s.rbegin(), s.rend(), not_space).base();
  return first < last ? std::string_view(&*first, static_cast<std::size_t>(last - first))
                      : std::string_view{};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& msg) {
  throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + msg, line);
}

}  // namespace

ParsedSession parse_session(std::string_view text, const ParseOptions& options) {
  std::vector<Sample> samples;
  std::vector<ParseWarning> warnings;
  std::size_t duplicates = 0;
  std::size_t columns = 0;
  bool seen_content = false;

  const auto lines = split_lines(text);
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const std::size_t line_no = li + 1;
    const auto fields = split_fields(lines[li]);
    if (fields.empty()) continue;

    if (!seen_content) {
      seen_content = true;
      std::int64_t count = 0;
      if (fields.size() == 1 && parse_int(fields[0], count)) continue;
    }

    if (columns == 0) {
      if (fields.size() == 3) parse_fail(line_no, "status column missing (3-column row)");
      if (fields.size() != 7 && fields.size() != 4) {
        parse_fail(line_no, "expected 7 or 4 columns, found " + std::to_string(fields.size()));
      }
      columns = fields.size();
    } else if (fields.size() != columns) {
      parse_fail(line_no, "expected " + std::to_string(columns) + " columns, found " +
                              std::to_string(fields.size()));
    }

    std::int64_t v[7] = {0, 0, 0, 0, 0, 0, 0};
    for (std::size_t c = 0; c < columns; ++c) {
      if (!parse_int(fields[c], v[c])) {
        parse_fail(line_no, "field " + std::to_string(c + 1) + " is not an integer: '" +
                                std::string(fields[c]) + "'");
      }
    }
    if (v[3] != 0 && v[3] != 1) parse_fail(line_no, "status must be 0 or 1");
    if (v[6] < 0) parse_fail(line_no, "negative pressure");

    Sample s{v[0], v[1], v[2], v[3] == 1 ? PenStatus::OnSurface : PenStatus::InAir,
             v[4], v[5], v[6]};
    if (options.derive_status_from_pressure) {
      s.status = s.pressure > 0 ? PenStatus::OnSurface : PenStatus::InAir;
    }

    if (!samples.empty()) {
      const Tick prev = samples.back().t;
      if (s.t == prev) {
        ++duplicates;
        warnings.push_back({line_no, "duplicate timestamp " + std::to_string(s.t) + " dropped"});
        continue;
      }
      if (s.t < prev) {
        throw Error(ErrorKind::Order,
                    "line " + std::to_string(line_no) + ": timestamp " + std::to_string(s.t) +
                        " decreases (previous " + std::to_string(prev) + ")",
                    line_no);
      }
    }
    samples.push_back(s);
  }

  if (samples.empty()) throw Error(ErrorKind::EmptyInput, "no samples in input");
  return ParsedSession{SampleStream(samples, options.source_id), std::move(warnings), duplicates};
}

ParsedSession parse_session_file(const std::filesystem::path& path, ParseOptions options) {
  if (options.source_id.empty()) options.source_id = path.string();
  return parse_session(read_file(path), options);
}

std::string serialize_session(const SampleStream& stream) {
  std::string out;
  out.reserve(stream.size() * 32);
  for (std::size_t i = 0; i < stream.size(); ++i) {
    const Sample s = stream[i];
    out += std::to_string(s.x);
    out += ' ';
    out += std::to_string(s.y);
    out += ' ';
    out += std::to_string(s.t);
    out += s.status == PenStatus::OnSurface ? " 1 " : " 0 ";
    out += std::to_string(s.azimuth);
    out += ' ';
    out += std::to_string(s.altitude);
    out += ' ';
    out += std::to_string(s.pressure);
    out += '\n';
  }
  return out;
}

CorpusManifest load_manifest(std::string_view text, const std::filesystem::path& base_dir) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  const auto lines = split_lines(text);

  std::size_t li = 0;
  while (li < lines.size() && trim(lines[li]).empty()) ++li;
  if (li == lines.size()) throw Error(ErrorKind::Format, "manifest is missing its header row");

  std::string header;
  for (char c : lines[li]) {
    if (c != ' ' && c != '\t' && c != '\r') header += c;
  }
  if (header != "path,database,task,subject,cohort") {
    throw Error(ErrorKind::Format,
                "manifest header must be 'path,database,task,subject,cohort'", li + 1);
  }

  CorpusManifest manifest;
  std::set<std::tuple<std::string, std::string, std::string, std::string>> seen;
  for (++li; li < lines.size(); ++li) {
    const std::size_t line_no = li + 1;
    if (trim(lines[li]).empty()) continue;

    std::vector<std::string_view> cells;
    std::string_view rest = lines[li];
    for (;;) {
      const std::size_t comma = rest.find(',');
      cells.push_back(trim(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (cells.size() != 5) {
      throw Error(ErrorKind::Format,
                  "line " + std::to_string(line_no) + ": expected 5 fields, found " +
                      std::to_string(cells.size()),
                  line_no);
    }
    for (const auto& cell : cells) {
      if (cell.empty()) {
        throw Error(ErrorKind::Value, "line " + std::to_string(line_no) + ": empty field",
                    line_no);
      }
    }

    std::filesystem::path path{std::string(cells[0])};
    if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
    path = path.lexically_normal();

    ManifestRecord rec{path, std::string(cells[1]), std::string(cells[2]),
                       std::string(cells[3]), std::string(cells[4])};
    if (!seen.emplace(rec.database, rec.task, rec.subject, rec.path.generic_string()).second) {
      throw Error(ErrorKind::Duplicate,
                  "line " + std::to_string(line_no) + ": duplicate (database, task, subject, path)",
                  line_no);
    }
    manifest.records.push_back(std::move(rec));
  }
  return manifest;
}

CorpusManifest load_manifest_file(const std::filesystem::path& path) {
  return load_manifest(read_file(path), path.parent_path());
}

std::string serialize_manifest(const CorpusManifest& manifest, const std::filesystem::path& base_dir) {
  std::string out = "path,database,task,subject,cohort\n";
  for (const auto& r : manifest.records) {
    std::filesystem::path p = r.path;
    if (!base_dir.empty()) {
      const auto rel = p.lexically_relative(base_dir);
      if (!rel.empty() && *rel.begin() != "..") p = rel;
    }
    out += p.generic_string() + ',' + r.database + ',' + r.task + ',' + r.subject + ',' +
           r.cohort + '\n';
  }
  return out;
}

ValidationReport validate_stream(const SampleStream& stream) {
  ValidationReport r;
  r.sample_count = stream.size();
  r.span = stream.last_t() - stream.first_t();
  r.status_transitions = kernels::active().count_transitions(stream.status());
  const auto p = stream.pressures();
  const auto [lo, hi] = std::minmax_element(p.begin(), p.end());
  r.min_pressure = *lo;
  r.max_pressure = *hi;
  return r;
}

}  // namespace penair
