#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "penair/features.hpp"
#include "penair/segmentation.hpp"
#include "penair/stats.hpp"

namespace penair::report {

enum class Format { Csv, Markdown };

std::optional<Format> parse_format(std::string_view name) noexcept;

/// Fixed-point rendering independent of the process locale.
std::string fixed(double value, int decimals);

/// "2857.6 (79.6%)". The percentage is computed from the one-decimal time
/// values, so a rendered row always reproduces its own percentages.
std::string time_cell(double time, double pct);

/// One row per summary. Markdown groups rows into one table per
/// (database, cohort); CSV is a single long table with the same values.
std::string render_time_table(std::span<const CohortSummary> summaries, Format format);

/// "0.0157*" with the mark for significant results.
std::string p_cell(const stats::TestResult& r);

/// CSV: `task,feature,n_A,n_B,U_A,p,method,significant`, one line per
/// result. Markdown: one row per task with the six feature columns.
std::string render_p_table(std::span<const stats::TestResult> results, Format format);

/// Two stacked panels (on-surface strokes on top, in-air-short strokes
/// below) sharing one data-fitted viewBox, followed by a timeline strip
/// with a labelled tick for every in-air-long event.
std::string render_trajectories(const SampleStream& stream, const SessionSegmentation& seg);

}  // namespace penair::report
