#include "penair/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <vector>

namespace penair::report {
namespace {

double round_to(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(value * scale) / scale;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct RenderedRow {
  std::string t_s, t_as, t_al;
  std::string pct_s, pct_as, pct_al;
  std::string strokes_s, strokes_as, strokes_al;
};

RenderedRow render_row(const CohortSummary& s) {
  const double ts = round_to(s.mean_t_s, 1);
  const double tas = round_to(s.mean_t_as, 1);
  const double tal = round_to(s.mean_t_al, 1);
  Percentages pct = s.pct;
  if (ts + tas + tal > 0.0) pct = relative_times(ts, tas, tal);
  return {fixed(ts, 1),
          fixed(tas, 1),
          fixed(tal, 1),
          fixed(pct.on_surface, 1),
          fixed(pct.in_air_short, 1),
          fixed(pct.in_air_long, 1),
          fixed(s.mean_strokes_s, 2),
          fixed(s.mean_strokes_as, 2),
          fixed(s.mean_strokes_al, 2)};
}

}  // namespace

std::optional<Format> parse_format(std::string_view name) noexcept {
  if (name == "csv") return Format::Csv;
  if (name == "md" || name == "markdown") return Format::Markdown;
  return std::nullopt;
}

std::string fixed(double value, int decimals) {
  if (value == 0.0) value = 0.0;  // drop the sign of -0.0
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, decimals);
  if (ec != std::errc{}) return "nan";
  std::string out(buf, ptr);
  // a value that rounds to zero from below still prints "-0.0"
  if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
  return out;
}

std::string time_cell(double time, double pct) {
  return fixed(time, 1) + " (" + fixed(pct, 1) + "%)";
}

std::string render_time_table(std::span<const CohortSummary> summaries, Format format) {
  std::string out;
  if (format == Format::Csv) {
    out = "database,task,cohort,n_files,n_anomalous,T_S,T_AS,T_AL,pct_S,pct_AS,pct_AL,"
          "Strokes_S,Strokes_AS,Strokes_AL\n";
    for (const auto& s : summaries) {
      const RenderedRow r = render_row(s);
      out += s.database + ',' + s.task + ',' + s.cohort + ',' + std::to_string(s.n_files) + ',' +
             std::to_string(s.n_anomalous) + ',' + r.t_s + ',' + r.t_as + ',' + r.t_al + ',' +
             r.pct_s + ',' + r.pct_as + ',' + r.pct_al + ',' + r.strokes_s + ',' + r.strokes_as +
             ',' + r.strokes_al + '\n';
    }
    return out;
  }

  std::vector<std::pair<std::string, std::string>> groups;
  for (const auto& s : summaries) {
    std::pair<std::string, std::string> key{s.database, s.cohort};
    if (std::find(groups.begin(), groups.end(), key) == groups.end()) groups.push_back(key);
  }
  for (const auto& [database, cohort] : groups) {
    if (!out.empty()) out += '\n';
    out += "### " + database + " (" + cohort + ")\n\n";
    out += "| Task | On-surface | In-air_S | In-air_L | Strokes on-surface | Strokes in-air_S | "
           "Strokes in-air_L | Files | Anomalous |\n";
    out += "|---|---:|---:|---:|---:|---:|---:|---:|---:|\n";
    for (const auto& s : summaries) {
      if (s.database != database || s.cohort != cohort) continue;
      const RenderedRow r = render_row(s);
      out += "| " + s.task + " | " + r.t_s + " (" + r.pct_s + "%) | " + r.t_as + " (" + r.pct_as +
             "%) | " + r.t_al + " (" + r.pct_al + "%) | " + r.strokes_s + " | " + r.strokes_as +
             " | " + r.strokes_al + " | " + std::to_string(s.n_files) + " | " +
             std::to_string(s.n_anomalous) + " |\n";
    }
  }
  return out;
}

std::string p_cell(const stats::TestResult& r) {
  return fixed(r.p, 4) + (r.significant ? "*" : "");
}

std::string render_p_table(std::span<const stats::TestResult> results, Format format) {
  std::string out;
  if (format == Format::Csv) {
    out = "task,feature,n_A,n_B,U_A,p,method,significant\n";
    for (const auto& r : results) {
      out += r.task + ',' + std::string(to_string(r.feature)) + ',' + std::to_string(r.u.n_a) +
             ',' + std::to_string(r.u.n_b) + ',' + fixed(r.u.u_a, 1) + ',' + fixed(r.p, 4) + ',' +
             stats::to_string(r.method) + ',' + (r.significant ? "true" : "false") + '\n';
    }
    return out;
  }

  std::vector<std::string> tasks;
  for (const auto& r : results) {
    if (std::find(tasks.begin(), tasks.end(), r.task) == tasks.end()) tasks.push_back(r.task);
  }
  out = "| Task |";
  for (Feature f : kFeatures) out += " p " + std::string(to_string(f)) + " |";
  out += "\n|---|";
  for (std::size_t i = 0; i < kFeatures.size(); ++i) out += "---:|";
  out += '\n';
  for (const auto& task : tasks) {
    out += "| " + task + " |";
    for (Feature f : kFeatures) {
      const auto it = std::find_if(results.begin(), results.end(), [&](const stats::TestResult& r) {
        return r.task == task && r.feature == f;
      });
      out += ' ' + (it == results.end() ? std::string("n/a") : p_cell(*it)) + " |";
    }
    out += '\n';
  }
  return out;
}

std::string render_trajectories(const SampleStream& stream, const SessionSegmentation& seg) {
  constexpr double kWidth = 800;
  constexpr double kPanel = 360;
  constexpr double kTitle = 24;
  constexpr double kStrip = 80;
  constexpr double kTotal = 2 * (kTitle + kPanel) + kTitle + kStrip;

  const auto xs = stream.xs();
  const auto ys = stream.ys();
  const auto [xmin, xmax] = std::minmax_element(xs.begin(), xs.end());
  const auto [ymin, ymax] = std::minmax_element(ys.begin(), ys.end());
  const double w = std::max<double>(static_cast<double>(*xmax - *xmin), 1.0);
  const double h = std::max<double>(static_cast<double>(*ymax - *ymin), 1.0);
  const double mx = 0.05 * w;
  const double my = 0.05 * h;
  // y is negated so the tablet's upward axis points up on screen
  const std::string view_box = fixed(static_cast<double>(*xmin) - mx, 2) + ' ' +
                               fixed(-static_cast<double>(*ymax) - my, 2) + ' ' +
                               fixed(w + 2 * mx, 2) + ' ' + fixed(h + 2 * my, 2);

  const auto polyline = [&](const Stroke& s, std::string_view cls, std::string_view colour) {
    std::string pts;
    for (std::size_t i = s.samples.begin; i < s.samples.end; ++i) {
      if (!pts.empty()) pts += ' ';
      pts += std::to_string(xs[i]) + ',' + std::to_string(-ys[i]);
    }
    return "    <polyline class=\"" + std::string(cls) + "\" fill=\"none\" stroke=\"" +
           std::string(colour) +
           "\" stroke-width=\"1.5\" vector-effect=\"non-scaling-stroke\" points=\"" + pts +
           "\"/>\n";
  };

  const auto panel = [&](StrokeClass cls, double top, std::string_view title,
                         std::string_view css, std::string_view colour) {
    std::string p = "  <text x=\"8\" y=\"" + fixed(top + 17, 0) +
                    "\" font-family=\"sans-serif\" font-size=\"14\">" + std::string(title) +
                    "</text>\n";
    p += "  <svg class=\"panel " + std::string(css) + "\" x=\"0\" y=\"" + fixed(top + kTitle, 0) +
         "\" width=\"" + fixed(kWidth, 0) + "\" height=\"" + fixed(kPanel, 0) + "\" viewBox=\"" +
         view_box + "\" preserveAspectRatio=\"xMidYMid meet\">\n";
    for (const auto& s : seg.strokes) {
      if (s.cls == cls) p += polyline(s, css, colour);
    }
    p += "  </svg>\n";
    return p;
  };

  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(kWidth, 0) + "\" height=\"" +
         fixed(kTotal, 0) + "\" viewBox=\"0 0 " + fixed(kWidth, 0) + ' ' + fixed(kTotal, 0) +
         "\">\n";
  out += "  <title>" + xml_escape(stream.source_id()) + "</title>\n";
  out += "  <rect x=\"0\" y=\"0\" width=\"" + fixed(kWidth, 0) + "\" height=\"" + fixed(kTotal, 0) +
         "\" fill=\"white\"/>\n";
  out += panel(StrokeClass::OnSurface, 0, "On-surface", "on-surface", "#1f3b73");
  out += panel(StrokeClass::InAirShort, kTitle + kPanel, "In-air (short distance)", "in-air",
               "#b03a2e");

  // timeline strip in pixel coordinates so the labels keep their shape
  const double strip_top = 2 * (kTitle + kPanel);
  const double left = 40;
  const double right = kWidth - 40;
  const double base_y = strip_top + kTitle + kStrip / 2;
  const double t0 = static_cast<double>(stream.first_t());
  const double span = std::max(static_cast<double>(stream.last_t()) - t0, 1.0);
  const auto to_px = [&](Tick t) { return left + (static_cast<double>(t) - t0) / span * (right - left); };

  out += "  <text x=\"8\" y=\"" + fixed(strip_top + 17, 0) +
         "\" font-family=\"sans-serif\" font-size=\"14\">In-air (long distance) events</text>\n";
  out += "  <g class=\"timeline\">\n";
  out += "    <line x1=\"" + fixed(left, 2) + "\" y1=\"" + fixed(base_y, 2) + "\" x2=\"" +
         fixed(right, 2) + "\" y2=\"" + fixed(base_y, 2) + "\" stroke=\"#555\" stroke-width=\"1\"/>\n";
  std::size_t label = 0;
  for (const auto& s : seg.strokes) {
    if (s.cls != StrokeClass::InAirLong) continue;
    ++label;
    const double x = to_px(s.start_t + s.duration() / 2);
    out += "    <line class=\"in-air-long\" x1=\"" + fixed(x, 2) + "\" y1=\"" +
           fixed(base_y - 14, 2) + "\" x2=\"" + fixed(x, 2) + "\" y2=\"" + fixed(base_y + 14, 2) +
           "\" stroke=\"#7d3c98\" stroke-width=\"2\"/>\n";
    out += "    <text x=\"" + fixed(x, 2) + "\" y=\"" + fixed(base_y - 18, 2) +
           "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">L" +
           std::to_string(label) + " (" + std::to_string(s.duration()) + ")</text>\n";
  }
  out += "  </g>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace penair::report
