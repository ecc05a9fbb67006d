// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "metrics/metrics.hpp"

namespace atomnlu::metrics {
namespace {

double mean(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()); }

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// Display width: ASCII counts 1, other code points 2.
std::size_t width(std::string_view s) {
  std::size_t w = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto c = static_cast<unsigned char>(s[i]);
    if (c < 0x80)
      ++w;
    else if ((c >> 6) != 0x2)
      w += 2;
  }
  return w;
}

std::string table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& r : rows) {
    widths.resize(std::max(widths.size(), r.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) widths[i] = std::max(widths[i], width(r[i]));
  }
  std::ostringstream out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      const auto pad = std::string(widths[i] - width(r[i]), ' ');
      if (i == 0)
        line += r[i] + pad;
      else
        line += "  " + pad + r[i];
    }
    out << line << '\n';
  }
  return out.str();
}

}  // namespace

EvalReport aggregate_report(std::vector<AtomicScore> per_dataset) {
  if (per_dataset.empty()) throw Error(ErrorCode::EmptyReport, "no scored datasets");
  std::sort(per_dataset.begin(), per_dataset.end(), [](const AtomicScore& a, const AtomicScore& b) {
    return std::tie(a.dataset_id, a.kind) < std::tie(b.dataset_id, b.kind);
  });
  EvalReport report;
  std::map<std::string, std::map<AtomicKind, std::vector<double>>> finals;
  for (const auto& d : per_dataset) {
    finals[std::string(report_column(d.task))][d.kind].push_back(d.scores.final);
    for (const auto& [k, n] : d.anomalies) report.anomalies[k] += n;
  }
  std::vector<double> task_scores;
  for (const auto& [column, kinds] : finals) {
    TaskScore ts;
    std::vector<double> atomic;
    for (const auto& [kind, values] : kinds) {
      ts.atomic[kind] = mean(values);
      atomic.push_back(ts.atomic[kind]);
    }
    ts.score = mean(atomic);
    task_scores.push_back(ts.score);
    report.tasks[column] = std::move(ts);
  }
  report.all = mean(task_scores);
  report.datasets = std::move(per_dataset);
  return report;
}

std::string render_table(const EvalReport& report) {
  std::vector<std::vector<std::string>> summary{{""}, {"score"}};
  for (auto col : kReportColumns) {
    summary[0].emplace_back(col);
    auto it = report.tasks.find(std::string(col));
    summary[1].push_back(it == report.tasks.end() ? "-" : fixed(it->second.score, 1));
  }
  summary[0].emplace_back("ALL");
  summary[1].push_back(fixed(report.all, 1));

  std::vector<std::vector<std::string>> detail{
      {"dataset", "task", "atomic", "n", "micro_f1", "rouge1", "rouge2", "rougeL", "final"}};
  for (const auto& d : report.datasets) {
    const auto& s = d.scores;
    detail.push_back({d.dataset_id, std::string(to_string(d.task)), std::string(to_string(d.kind)),
                      std::to_string(s.instances), fixed(s.micro_f1, 4), fixed(s.rouge1, 4), fixed(s.rouge2, 4),
                      fixed(s.rougeL, 4), fixed(s.final, 1)});
  }
  return table(summary) + "\n" + table(detail);
}

}  // namespace atomnlu::metrics
