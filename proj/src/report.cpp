#include "qfa/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace qfa {

namespace {

std::string num(double x, ReportFormat f) {
  if (std::isinf(x)) {
    if (f == ReportFormat::Json) return "null";
    return x > 0 ? "inf" : "-inf";
  }
  if (std::isnan(x)) return f == ReportFormat::Json ? "null" : "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

// Rows of (key, rendered value) emitted in order.
using Cells = std::vector<std::pair<std::string, std::string>>;

std::string render(const std::vector<std::string>& header, const std::vector<Cells>& rows,
                   ReportFormat f) {
  std::ostringstream out;
  if (f == ReportFormat::Csv) {
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << "\n";
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i].second;
      out << "\n";
    }
    return out.str();
  }
  out << "[";
  for (std::size_t k = 0; k < rows.size(); ++k) {
    out << (k ? ",\n " : "\n ") << "{";
    for (std::size_t i = 0; i < rows[k].size(); ++i) {
      out << (i ? ", " : "") << json_string(rows[k][i].first) << ": " << rows[k][i].second;
    }
    out << "}";
  }
  out << (rows.empty() ? "]\n" : "\n]\n");
  return out.str();
}

std::string text(const std::string& s, ReportFormat f) {
  return f == ReportFormat::Csv ? csv_field(s) : json_string(s);
}

}  // namespace

const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> cols = {"machine", "word",  "p_acc",          "p_rej",
                                                "p_reset_total", "P_acc", "P_rej", "expected_steps",
                                                "lemma4_bound",  "verdict"};
  return cols;
}

ReportRow evaluate_row(const std::string& machine_id, const MachineSpec& spec, const std::string& word,
                       std::optional<bool> member, double eps, const EngineCaps& caps) {
  ReportRow row;
  row.machine = machine_id;
  row.word = word;
  const DecisionReport d = decide(spec, word, caps);
  if (spec.kind == Kind::Probabilistic && spec.motion == Motion::TwoWay) {
    // no closed-form round here; the configuration chain covers everything
    row.p_acc = d.acc;
    row.p_rej = d.rej;
    row.p_reset_total = 0.0;
  } else {
    const RoundResult r = run_round(spec, TapeWord::make(spec, word), spec.initial, caps);
    row.p_acc = r.p_acc;
    row.p_rej = r.p_rej;
    row.p_reset_total = r.p_reset_total();
  }
  row.P_acc = d.acc;
  row.P_rej = d.rej;
  row.expected_steps = d.expected_total_steps;
  row.lemma4_bound = d.lemma4_bound;
  row.verdict = "-";
  if (member && eps > 0.0) row.verdict = verdict_name(judge_word(spec, word, *member, eps, caps).verdict);
  return row;
}

std::string export_report(const std::vector<ReportRow>& rows, ReportFormat f) {
  std::vector<Cells> cells;
  const auto& h = report_columns();
  for (const auto& r : rows) {
    cells.push_back({{h[0], text(r.machine, f)},
                     {h[1], text(r.word, f)},
                     {h[2], num(r.p_acc, f)},
                     {h[3], num(r.p_rej, f)},
                     {h[4], num(r.p_reset_total, f)},
                     {h[5], num(r.P_acc, f)},
                     {h[6], num(r.P_rej, f)},
                     {h[7], num(r.expected_steps, f)},
                     {h[8], num(r.lemma4_bound, f)},
                     {h[9], text(r.verdict, f)}});
  }
  return render(h, cells, f);
}

std::string export_samples(const std::vector<SampleRow>& rows, ReportFormat f) {
  const std::vector<std::string> h = {"machine",    "word",       "seed",     "n",
                                      "accepted",   "rejected",   "censored", "acceptance",
                                      "stderr_acc", "mean_steps", "mean_rounds", "exact_P_acc"};
  std::vector<Cells> cells;
  for (const auto& r : rows) {
    const SampleStats& s = r.stats;
    cells.push_back({{h[0], text(r.machine, f)},
                     {h[1], text(r.word, f)},
                     {h[2], std::to_string(r.seed)},
                     {h[3], std::to_string(s.n)},
                     {h[4], std::to_string(s.accepted)},
                     {h[5], std::to_string(s.rejected)},
                     {h[6], std::to_string(s.censored)},
                     {h[7], num(s.acceptance(), f)},
                     {h[8], num(s.stderr_acc, f)},
                     {h[9], num(s.mean_steps, f)},
                     {h[10], num(s.mean_rounds, f)},
                     {h[11], num(r.exact_P_acc, f)}});
  }
  return render(h, cells, f);
}

}  // namespace qfa
