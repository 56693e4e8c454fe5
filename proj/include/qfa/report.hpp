#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qfa/closure.hpp"
#include "qfa/montecarlo.hpp"

namespace qfa {

// p_* are single-round values, P_* overall ones.
struct ReportRow {
  std::string machine;
  std::string word;
  double p_acc = 0.0;
  double p_rej = 0.0;
  double p_reset_total = 0.0;
  double P_acc = 0.0;
  double P_rej = 0.0;
  double expected_steps = 0.0;
  double lemma4_bound = 0.0;
  std::string verdict;  // pass / fail / degenerate, "-" when not judged
};

enum class ReportFormat { Csv, Json };

const std::vector<std::string>& report_columns();

// Judged against eps when `member` is known and eps > 0.
ReportRow evaluate_row(const std::string& machine_id, const MachineSpec& spec, const std::string& word,
                       std::optional<bool> member, double eps, const EngineCaps& caps = {});

// Floats with 17 significant digits; infinities become "inf" in CSV and null
// in JSON.
std::string export_report(const std::vector<ReportRow>& rows, ReportFormat format);

struct SampleRow {
  std::string machine;
  std::string word;
  std::uint64_t seed = 0;
  SampleStats stats;
  double exact_P_acc = 0.0;  // conditional on halting, from the closure
};

std::string export_samples(const std::vector<SampleRow>& rows, ReportFormat format);

}  // namespace qfa
