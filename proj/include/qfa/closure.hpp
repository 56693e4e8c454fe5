#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qfa/round.hpp"

namespace qfa {

struct DecisionReport {
  double acc = 0.0;  // overall acceptance probability
  double rej = 0.0;
  double expected_total_steps = 0.0;  // +inf unless halting is almost sure
  double lemma4_bound = 0.0;          // max_steps / p_halt of the initial round
  bool halts_almost_surely = false;
  bool degenerate = false;  // nothing ever halts: probabilities reported as 0
  double lost = 0.0;        // mass that never halts
};

// Geometric-series closure over a round table.
DecisionReport overall_decision(const RoundTable& table, int initial);

// Round table plus closure for one word.
DecisionReport decide(const MachineSpec& spec, const std::string& word,
                      const EngineCaps& caps = {});

// max_steps / p_halt, +inf when p_halt == 0.
double expected_runtime_bound(double p_halt, double max_steps);

// Exact analysis of a probabilistic machine (either motion) over its
// configuration chain Q x Z_n, reset moves included. Needed for two-way
// machines whose single round is exponentially long.
DecisionReport analyze_markov(const MachineSpec& spec, const std::string& word);

using Membership = std::function<bool(const std::string&)>;

enum class Verdict { Pass, Fail, Degenerate };
const char* verdict_name(Verdict v);

struct WordVerdict {
  std::string word;
  bool member = false;
  double numerator = 0.0;  // wrong-side quantity
  double denominator = 0.0;
  double ratio = 0.0;  // numerator / denominator, +inf when denominator is 0
  Verdict verdict = Verdict::Fail;
  bool strong = false;  // ratio <= eps
};

struct ErrorVerdict {
  double eps = 0.0;
  double threshold = 0.0;  // eps / (1 - eps)
  std::vector<WordVerdict> words;
  int failures = 0;
  int degenerate = 0;
  bool pass() const { return failures == 0 && degenerate == 0; }
};

// Restart-only machines are judged on first-round ratios, everything else on
// the closed-form overall probabilities.
WordVerdict judge_word(const MachineSpec& spec, const std::string& word, bool member, double eps,
                       const EngineCaps& caps = {});
ErrorVerdict error_verdict(const MachineSpec& spec, const Membership& membership,
                           const std::vector<std::string>& words, double eps,
                           const EngineCaps& caps = {});

struct GapProfile {
  int n_max = 0;
  std::map<int, std::optional<double>> g;
  std::map<int, double> min_member;     // over members of length <= n
  std::map<int, double> max_nonmember;  // over non-members of length <= n
};

// Acceptance probability used by the gap function: single-round p_acc for
// machines without reset states, overall acceptance otherwise.
double gap_acceptance(const MachineSpec& spec, const std::string& word,
                      const EngineCaps& caps = {});

GapProfile gap_profile(const MachineSpec& spec, const Membership& membership, int n_max,
                       const EngineCaps& caps = {});

}  // namespace qfa
