#pragma once

#include <map>
#include <vector>

#include "qfa/machine.hpp"

namespace qfa {

struct EngineCaps {
  long step_cap = 0;  // 0 = default 10 * n * |Q| (two-way only)
  double tol = 1e-12;
};

// One round from a given start state. Step k (1-based, CENT is step 1) is
// charged to every event measured right after the k-th transition.
struct RoundResult {
  double p_acc = 0.0;
  double p_rej = 0.0;
  std::map<int, double> p_reset;  // target state -> probability

  // sum of k * p over events of each kind; expected_steps is their total
  double steps_acc = 0.0;
  double steps_rej = 0.0;
  std::map<int, double> steps_reset;
  double expected_steps = 0.0;

  long max_steps = 0;
  double residual = 0.0;
  bool nonterminating = false;

  double p_halt() const { return p_acc + p_rej; }
  double p_reset_total() const;
};

RoundResult run_round_oneway(const MachineSpec& spec, const TapeWord& word, int start,
                             const EngineCaps& caps = {});

// Throws IllFormedMachine only for one-way machines; a two-way round that hits
// the cap comes back with nonterminating set and the leftover in residual.
RoundResult run_round_twoway(const MachineSpec& spec, const TapeWord& word, int start,
                             const EngineCaps& caps = {});

// Dispatches on spec.motion.
RoundResult run_round(const MachineSpec& spec, const TapeWord& word, int start,
                      const EngineCaps& caps = {});

// Pre-measurement state vectors after each transition of a one-way round,
// without any renormalisation (entry k-1 belongs to step k).
std::vector<ComplexVector> oneway_amplitude_trace(const MachineSpec& spec, const TapeWord& word,
                                                  int start);

using RoundTable = std::map<int, RoundResult>;

// Rounds for the initial state and every target reachable from it through
// positive-probability resets.
RoundTable round_table(const MachineSpec& spec, const TapeWord& word, const EngineCaps& caps = {});

long default_step_cap(const MachineSpec& spec, const TapeWord& word);

}  // namespace qfa
