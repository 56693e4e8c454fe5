#pragma once

#include <map>
#include <set>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "qfa/machine.hpp"
#include "qfa/round.hpp"

namespace qfa {

struct Measurement {
  std::vector<ComplexMatrix> projectors;
  std::vector<std::string> labels;  // one per projector
};

using QcfaOp = std::variant<ComplexMatrix, Measurement>;

struct QcfaMove {
  int next = 0;
  int direction = 0;  // -1, 0, +1
  bool operator==(const QcfaMove&) const = default;
};

// Two-way automaton with a quantum register and a classical head/control.
// Tape symbols use the MachineSpec numbering (0 = CENT, k+1 = DOLLAR).
struct QcfaSpec {
  int quantum_states = 0;
  int initial_quantum = 0;
  std::vector<std::string> quantum_labels;
  std::string alphabet;
  std::vector<std::string> classical_labels;
  int initial_classical = 0;
  std::set<int> accepting;
  std::set<int> rejecting;
  // (classical state, symbol) -> operation
  std::map<std::pair<int, int>, QcfaOp> program;
  // (classical state, symbol, outcome) -> move; unitary entries use outcome 0
  std::map<std::tuple<int, int, int>, QcfaMove> delta;

  int num_classical() const { return static_cast<int>(classical_labels.size()); }
  int num_symbols() const { return static_cast<int>(alphabet.size()) + 2; }
  bool is_halting(int s) const { return accepting.count(s) || rejecting.count(s); }
  int classical_index(const std::string& label) const;
};

ValidationReport validate_qcfa(const QcfaSpec& spec);

struct QcfaResult {
  double acc = 0.0;
  double rej = 0.0;
  double residual = 0.0;
  double expected_steps = 0.0;  // +inf when residual is not negligible
  bool nonterminating = false;
  long seeds = 0;  // regeneration points used by run_qcfa
};

// Exact evaluation. Every rank-1 measurement outcome leaves the register in a
// fixed pure state, so the computation regenerates there; each such point is
// simulated once until its weight halts or reaches another regeneration point,
// and the resulting chain is solved in closed form. step_cap bounds a single
// stretch between regeneration points.
QcfaResult run_qcfa(const QcfaSpec& spec, const TapeWord& word, const EngineCaps& caps = {});

// Plain step-by-step evolution of the mixed configuration until the live
// trace drops below caps.tol or caps.step_cap steps have been taken.
QcfaResult run_qcfa_literal(const QcfaSpec& spec, const TapeWord& word,
                            const EngineCaps& caps = {});

// Apply-then-measure simulation of a one-way quantum machine with reset.
// Resets are refined into rank-1 outcomes; each one walks the head back to
// CENT and then swaps the reset state with its target.
QcfaSpec lift_reset_to_qcfa(const MachineSpec& spec);

}  // namespace qfa
