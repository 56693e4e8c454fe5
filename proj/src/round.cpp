#include "qfa/round.hpp"

#include <cmath>
#include <deque>
#include <string>

namespace qfa {

double RoundResult::p_reset_total() const {
  double s = 0.0;
  for (const auto& kv : p_reset) s += kv.second;
  return s;
}

long default_step_cap(const MachineSpec& spec, const TapeWord& word) {
  return 10L * word.length() * spec.num_states();
}

namespace {

void require_start(const MachineSpec& spec, int start) {
  if (start < 0 || start >= spec.num_states() || !spec.roles.nonhalting.count(start)) {
    throw ArgumentError("round start " + std::to_string(start) + " is not a nonhalting state");
  }
}

// Measures psi (indexed by state * stride + cell) and zeroes every halting or
// reset component. Returns the nonhalting weight left.
double measure(const MachineSpec& spec, ComplexVector& psi, Index stride, long step,
               RoundResult& r) {
  const int q_count = spec.num_states();
  double alive = 0.0;
  for (int q = 0; q < q_count; ++q) {
    const Role role = spec.roles.role_of(q);
    double w = 0.0;
    for (Index i = 0; i < stride; ++i) w += outcome_weight(spec.kind, psi(q * stride + i));
    switch (role) {
      case Role::Nonhalting:
        alive += w;
        continue;
      case Role::Accepting:
        r.p_acc += w;
        r.steps_acc += static_cast<double>(step) * w;
        break;
      case Role::Rejecting:
        r.p_rej += w;
        r.steps_rej += static_cast<double>(step) * w;
        break;
      case Role::Reset: {
        const int target = spec.roles.reset_targets.at(q);
        r.p_reset[target] += w;
        r.steps_reset[target] += static_cast<double>(step) * w;
        break;
      }
    }
    psi.segment(q * stride, stride).setZero();
  }
  return alive;
}

void finish(RoundResult& r) {
  r.expected_steps = r.steps_acc + r.steps_rej;
  for (const auto& kv : r.steps_reset) r.expected_steps += kv.second;
}

}  // namespace

RoundResult run_round_oneway(const MachineSpec& spec, const TapeWord& word, int start,
                             const EngineCaps& caps) {
  if (spec.motion != Motion::OneWay) throw UnsupportedError("run_round_oneway: two-way machine");
  require_start(spec, start);
  RoundResult r;
  ComplexVector psi = ComplexVector::Zero(spec.num_states());
  psi(start) = 1.0;
  double alive = 1.0;
  long step = 0;
  for (int sym : word.tape) {
    ++step;
    psi = column_operator(spec, sym) * psi;
    alive = measure(spec, psi, 1, step, r);
  }
  r.max_steps = word.length();
  r.residual = alive;
  finish(r);
  if (alive > caps.tol) {
    throw IllFormedMachine("nonhalting weight " + std::to_string(alive) +
                           " survives the right end-marker on \"" + word.input + "\"");
  }
  return r;
}

RoundResult run_round_twoway(const MachineSpec& spec, const TapeWord& word, int start,
                             const EngineCaps& caps) {
  if (spec.motion != Motion::TwoWay) throw UnsupportedError("run_round_twoway: one-way machine");
  require_start(spec, start);
  const long cap = caps.step_cap > 0 ? caps.step_cap : default_step_cap(spec, word);
  const Index n = word.length();
  const ComplexMatrix op = induced_step_operator(spec, word);
  RoundResult r;
  ComplexVector psi = ComplexVector::Zero(op.rows());
  psi(start * n) = 1.0;
  double alive = 1.0;
  long step = 0;
  while (alive >= caps.tol && step < cap) {
    ++step;
    psi = op * psi;
    alive = measure(spec, psi, n, step, r);
  }
  r.max_steps = step;
  r.residual = alive;
  r.nonterminating = alive >= caps.tol;
  finish(r);
  return r;
}

RoundResult run_round(const MachineSpec& spec, const TapeWord& word, int start,
                      const EngineCaps& caps) {
  return spec.motion == Motion::OneWay ? run_round_oneway(spec, word, start, caps)
                                       : run_round_twoway(spec, word, start, caps);
}

std::vector<ComplexVector> oneway_amplitude_trace(const MachineSpec& spec, const TapeWord& word,
                                                  int start) {
  if (spec.motion != Motion::OneWay) throw UnsupportedError("amplitude trace: two-way machine");
  require_start(spec, start);
  std::vector<ComplexVector> out;
  ComplexVector psi = ComplexVector::Zero(spec.num_states());
  psi(start) = 1.0;
  for (int sym : word.tape) {
    psi = column_operator(spec, sym) * psi;
    out.push_back(psi);
    for (int q = 0; q < spec.num_states(); ++q) {
      if (!spec.roles.nonhalting.count(q)) psi(q) = 0.0;
    }
  }
  return out;
}

RoundTable round_table(const MachineSpec& spec, const TapeWord& word, const EngineCaps& caps) {
  RoundTable table;
  std::deque<int> todo{spec.initial};
  while (!todo.empty()) {
    const int s = todo.front();
    todo.pop_front();
    if (table.count(s)) continue;
    RoundResult r = run_round(spec, word, s, caps);
    for (const auto& kv : r.p_reset) {
      if (kv.second > 0.0 && !table.count(kv.first)) todo.push_back(kv.first);
    }
    table.emplace(s, std::move(r));
  }
  return table;
}

}  // namespace qfa
