#include "qfa/qcfa.hpp"

#include <Eigen/Sparse>

#include <cmath>
#include <deque>
#include <limits>

#include "qfa/absorbing.hpp"

namespace qfa {

int QcfaSpec::classical_index(const std::string& label) const {
  for (int s = 0; s < num_classical(); ++s) {
    if (classical_labels[static_cast<std::size_t>(s)] == label) return s;
  }
  throw ArgumentError("no classical state labelled \"" + label + "\"");
}

ValidationReport validate_qcfa(const QcfaSpec& spec) {
  ValidationReport r;
  auto add = [&](const std::string& code, const std::string& msg) {
    r.violations.push_back({code, msg});
  };
  const int d = spec.quantum_states;
  const int ns = spec.num_classical();
  if (d <= 0) add("shape", "no quantum states");
  if (static_cast<int>(spec.quantum_labels.size()) != d) add("shape", "quantum label count mismatch");
  if (spec.initial_quantum < 0 || spec.initial_quantum >= d) add("shape", "initial quantum state out of range");
  if (ns == 0) add("shape", "no classical states");
  if (spec.initial_classical < 0 || spec.initial_classical >= ns) {
    add("shape", "initial classical state out of range");
  }
  for (int s : spec.accepting) {
    if (s < 0 || s >= ns) add("roles", "accepting state out of range");
    if (spec.rejecting.count(s)) add("roles", "state " + std::to_string(s) + " both accepts and rejects");
  }
  for (int s : spec.rejecting) {
    if (s < 0 || s >= ns) add("roles", "rejecting state out of range");
  }
  if (spec.is_halting(spec.initial_classical)) add("roles", "initial classical state halts");
  if (!r.ok()) return r;

  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  for (const auto& [key, op] : spec.program) {
    const std::string where = "(" + std::to_string(key.first) + ", " + std::to_string(key.second) + ")";
    if (const auto* u = std::get_if<ComplexMatrix>(&op)) {
      if (u->rows() != d || u->cols() != d) {
        add("shape", "unitary at " + where + " has wrong shape");
      } else if (!is_unitary(*u, kStructuralTol)) {
        add("unitarity", "operator at " + where + " is not unitary");
      }
      continue;
    }
    const auto& m = std::get<Measurement>(op);
    if (m.labels.size() != m.projectors.size()) add("shape", "measurement at " + where + " label count mismatch");
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    bool shapes_ok = true;
    for (const auto& p : m.projectors) {
      if (p.rows() != d || p.cols() != d) {
        shapes_ok = false;
        break;
      }
      sum += p;
      if ((p - p.adjoint()).cwiseAbs().maxCoeff() > kStructuralTol ||
          (p * p - p).cwiseAbs().maxCoeff() > kStructuralTol) {
        add("measurement", "outcome of " + where + " is not an orthogonal projector");
      }
    }
    if (!shapes_ok) {
      add("shape", "projector at " + where + " has wrong shape");
      continue;
    }
    for (std::size_t i = 0; i < m.projectors.size(); ++i) {
      for (std::size_t j = i + 1; j < m.projectors.size(); ++j) {
        if ((m.projectors[i] * m.projectors[j]).cwiseAbs().maxCoeff() > kStructuralTol) {
          add("measurement", "outcomes " + std::to_string(i) + " and " + std::to_string(j) +
                                 " of " + where + " overlap");
        }
      }
    }
    if ((sum - id).cwiseAbs().maxCoeff() > kStructuralTol) {
      add("measurement", "projectors of " + where + " do not sum to the identity");
    }
  }

  // totality over classical states reachable from the start, any symbol
  std::vector<char> seen(static_cast<std::size_t>(ns), 0);
  std::deque<int> todo{spec.initial_classical};
  seen[static_cast<std::size_t>(spec.initial_classical)] = 1;
  while (!todo.empty()) {
    const int s = todo.front();
    todo.pop_front();
    if (spec.is_halting(s)) continue;
    for (int sym = 0; sym < spec.num_symbols(); ++sym) {
      auto it = spec.program.find({s, sym});
      if (it == spec.program.end()) {
        add("program", "no operation for classical state " + std::to_string(s) + " on symbol " +
                           std::to_string(sym));
        continue;
      }
      const int outcomes = std::holds_alternative<ComplexMatrix>(it->second)
                               ? 1
                               : static_cast<int>(std::get<Measurement>(it->second).projectors.size());
      for (int j = 0; j < outcomes; ++j) {
        auto mv = spec.delta.find({s, sym, j});
        if (mv == spec.delta.end()) {
          add("delta", "no move for (" + std::to_string(s) + ", " + std::to_string(sym) + ", " +
                           std::to_string(j) + ")");
          continue;
        }
        const QcfaMove& m = mv->second;
        if (m.next < 0 || m.next >= ns) {
          add("delta", "move to out-of-range classical state");
          continue;
        }
        if (m.direction < -1 || m.direction > 1) add("delta", "head direction out of range");
        if (!seen[static_cast<std::size_t>(m.next)]) {
          seen[static_cast<std::size_t>(m.next)] = 1;
          todo.push_back(m.next);
        }
      }
    }
  }
  return r;
}

namespace {

constexpr double kNegligible = 1e-40;
constexpr double kOffTapeTol = 1e-12;
constexpr long kLiteralDefaultCap = 1000000;

using SparseC = Eigen::SparseMatrix<Complex>;

struct Outcome {
  SparseC proj;
  bool rank_one = false;
  ComplexVector ray;  // unit vector spanning a rank-1 projector
};

struct CompiledOp {
  bool unitary = true;
  SparseC u;
  std::vector<Outcome> outcomes;
};

SparseC to_sparse(const ComplexMatrix& m) {
  SparseC s = m.sparseView(1.0, 1e-300);
  s.makeCompressed();
  return s;
}

struct Compiled {
  std::map<std::pair<int, int>, CompiledOp> ops;
};

Compiled compile(const QcfaSpec& spec) {
  Compiled c;
  for (const auto& [key, op] : spec.program) {
    CompiledOp co;
    if (const auto* u = std::get_if<ComplexMatrix>(&op)) {
      co.u = to_sparse(*u);
    } else {
      co.unitary = false;
      for (const auto& p : std::get<Measurement>(op).projectors) {
        Outcome o;
        o.proj = to_sparse(p);
        const double rank = p.trace().real();
        if (std::abs(rank - 1.0) < 1e-9) {
          Index col = 0;
          p.diagonal().real().maxCoeff(&col);
          o.rank_one = true;
          o.ray = p.col(col) / std::sqrt(p(col, col).real());
        }
        co.outcomes.push_back(std::move(o));
      }
    }
    c.ops.emplace(key, std::move(co));
  }
  return c;
}

using ConfigKey = std::pair<int, int>;  // classical state, head position
using Ensemble = std::vector<ComplexVector>;
using Live = std::map<ConfigKey, Ensemble>;

// Regeneration point: where the register restarts in a known pure state.
struct SeedKey {
  int state, pos, source, symbol, outcome;
  auto operator<=>(const SeedKey&) const = default;
};

struct Flows {
  double acc = 0.0, acc_t = 0.0;
  double rej = 0.0, rej_t = 0.0;
  std::map<SeedKey, std::pair<double, double>> seeds;  // weight, weight * steps
};

double trace_of(const Ensemble& e) {
  double t = 0.0;
  for (const auto& v : e) t += v.squaredNorm();
  return t;
}

void compress(Ensemble& e, Index d) {
  if (static_cast<Index>(e.size()) <= d) return;
  ComplexMatrix rho = ComplexMatrix::Zero(d, d);
  for (const auto& v : e) rho.noalias() += v * v.adjoint();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho);
  Ensemble out;
  for (Index i = d - 1; i >= 0; --i) {
    const double lam = es.eigenvalues()(i);
    if (lam > kNegligible) out.push_back(es.eigenvectors().col(i) * std::sqrt(lam));
  }
  e = std::move(out);
}

class Stepper {
 public:
  Stepper(const QcfaSpec& spec, const TapeWord& word, bool regenerate)
      : spec_(spec), word_(word), compiled_(compile(spec)), regenerate_(regenerate) {}

  // One step of every live configuration; t is the step number charged.
  Live advance(const Live& cur, long t, Flows& flows) const {
    Live next;
    const int n = word_.length();
    for (const auto& [key, ens] : cur) {
      const auto [s, pos] = key;
      const int sym = word_.tape[static_cast<std::size_t>(pos)];
      auto it = compiled_.ops.find({s, sym});
      if (it == compiled_.ops.end()) {
        throw SpecError("no operation for classical state " + std::to_string(s) + " on symbol " +
                        std::to_string(sym));
      }
      const CompiledOp& op = it->second;
      auto route = [&](ComplexVector&& v, double w, int outcome, bool rank_one,
                       const ComplexVector* ray) {
        auto mv = spec_.delta.find({s, sym, outcome});
        if (mv == spec_.delta.end()) {
          throw SpecError("no move for classical state " + std::to_string(s) + ", symbol " +
                          std::to_string(sym) + ", outcome " + std::to_string(outcome));
        }
        const QcfaMove& m = mv->second;
        if (spec_.accepting.count(m.next)) {
          flows.acc += w;
          flows.acc_t += w * static_cast<double>(t);
          return;
        }
        if (spec_.rejecting.count(m.next)) {
          flows.rej += w;
          flows.rej_t += w * static_cast<double>(t);
          return;
        }
        const int np = pos + m.direction;
        if (np < 0 || np >= n) {
          if (w > kOffTapeTol) {
            throw SpecError("head leaves the tape from position " + std::to_string(pos) +
                            " with weight " + std::to_string(w));
          }
          return;
        }
        if (regenerate_ && rank_one) {
          (void)ray;
          auto& f = flows.seeds[SeedKey{m.next, np, s, sym, outcome}];
          f.first += w;
          f.second += w * static_cast<double>(t);
          return;
        }
        next[{m.next, np}].push_back(std::move(v));
      };

      if (op.unitary) {
        for (const auto& v : ens) {
          ComplexVector u = op.u * v;
          const double w = u.squaredNorm();
          if (w < kNegligible) continue;
          route(std::move(u), w, 0, false, nullptr);
        }
      } else {
        for (std::size_t j = 0; j < op.outcomes.size(); ++j) {
          const Outcome& o = op.outcomes[j];
          for (const auto& v : ens) {
            ComplexVector u = o.proj * v;
            const double w = u.squaredNorm();
            if (w < kNegligible) continue;
            route(std::move(u), w, static_cast<int>(j), o.rank_one, &o.ray);
          }
        }
      }
    }
    for (auto& kv : next) compress(kv.second, spec_.quantum_states);
    return next;
  }

  const ComplexVector& ray_of(const SeedKey& k) const {
    return compiled_.ops.at({k.source, k.symbol}).outcomes[static_cast<std::size_t>(k.outcome)].ray;
  }

 private:
  const QcfaSpec& spec_;
  const TapeWord& word_;
  Compiled compiled_;
  bool regenerate_;
};

double live_trace(const Live& l) {
  double t = 0.0;
  for (const auto& kv : l) t += trace_of(kv.second);
  return t;
}

void require_valid_qcfa(const QcfaSpec& spec) {
  const auto rep = validate_qcfa(spec);
  if (!rep.ok()) throw ValidationError(rep.summary());
}

}  // namespace

QcfaResult run_qcfa_literal(const QcfaSpec& spec, const TapeWord& word, const EngineCaps& caps) {
  require_valid_qcfa(spec);
  const long cap = caps.step_cap > 0 ? caps.step_cap : kLiteralDefaultCap;
  Stepper stepper(spec, word, false);
  Live live;
  ComplexVector v0 = ComplexVector::Zero(spec.quantum_states);
  v0(spec.initial_quantum) = 1.0;
  live[{spec.initial_classical, 0}].push_back(v0);
  Flows flows;
  long t = 0;
  double alive = 1.0;
  while (alive >= caps.tol && t < cap) {
    ++t;
    live = stepper.advance(live, t, flows);
    alive = live_trace(live);
  }
  QcfaResult r;
  r.acc = flows.acc;
  r.rej = flows.rej;
  r.residual = alive;
  r.nonterminating = alive >= caps.tol;
  r.expected_steps = flows.acc_t + flows.rej_t;
  return r;
}

QcfaResult run_qcfa(const QcfaSpec& spec, const TapeWord& word, const EngineCaps& caps) {
  require_valid_qcfa(spec);
  const long cap = caps.step_cap > 0 ? caps.step_cap : kLiteralDefaultCap;
  Stepper stepper(spec, word, true);

  // seed 0 is the initial configuration
  std::map<SeedKey, int> index;
  std::vector<SeedKey> keys;
  const SeedKey start{spec.initial_classical, 0, -1, -1, -1};
  index.emplace(start, 0);
  keys.push_back(start);

  struct SeedRun {
    Flows flows;
    double residual = 0.0;
  };
  std::vector<SeedRun> runs;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const SeedKey k = keys[i];
    ComplexVector v;
    if (i == 0) {
      v = ComplexVector::Zero(spec.quantum_states);
      v(spec.initial_quantum) = 1.0;
    } else {
      v = stepper.ray_of(k);
    }
    Live live;
    live[{k.state, k.pos}].push_back(v);
    SeedRun run;
    long t = 0;
    while (!live.empty() && t < cap) {
      ++t;
      live = stepper.advance(live, t, run.flows);
    }
    run.residual = live_trace(live);
    for (const auto& kv : run.flows.seeds) {
      if (!index.count(kv.first)) {
        index.emplace(kv.first, static_cast<int>(keys.size()));
        keys.push_back(kv.first);
      }
    }
    runs.push_back(std::move(run));
  }

  AbsorbingChain chain(static_cast<int>(keys.size()), 3);
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const int from = static_cast<int>(i);
    const SeedRun& run = runs[i];
    chain.add_absorption(from, 0, run.flows.acc, run.flows.acc_t);
    chain.add_absorption(from, 1, run.flows.rej, run.flows.rej_t);
    chain.add_absorption(from, 2, run.residual, 0.0);
    for (const auto& [key, f] : run.flows.seeds) {
      chain.add_transition(from, index.at(key), f.first, f.second);
    }
  }
  const auto sol = chain.solve(0);
  QcfaResult r;
  r.acc = sol.prob[0];
  r.rej = sol.prob[1];
  r.residual = sol.prob[2] + sol.lost;
  r.nonterminating = r.residual >= caps.tol;
  r.expected_steps = r.residual <= 1e-9 ? sol.time_weight[0] + sol.time_weight[1]
                                        : std::numeric_limits<double>::infinity();
  r.seeds = static_cast<long>(keys.size());
  return r;
}

QcfaSpec lift_reset_to_qcfa(const MachineSpec& spec) {
  if (spec.kind != Kind::Quantum || spec.motion != Motion::OneWay) {
    throw UnsupportedError("lift needs a one-way quantum machine");
  }
  require_valid(spec);
  const int d = spec.num_states();
  QcfaSpec out;
  out.quantum_states = d;
  out.initial_quantum = spec.initial;
  out.quantum_labels = spec.state_labels;
  out.alphabet = spec.alphabet;
  const int apply = 0, measure = 1, acc = 2, rej = 3;
  out.classical_labels = {"apply", "measure", "accept", "reject"};
  std::map<int, int> walker;  // reset state -> classical walker
  for (const auto& kv : spec.roles.reset_targets) {
    walker[kv.first] = static_cast<int>(out.classical_labels.size());
    out.classical_labels.push_back("walk:" + spec.state_labels[static_cast<std::size_t>(kv.first)]);
  }
  out.initial_classical = apply;
  out.accepting = {acc};
  out.rejecting = {rej};

  auto diag_projector = [&](auto pred) {
    ComplexMatrix p = ComplexMatrix::Zero(d, d);
    for (int q = 0; q < d; ++q) {
      if (pred(q)) p(q, q) = 1.0;
    }
    return p;
  };
  Measurement meas;
  std::vector<QcfaMove> moves_mid, moves_cent;
  auto add_outcome = [&](const std::string& label, ComplexMatrix p, QcfaMove mid, QcfaMove cent) {
    if (p.cwiseAbs().maxCoeff() == 0.0) return;
    meas.projectors.push_back(std::move(p));
    meas.labels.push_back(label);
    moves_mid.push_back(mid);
    moves_cent.push_back(cent);
  };
  add_outcome("continue", diag_projector([&](int q) { return spec.roles.nonhalting.count(q) > 0; }),
              {apply, +1}, {apply, +1});
  add_outcome("accept", diag_projector([&](int q) { return spec.roles.accepting.count(q) > 0; }),
              {acc, 0}, {acc, 0});
  add_outcome("reject", diag_projector([&](int q) { return spec.roles.rejecting.count(q) > 0; }),
              {rej, 0}, {rej, 0});
  for (const auto& [r, w] : walker) {
    add_outcome("reset:" + spec.state_labels[static_cast<std::size_t>(r)],
                diag_projector([&](int q) { return q == r; }), {w, -1}, {w, 0});
  }

  for (int sym = 0; sym < spec.num_symbols(); ++sym) {
    out.program[{apply, sym}] = spec.transitions[static_cast<std::size_t>(sym)];
    out.delta[{apply, sym, 0}] = {measure, 0};
    out.program[{measure, sym}] = meas;
    const auto& moves = sym == spec.cent() ? moves_cent : moves_mid;
    for (std::size_t j = 0; j < moves.size(); ++j) {
      out.delta[{measure, sym, static_cast<int>(j)}] = moves[j];
    }
    for (const auto& [r, w] : walker) {
      if (sym == spec.cent()) {
        const int target = spec.roles.reset_targets.at(r);
        ComplexMatrix swap = ComplexMatrix::Identity(d, d);
        swap(r, r) = 0.0;
        swap(target, target) = 0.0;
        swap(r, target) = 1.0;
        swap(target, r) = 1.0;
        out.program[{w, sym}] = swap;
        out.delta[{w, sym, 0}] = {apply, 0};
      } else {
        out.program[{w, sym}] = ComplexMatrix::Identity(d, d);
        out.delta[{w, sym, 0}] = {w, -1};
      }
    }
  }
  return out;
}

}  // namespace qfa
