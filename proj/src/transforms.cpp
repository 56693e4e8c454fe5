#include <cmath>

#include "build_util.hpp"
#include "qfa/zoo.hpp"

namespace qfa {

using detail::require_eps;

namespace {

void require_oneway_quantum_base(const MachineSpec& base) {
  if (base.kind != Kind::Quantum || base.motion != Motion::OneWay) {
    throw UnsupportedError("wrappers need a one-way quantum base");
  }
  if (base.has_reset()) throw UnsupportedError("wrappers need a base without reset states");
  require_valid(base);
}

void require_gap(const GapBound& gap, GapBound::Form form) {
  if (gap.form != form) throw ArgumentError("gap bound has the wrong form for this wrapper");
  if (!(gap.a > 0.0 && gap.a <= 1.0)) throw ArgumentError("gap prefactor must lie in (0, 1]");
  if (form == GapBound::Form::Exponential && !(gap.c > 1.0)) {
    throw ArgumentError("gap base must exceed 1");
  }
}

// Base columns padded with `extra` new states; the caller overrides a few.
std::vector<PartialMatrix> padded_columns(const MachineSpec& base, int extra) {
  const int n = base.num_states();
  std::vector<PartialMatrix> out;
  for (const auto& m : base.transitions) {
    PartialMatrix p{n + extra, {}};
    for (int q = 0; q < n; ++q) {
      ComplexVector v = ComplexVector::Zero(n + extra);
      v.head(n) = m.col(q);
      p.columns[q] = v;
    }
    out.push_back(std::move(p));
  }
  return out;
}

MachineSpec finish_wrapper(const MachineSpec& base, const std::vector<PartialMatrix>& cols,
                           const std::vector<std::string>& new_labels, std::set<int> new_nonhalting,
                           int w_rej, int w_restart) {
  MachineSpec s;
  s.kind = Kind::Quantum;
  s.motion = Motion::OneWay;
  s.alphabet = base.alphabet;
  s.state_labels = base.state_labels;
  for (const auto& l : new_labels) s.state_labels.push_back(l);
  s.initial = base.initial;
  s.directions.assign(s.state_labels.size(), 1);
  s.roles.nonhalting = base.roles.nonhalting;
  s.roles.nonhalting.insert(new_nonhalting.begin(), new_nonhalting.end());
  s.roles.accepting = base.roles.accepting;
  s.roles.rejecting = {w_rej};
  // base rejections now restart the round
  for (int r : base.roles.rejecting) s.roles.reset_targets[r] = base.initial;
  s.roles.reset_targets[w_restart] = base.initial;
  for (const auto& p : cols) s.transitions.push_back(complete_unitary(p));
  MachineSpec out = canonicalize(s);
  require_valid(out);
  return out;
}

}  // namespace

MachineSpec wrap_exponential(const MachineSpec& base, const GapBound& gap, double eps) {
  require_oneway_quantum_base(base);
  require_gap(gap, GapBound::Form::Exponential);
  require_eps(eps);
  const int n = base.num_states();
  const int W = n, w_rej = n + 1, w_restart = n + 2;
  auto cols = padded_columns(base, 3);
  const double h = 1.0 / std::sqrt(2.0);

  ComplexVector start = ComplexVector::Zero(n + 3);
  start.head(n) = h * base.transitions[0].col(base.initial);
  start(W) = h;
  cols[0].columns[base.initial] = start;

  ComplexVector walk = ComplexVector::Zero(n + 3);
  walk(W) = 1.0 / std::sqrt(gap.c);
  walk(w_restart) = std::sqrt(1.0 - 1.0 / gap.c);
  for (int s = 1; s < base.dollar(); ++s) cols[static_cast<std::size_t>(s)].columns[W] = walk;

  ComplexVector last = ComplexVector::Zero(n + 3);
  last(w_rej) = std::sqrt(gap.a * eps);
  last(w_restart) = std::sqrt(1.0 - gap.a * eps);
  cols[static_cast<std::size_t>(base.dollar())].columns[W] = last;

  return finish_wrapper(base, cols, {"W", "w_rej", "w_restart"}, {W}, w_rej, w_restart);
}

MachineSpec wrap_constant(const MachineSpec& base, const GapBound& gap, double eps) {
  require_oneway_quantum_base(base);
  require_gap(gap, GapBound::Form::Constant);
  require_eps(eps);
  const int n = base.num_states();
  const int w_rej = n, w_restart = n + 1;
  auto cols = padded_columns(base, 2);
  ComplexVector start = ComplexVector::Zero(n + 2);
  start.head(n) = base.transitions[0].col(base.initial) / std::sqrt(2.0);
  start(w_rej) = std::sqrt(gap.a * eps / 2.0);
  start(w_restart) = std::sqrt((1.0 - gap.a * eps) / 2.0);
  cols[0].columns[base.initial] = start;
  return finish_wrapper(base, cols, {"w_rej", "w_restart"}, {}, w_rej, w_restart);
}

MachineSpec swap_accept_reject(const MachineSpec& spec) {
  MachineSpec out = spec;
  std::swap(out.roles.accepting, out.roles.rejecting);
  return out;
}

double squared_error_bound(double eps) { return eps * eps / (1.0 - 2.0 * eps + 2.0 * eps * eps); }

PfaLift pfa_to_qfa_restart(const MachineSpec& pfa, double eps) {
  if (pfa.kind != Kind::Probabilistic || pfa.motion != Motion::OneWay) {
    throw UnsupportedError("pfa_to_qfa_restart needs a one-way probabilistic machine");
  }
  if (!pfa.is_restart_only()) throw UnsupportedError("pfa_to_qfa_restart needs a restart-only machine");
  require_valid(pfa);
  const int n = pfa.num_states();
  const int s_acc = n, s_rej = n + 1, m = n + 2;

  MachineSpec s;
  s.kind = Kind::Quantum;
  s.motion = Motion::OneWay;
  s.alphabet = pfa.alphabet;
  s.state_labels = pfa.state_labels;
  s.state_labels.push_back("s_acc");
  s.state_labels.push_back("s_rej");
  for (int i = 0; i < m; ++i) s.state_labels.push_back("aux" + std::to_string(i));
  s.initial = pfa.initial;
  s.directions.assign(static_cast<std::size_t>(2 * m), 1);

  double scale = 0.0;
  for (int sym = 0; sym < pfa.num_symbols(); ++sym) {
    const bool last = sym == pfa.dollar();
    const ComplexMatrix& p = pfa.transitions[static_cast<std::size_t>(sym)];
    RealMatrix a = RealMatrix::Identity(m, m);
    for (int q = 0; q < n; ++q) {
      switch (pfa.roles.role_of(q)) {
        case Role::Nonhalting:
          a.row(q).setZero();
          for (int t = 0; t < n; ++t) {
            const double w = p(q, t).real();
            if (last && pfa.roles.accepting.count(t)) a(q, s_acc) += w;
            else if (last && pfa.roles.rejecting.count(t)) a(q, s_rej) += w;
            else a(q, t) += w;
          }
          break;
        case Role::Accepting:
        case Role::Rejecting:
          // held until the right end-marker
          if (last) {
            a.row(q).setZero();
            a(q, pfa.roles.accepting.count(q) ? s_acc : s_rej) = 1.0;
          }
          break;
        case Role::Reset:
          break;
      }
    }
    const StochasticEmbedding e = embed_stochastic(a);
    scale = e.scale;
    s.transitions.push_back(e.unitary.transpose());
  }

  for (int q = 0; q < 2 * m; ++q) {
    if (q == s_acc) s.roles.accepting.insert(q);
    else if (q == s_rej) s.roles.rejecting.insert(q);
    else if (q < n && !pfa.roles.is_reset(q)) s.roles.nonhalting.insert(q);
    else s.roles.reset_targets[q] = pfa.initial;
  }
  PfaLift out;
  out.machine = canonicalize(s);
  require_valid(out.machine);
  out.scale = scale;
  out.eps_prime = squared_error_bound(eps);
  out.s_acc = out.machine.state_index("s_acc");
  out.s_rej = out.machine.state_index("s_rej");
  return out;
}

int amplification_rounds(double eps, double eps_prime) {
  if (!(eps > 0.0 && eps < 0.5)) throw ArgumentError("eps must lie in (0, 1/2)");
  if (!(eps_prime > 0.0 && eps_prime < eps)) throw ArgumentError("target error must lie in (0, eps)");
  for (int k = 0; k < 100000; ++k) {
    const int trials = 2 * k + 1;
    double tail = 0.0;
    for (int i = k + 1; i <= trials; ++i) {
      const double log_term = std::lgamma(trials + 1.0) - std::lgamma(i + 1.0) -
                              std::lgamma(trials - i + 1.0) + i * std::log(eps) +
                              (trials - i) * std::log1p(-eps);
      tail += std::exp(log_term);
    }
    if (tail <= eps_prime) return k;
  }
  throw ArgumentError("target error unreachable");
}

AmplifiedMachine amplify_reset(const MachineSpec& spec, double eps, double eps_prime) {
  if (spec.motion != Motion::OneWay) throw UnsupportedError("amplify_reset needs a one-way machine");
  require_valid(spec);
  const int k = amplification_rounds(eps, eps_prime);
  const int side = k + 1;
  const int n = spec.num_states();
  const int copies = side * side;
  auto at = [&](int i, int j, int q) { return (i * side + j) * n + q; };

  MachineSpec s;
  s.kind = spec.kind;
  s.motion = spec.motion;
  s.alphabet = spec.alphabet;
  s.initial = at(0, 0, spec.initial);
  s.directions.assign(static_cast<std::size_t>(copies * n), 1);
  for (const auto& m : spec.transitions) {
    ComplexMatrix big = ComplexMatrix::Zero(copies * n, copies * n);
    for (int c = 0; c < copies; ++c) big.block(c * n, c * n, n, n) = m;
    s.transitions.push_back(std::move(big));
  }
  for (int i = 0; i < side; ++i) {
    for (int j = 0; j < side; ++j) {
      for (int q = 0; q < n; ++q) {
        s.state_labels.push_back(spec.state_labels[static_cast<std::size_t>(q)] + "@" +
                                 std::to_string(i) + "," + std::to_string(j));
        const int g = at(i, j, q);
        switch (spec.roles.role_of(q)) {
          case Role::Nonhalting:
            s.roles.nonhalting.insert(g);
            break;
          case Role::Accepting:
            if (i == k) s.roles.accepting.insert(g);
            else s.roles.reset_targets[g] = at(i + 1, j, spec.initial);
            break;
          case Role::Rejecting:
            if (j == k) s.roles.rejecting.insert(g);
            else s.roles.reset_targets[g] = at(i, j + 1, spec.initial);
            break;
          case Role::Reset:
            s.roles.reset_targets[g] = at(i, j, spec.roles.reset_targets.at(q));
            break;
        }
      }
    }
  }
  AmplifiedMachine out;
  out.k = k;
  out.machine = canonicalize(s);
  require_valid(out.machine);
  return out;
}

MachineSpec chain_one_sided(const MachineSpec& spec, int copies, CertainSide side) {
  if (copies < 1) throw ArgumentError("need at least one copy");
  if (spec.motion != Motion::OneWay) throw UnsupportedError("chain_one_sided needs a one-way machine");
  require_valid(spec);
  const int n = spec.num_states();
  MachineSpec s;
  s.kind = spec.kind;
  s.motion = spec.motion;
  s.alphabet = spec.alphabet;
  s.initial = spec.initial;
  s.directions.assign(static_cast<std::size_t>(copies * n), 1);
  for (const auto& m : spec.transitions) {
    ComplexMatrix big = ComplexMatrix::Zero(copies * n, copies * n);
    for (int c = 0; c < copies; ++c) big.block(c * n, c * n, n, n) = m;
    s.transitions.push_back(std::move(big));
  }
  const bool members = side == CertainSide::Members;
  for (int t = 0; t < copies; ++t) {
    const bool last = t == copies - 1;
    for (int q = 0; q < n; ++q) {
      s.state_labels.push_back(spec.state_labels[static_cast<std::size_t>(q)] + "#" + std::to_string(t));
      const int g = t * n + q;
      const int next_start = (t + 1) * n + spec.initial;
      switch (spec.roles.role_of(q)) {
        case Role::Nonhalting:
          s.roles.nonhalting.insert(g);
          break;
        case Role::Accepting:
          if (members && !last) s.roles.reset_targets[g] = next_start;
          else s.roles.accepting.insert(g);
          break;
        case Role::Rejecting:
          if (!members && !last) s.roles.reset_targets[g] = next_start;
          else s.roles.rejecting.insert(g);
          break;
        case Role::Reset:
          s.roles.reset_targets[g] = t * n + spec.roles.reset_targets.at(q);
          break;
      }
    }
  }
  MachineSpec out = canonicalize(s);
  require_valid(out);
  return out;
}

MachineSpec restart_to_twoway(const MachineSpec& pfa) {
  if (pfa.kind != Kind::Probabilistic) throw UnsupportedError("restart_to_twoway needs a probabilistic machine");
  if (pfa.motion != Motion::OneWay) throw UnsupportedError("restart_to_twoway needs a one-way machine");
  if (!pfa.is_restart_only()) throw UnsupportedError("restart_to_twoway needs a restart-only machine");
  require_valid(pfa);
  const int n = pfa.num_states();
  std::vector<int> slot(static_cast<std::size_t>(n), -1);
  MachineSpec s;
  s.kind = Kind::Probabilistic;
  s.motion = Motion::TwoWay;
  s.alphabet = pfa.alphabet;
  for (int q = 0; q < n; ++q) {
    if (pfa.roles.is_reset(q)) continue;
    slot[static_cast<std::size_t>(q)] = s.num_states();
    s.state_labels.push_back(pfa.state_labels[static_cast<std::size_t>(q)]);
    s.directions.push_back(1);
    if (pfa.roles.nonhalting.count(q)) s.roles.nonhalting.insert(slot[static_cast<std::size_t>(q)]);
    if (pfa.roles.accepting.count(q)) s.roles.accepting.insert(slot[static_cast<std::size_t>(q)]);
    if (pfa.roles.rejecting.count(q)) s.roles.rejecting.insert(slot[static_cast<std::size_t>(q)]);
  }
  // L walks left after a restart; L0 is a restart read on CENT itself
  const int L = s.num_states(), L0 = L + 1;
  s.state_labels.push_back("L");
  s.state_labels.push_back("L0");
  s.directions.push_back(-1);
  s.directions.push_back(0);
  s.roles.nonhalting.insert(L);
  s.roles.nonhalting.insert(L0);
  s.initial = slot[static_cast<std::size_t>(pfa.initial)];
  const int m = s.num_states();

  for (int sym = 0; sym < pfa.num_symbols(); ++sym) {
    const bool cent = sym == pfa.cent();
    const ComplexMatrix& p = pfa.transitions[static_cast<std::size_t>(sym)];
    ComplexMatrix a = ComplexMatrix::Zero(m, m);
    auto copy_row = [&](int from_old, int to_row) {
      for (int t = 0; t < n; ++t) {
        const double w = p(from_old, t).real();
        if (w == 0.0) continue;
        const int dest = pfa.roles.is_reset(t) ? (cent ? L0 : L) : slot[static_cast<std::size_t>(t)];
        a(to_row, dest) += w;
      }
    };
    for (int q = 0; q < n; ++q) {
      if (slot[static_cast<std::size_t>(q)] >= 0) copy_row(q, slot[static_cast<std::size_t>(q)]);
    }
    if (cent) {
      copy_row(pfa.initial, L);
      copy_row(pfa.initial, L0);
    } else {
      a(L, L) = 1.0;
      a(L0, L) = 1.0;
    }
    s.transitions.push_back(std::move(a));
  }
  MachineSpec out = canonicalize(s);
  require_valid(out);
  return out;
}

}  // namespace qfa
