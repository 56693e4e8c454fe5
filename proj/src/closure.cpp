#include "qfa/closure.hpp"

#include <cmath>
#include <limits>

#include "qfa/absorbing.hpp"

namespace qfa {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLostTol = 1e-9;
constexpr double kRatioSlack = 1e-12;

void fill_report(DecisionReport& d, const AbsorbingChain::Solution& sol, double extra_lost) {
  d.acc = sol.prob[0];
  d.rej = sol.prob[1];
  d.lost = sol.lost + extra_lost;
  d.halts_almost_surely = d.lost <= kLostTol && d.acc + d.rej > 0.0;
  d.degenerate = d.acc + d.rej == 0.0;
  d.expected_total_steps = d.halts_almost_surely ? sol.time_weight[0] + sol.time_weight[1] : kInf;
}

}  // namespace

double expected_runtime_bound(double p_halt, double max_steps) {
  if (p_halt <= 0.0) return kInf;
  return max_steps / p_halt;
}

DecisionReport overall_decision(const RoundTable& table, int initial) {
  if (!table.count(initial)) throw ArgumentError("round table has no entry for the initial state");
  std::map<int, int> index;
  for (const auto& kv : table) index.emplace(kv.first, static_cast<int>(index.size()));

  // sinks: 0 accept, 1 reject, 2 unresolved
  AbsorbingChain chain(static_cast<int>(index.size()), 3);
  for (const auto& [s, r] : table) {
    const int i = index.at(s);
    chain.add_absorption(i, 0, r.p_acc, r.steps_acc);
    chain.add_absorption(i, 1, r.p_rej, r.steps_rej);
    chain.add_absorption(i, 2, r.residual, 0.0);
    for (const auto& [t, p] : r.p_reset) {
      if (p <= 0.0) continue;
      auto it = index.find(t);
      if (it == index.end()) throw ArgumentError("round table misses reset target " + std::to_string(t));
      chain.add_transition(i, it->second, p, r.steps_reset.at(t));
    }
  }
  const auto sol = chain.solve(index.at(initial));
  DecisionReport d;
  fill_report(d, sol, sol.prob[2]);
  const RoundResult& first = table.at(initial);
  d.lemma4_bound = expected_runtime_bound(first.p_halt(), static_cast<double>(first.max_steps));
  return d;
}

DecisionReport analyze_markov(const MachineSpec& spec, const std::string& word) {
  if (spec.kind != Kind::Probabilistic) {
    throw UnsupportedError("analyze_markov needs a probabilistic machine");
  }
  const TapeWord tw = TapeWord::make(spec, word);
  const int n = tw.length();
  std::vector<int> slot(static_cast<std::size_t>(spec.num_states()), -1);
  int nh = 0;
  for (int q : spec.roles.nonhalting) slot[static_cast<std::size_t>(q)] = nh++;
  auto config = [&](int q, int i) { return slot[static_cast<std::size_t>(q)] * n + i; };

  // only configurations reachable from (initial, 0) enter the chain, so
  // unused rows (say, a start state sitting on DOLLAR) are never checked
  const int total = nh * n;
  std::vector<int> node(static_cast<std::size_t>(total), -1);
  std::vector<int> order;
  auto visit = [&](int c) {
    if (node[static_cast<std::size_t>(c)] < 0) {
      node[static_cast<std::size_t>(c)] = static_cast<int>(order.size());
      order.push_back(c);
    }
    return node[static_cast<std::size_t>(c)];
  };
  std::vector<int> state_of_slot(static_cast<std::size_t>(nh));
  for (int q : spec.roles.nonhalting) state_of_slot[static_cast<std::size_t>(slot[static_cast<std::size_t>(q)])] = q;

  struct Edge {
    int from, to;  // to < 0: absorbing sink -to - 1
    double p;
  };
  std::vector<Edge> edges;
  visit(config(spec.initial, 0));
  for (std::size_t k = 0; k < order.size(); ++k) {
    const int c = order[k];
    const int q = state_of_slot[static_cast<std::size_t>(c / n)];
    const int i = c % n;
    const int from = static_cast<int>(k);
    const ComplexMatrix& m = spec.transitions[static_cast<std::size_t>(tw.tape[static_cast<std::size_t>(i)])];
    for (int qp = 0; qp < spec.num_states(); ++qp) {
      const double p = m(q, qp).real();
      if (p <= 0.0) continue;
      switch (spec.roles.role_of(qp)) {
        case Role::Accepting:
          edges.push_back({from, -1, p});
          break;
        case Role::Rejecting:
          edges.push_back({from, -2, p});
          break;
        case Role::Reset:
          edges.push_back({from, visit(config(spec.roles.reset_targets.at(qp), 0)), p});
          break;
        case Role::Nonhalting: {
          const int d = spec.directions[static_cast<std::size_t>(qp)];
          if (spec.motion == Motion::OneWay && i == n - 1 && p > 1e-12) {
            throw IllFormedMachine("nonhalting mass survives the right end-marker");
          }
          edges.push_back({from, visit(config(qp, ((i + d) % n + n) % n)), p});
          break;
        }
      }
    }
  }
  AbsorbingChain chain(static_cast<int>(order.size()), 2);
  for (const Edge& e : edges) {
    if (e.to < 0) chain.add_absorption(e.from, -e.to - 1, e.p, e.p);
    else chain.add_transition(e.from, e.to, e.p, e.p);
  }
  const auto sol = chain.solve(0);
  DecisionReport d;
  fill_report(d, sol, 0.0);
  if (spec.motion == Motion::OneWay) {
    const RoundResult r = run_round_oneway(spec, tw, spec.initial);
    d.lemma4_bound = expected_runtime_bound(r.p_halt(), static_cast<double>(r.max_steps));
  } else {
    d.lemma4_bound = kInf;
  }
  return d;
}

DecisionReport decide(const MachineSpec& spec, const std::string& word, const EngineCaps& caps) {
  if (spec.kind == Kind::Probabilistic && spec.motion == Motion::TwoWay) {
    return analyze_markov(spec, word);
  }
  return overall_decision(round_table(spec, TapeWord::make(spec, word), caps), spec.initial);
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::Degenerate:
      return "degenerate";
  }
  return "?";
}

WordVerdict judge_word(const MachineSpec& spec, const std::string& word, bool member, double eps,
                       const EngineCaps& caps) {
  if (!(eps > 0.0 && eps < 0.5)) throw ArgumentError("error bound must lie in (0, 1/2)");
  double acc = 0.0;
  double rej = 0.0;
  const bool two_way_pfa = spec.kind == Kind::Probabilistic && spec.motion == Motion::TwoWay;
  if (spec.is_restart_only() && !two_way_pfa) {
    const RoundResult r = run_round(spec, TapeWord::make(spec, word), spec.initial, caps);
    acc = r.p_acc;
    rej = r.p_rej;
  } else {
    const DecisionReport d = decide(spec, word, caps);
    acc = d.acc;
    rej = d.rej;
  }
  WordVerdict v;
  v.word = word;
  v.member = member;
  v.numerator = member ? rej : acc;
  v.denominator = member ? acc : rej;
  const double threshold = eps / (1.0 - eps);
  if (v.denominator > 0.0) {
    v.ratio = v.numerator / v.denominator;
  } else {
    v.ratio = v.numerator > 0.0 ? kInf : std::numeric_limits<double>::quiet_NaN();
  }
  if (v.denominator <= 0.0 && v.numerator <= 0.0) {
    v.verdict = Verdict::Degenerate;
  } else {
    v.verdict = v.ratio <= threshold * (1.0 + kRatioSlack) ? Verdict::Pass : Verdict::Fail;
    v.strong = v.ratio <= eps * (1.0 + kRatioSlack);
  }
  return v;
}

ErrorVerdict error_verdict(const MachineSpec& spec, const Membership& membership,
                           const std::vector<std::string>& words, double eps,
                           const EngineCaps& caps) {
  ErrorVerdict out;
  out.eps = eps;
  out.threshold = eps / (1.0 - eps);
  for (const auto& w : words) {
    WordVerdict v = judge_word(spec, w, membership(w), eps, caps);
    if (v.verdict == Verdict::Fail) ++out.failures;
    if (v.verdict == Verdict::Degenerate) ++out.degenerate;
    out.words.push_back(std::move(v));
  }
  return out;
}

double gap_acceptance(const MachineSpec& spec, const std::string& word, const EngineCaps& caps) {
  if (spec.has_reset()) return decide(spec, word, caps).acc;
  if (spec.kind == Kind::Probabilistic && spec.motion == Motion::TwoWay) {
    return analyze_markov(spec, word).acc;
  }
  return run_round(spec, TapeWord::make(spec, word), spec.initial, caps).p_acc;
}

GapProfile gap_profile(const MachineSpec& spec, const Membership& membership, int n_max,
                       const EngineCaps& caps) {
  GapProfile out;
  out.n_max = n_max;
  std::optional<double> lo;
  std::optional<double> hi;
  for (int n = 0; n <= n_max; ++n) {
    for (const auto& w : enumerate_words_exact(spec.alphabet, n)) {
      const double a = gap_acceptance(spec, w, caps);
      if (membership(w)) {
        lo = lo ? std::min(*lo, a) : a;
      } else {
        hi = hi ? std::max(*hi, a) : a;
      }
    }
    if (lo) out.min_member[n] = *lo;
    if (hi) out.max_nonmember[n] = *hi;
    out.g[n] = (lo && hi) ? std::optional<double>(*lo - *hi) : std::nullopt;
  }
  return out;
}

}  // namespace qfa
