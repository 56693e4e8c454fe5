// One PASS/FAIL line per acceptance criterion. With --criterion N only that
// one runs; the exit status is nonzero when any selected criterion fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qfa/closure.hpp"
#include "qfa/montecarlo.hpp"
#include "qfa/qcfa.hpp"
#include "qfa/zoo.hpp"

using namespace qfa;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  int failures = 0;

  // Records the first few failures, counts the rest.
  void fail(const std::string& what) {
    if (failures < 3) detail += (detail.empty() ? "" : "; ") + what;
    ++failures;
    pass = false;
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string quote(const std::string& w) { return "\"" + w + "\""; }

RoundResult round_of(const MachineSpec& s, const std::string& w) {
  return run_round(s, TapeWord::make(s, w), s.initial);
}

std::string power_word(int m, int n) {
  return std::string(static_cast<std::size_t>(m), 'a') + std::string(static_cast<std::size_t>(n), 'b');
}

// ---- 1: A_m round closed forms -------------------------------------------

Outcome criterion_1() {
  Outcome o;
  long checked = 0;
  for (int m : {1, 2, 3}) {
    for (double eps : {0.1, 0.25}) {
      const MachineSpec s = build_am_qfa(m, eps);
      const auto words = enumerate_words("ab", 8);
      for (const auto& w : words) {
        const RoundResult r = round_of(s, w);
        const bool ends_a = !w.empty() && w.back() == 'a';
        const double tail = std::pow(eps, 2.0 * static_cast<double>(w.size()) + 2.0);
        const double want_acc = ends_a ? tail : 0.0;
        const double want_rej = std::pow(eps, 2.0 * m + 5.0) + (ends_a ? 0.0 : tail);
        if (std::abs(r.p_acc - want_acc) > 1e-12 || std::abs(r.p_rej - want_rej) > 1e-12) {
          o.fail("m=" + std::to_string(m) + " eps=" + fmt(eps) + " w=" + quote(w));
        }
        ++checked;
      }
      const ErrorVerdict v = error_verdict(s, lang_am(m).member, words, eps);
      if (!v.pass()) o.fail("error_verdict m=" + std::to_string(m) + " eps=" + fmt(eps));
    }
  }
  if (o.pass) o.detail = std::to_string(checked) + " rounds match, error bound holds";
  return o;
}

// ---- 2: certainty on members, 1 - eps on non-members ----------------------

void certainty(Outcome& o, const std::string& id, const MachineSpec& s, const Language& lang,
               const std::vector<std::string>& words, double eps, long& checked) {
  for (const auto& w : words) {
    const DecisionReport d = decide(s, w);
    ++checked;
    if (lang.member(w)) {
      if (std::abs(d.acc - 1.0) > 1e-12) o.fail(id + " member " + quote(w) + " P_acc=" + fmt(d.acc));
    } else if (d.rej < 1.0 - eps) {
      o.fail(id + " non-member " + quote(w) + " P_rej=" + fmt(d.rej));
    }
  }
}

Outcome criterion_2() {
  Outcome o;
  long checked = 0;
  for (double eps : {0.1, 0.3}) {
    const std::string e = "[eps=" + fmt(eps) + "]";
    std::vector<std::string> unary;
    for (int i = 0; i <= 12; ++i) unary.push_back(std::string(static_cast<std::size_t>(i), 'a'));
    for (int m = 1; m <= 5; ++m) {
      certainty(o, "B_" + std::to_string(m) + e, build_bm(m, eps).wrapped, lang_bm(m), unary, eps, checked);
    }
    for (int m = 1; m <= 4; ++m) {
      certainty(o, "C_" + std::to_string(m) + e, build_cm(m, eps).wrapped, lang_cm(m),
                enumerate_words("ab", 8), eps, checked);
    }
    certainty(o, "pal" + e, build_pal(eps).wrapped, lang_pal(), enumerate_words("ab", 9), eps, checked);
    certainty(o, "leq" + e, build_leq_qfa(eps).wrapped, lang_leq(), enumerate_words("ab", 10), eps, checked);
  }
  if (o.pass) o.detail = std::to_string(checked) + " words";
  return o;
}

// ---- 3: gap inequalities by enumeration -----------------------------------

void gap_check(Outcome& o, const std::string& id, const MachineSpec& base, const Language& lang, int n_max,
               const std::function<double(int)>& bound, bool strict) {
  const GapProfile g = gap_profile(base, complement(lang).member, n_max);
  for (int n = 0; n <= n_max; ++n) {
    const auto& v = g.g.at(n);
    if (!v) continue;  // one side empty at this length
    const double b = bound(n);
    const bool ok = strict ? *v > b : *v >= b;
    if (!ok) o.fail(id + " n=" + std::to_string(n) + " g=" + fmt(*v) + (strict ? " <= " : " < ") + fmt(b));
  }
}

Outcome criterion_3() {
  Outcome o;
  gap_check(o, "pal", build_pal(0.1).base, lang_pal(), 10,
            [](int n) { return 0.125 * std::pow(3.0, -n); }, false);
  gap_check(o, "leq", build_leq_qfa(0.1).base, lang_leq(), 10,
            [](int n) { return std::pow(0.5, 1.5 * n + 5.0); }, true);
  for (int m = 1; m <= 4; ++m) {
    gap_check(o, "C_" + std::to_string(m), build_cm(m, 0.1).base, lang_cm(m), 10,
              [m](int) { return std::pow(0.5, m + 6.0); }, true);
  }
  if (o.pass) o.detail = "all gaps above their bounds";
  else o.detail += " (" + std::to_string(o.failures) + " violations)";
  return o;
}

// ---- 4: L_eq PFA exact round values --------------------------------------

Outcome criterion_4() {
  Outcome o;
  long checked = 0;
  for (double eps : {0.1, 0.2, 0.3}) {
    const MachineSpec s = build_leq_pfa(eps);
    const double x = eps * eps / 2.0;
    for (int m = 0; m <= 10; ++m) {
      for (int n = 0; m + n <= 10; ++n) {
        const std::string w = power_word(m, n);
        const RoundResult r = round_of(s, w);
        const double acc = std::pow(x, m + n) / 3.0;
        const double rej = eps / 6.0 * (std::pow(x, 2 * m) + std::pow(x, 2 * n));
        if (std::abs(r.p_acc - acc) > 1e-12 || std::abs(r.p_rej - rej) > 1e-12) {
          o.fail("eps=" + fmt(eps) + " " + quote(w));
        }
        if (m == n && std::abs(r.p_rej / r.p_acc - eps) > 1e-12) {
          o.fail("ratio eps=" + fmt(eps) + " " + quote(w) + " = " + fmt(r.p_rej / r.p_acc));
        }
        ++checked;
      }
    }
  }
  if (o.pass) o.detail = std::to_string(checked) + " words, ratio exact on a^n b^n";
  return o;
}

// ---- 5: stochastic-to-unitary lift ---------------------------------------

void lift_check(Outcome& o, const std::string& id, const MachineSpec& pfa, double eps,
                const Language* lang) {
  const PfaLift lift = pfa_to_qfa_restart(pfa, eps);
  for (const auto& w : enumerate_words(pfa.alphabet, 6)) {
    const auto trace = oneway_amplitude_trace(lift.machine, TapeWord::make(pfa, w), lift.machine.initial);
    const RoundResult p = round_of(pfa, w);
    const double f = std::pow(1.0 / lift.scale, static_cast<double>(w.size()) + 2.0);
    if (std::abs(trace.back()(lift.s_acc) - f * p.p_acc) > 1e-10) o.fail(id + " amplitude " + quote(w));
    if (!lang) continue;
    const DecisionReport d = decide(lift.machine, w);
    const double err = lang->member(w) ? d.rej : d.acc;
    if (err > lift.eps_prime) o.fail(id + " error " + fmt(err) + " on " + quote(w));
  }
}

Outcome criterion_5() {
  Outcome o;
  const Language a1 = lang_am(1);
  lift_check(o, "am-pfa(1,0.25)", build_am_pfa(1, 0.25), 0.25, &a1);
  lift_check(o, "random-pfa(seed=1)", toy_random_restart_pfa(1), 0.25, nullptr);
  if (o.pass) o.detail = "eps'=" + fmt(squared_error_bound(0.25)) + " bounds the lifted error";
  return o;
}

// ---- shared zoo battery for 6, 7, 10 and 11 -------------------------------

struct Entry {
  std::string id;
  MachineSpec spec;
};

std::vector<Entry> zoo_battery(const std::vector<double>& eps_list) {
  std::vector<Entry> out;
  auto add_all = [&](const FamilyRequest& r) {
    for (const auto& z : build_family(r)) out.push_back({z.id + "[eps=" + fmt(r.eps) + "]", z.spec});
  };
  for (double eps : eps_list) {
    for (int m = 1; m <= 3; ++m) add_all({"am", m, eps, 1});
    add_all({"am-pfa", 1, eps, 1});
    for (int m = 1; m <= 5; ++m) add_all({"bm", m, eps, 1});
    for (int m = 1; m <= 4; ++m) add_all({"cm", m, eps, 1});
    add_all({"pal", 0, eps, 1});
    add_all({"leq", 0, eps, 1});
    add_all({"leq-pfa", 0, eps, 1});
  }
  add_all({"parity", 0, 0.1, 1});
  add_all({"reset-toy", 0, 0.1, 1});
  for (std::uint64_t seed : {1u, 2u, 3u}) add_all({"random-pfa", 0, 0.1, seed});
  return out;
}

// ---- 6: single-restart closure and the runtime bound ----------------------

Outcome criterion_6() {
  Outcome o;
  long closed = 0, bounded = 0;
  for (const auto& e : zoo_battery({0.1, 0.3})) {
    const MachineSpec& s = e.spec;
    for (const auto& w : enumerate_words(s.alphabet, 6)) {
      const RoundTable table = round_table(s, TapeWord::make(s, w));
      const DecisionReport d = overall_decision(table, s.initial);
      const RoundResult& r = table.at(s.initial);
      if (s.is_restart_only() && r.p_halt() > 0.0) {
        ++closed;
        if (std::abs(d.acc - r.p_acc / r.p_halt()) > 1e-12 || std::abs(d.rej - r.p_rej / r.p_halt()) > 1e-12) {
          o.fail(e.id + " closure on " + quote(w));
        }
        const double steps = r.expected_steps / r.p_halt();
        if (std::abs(d.expected_total_steps - steps) > 1e-12 * steps) o.fail(e.id + " steps on " + quote(w));
      }
      if (s.is_restart_only() || !s.has_reset()) {
        ++bounded;
        if (!(d.expected_total_steps <= d.lemma4_bound * (1.0 + 1e-12))) {
          o.fail(e.id + " runtime " + fmt(d.expected_total_steps) + " > " + fmt(d.lemma4_bound) + " on " + quote(w));
        }
      }
    }
  }
  if (o.pass) o.detail = std::to_string(closed) + " closed forms, " + std::to_string(bounded) + " runtime bounds";
  return o;
}

// ---- 7: QCFA lift agrees with the direct engine ---------------------------

Outcome criterion_7() {
  Outcome o;
  long checked = 0;
  for (const auto& e : zoo_battery({0.1})) {
    const MachineSpec& s = e.spec;
    if (s.kind != Kind::Quantum || !s.has_reset()) continue;
    const QcfaSpec q = lift_reset_to_qcfa(s);
    if (!validate_qcfa(q).ok()) {
      o.fail(e.id + " lift invalid");
      continue;
    }
    for (const auto& w : enumerate_words(s.alphabet, 6)) {
      const QcfaResult r = run_qcfa(q, TapeWord::make(s, w));
      const DecisionReport d = decide(s, w);
      ++checked;
      if (std::abs(r.acc - d.acc) > 1e-9) o.fail(e.id + " " + quote(w) + " " + fmt(r.acc) + " vs " + fmt(d.acc));
    }
  }
  if (o.pass) o.detail = std::to_string(checked) + " words agree";
  return o;
}

// ---- 8: restart to two-way ------------------------------------------------

Outcome criterion_8() {
  Outcome o;
  long checked = 0;
  double worst = 0.0;
  for (double eps : {0.1, 0.2, 0.3}) {
    const MachineSpec one = build_leq_pfa(eps);
    const MachineSpec two = restart_to_twoway(one);
    for (const auto& w : enumerate_words("ab", 8)) {
      const DecisionReport a = decide(one, w);
      const DecisionReport b = analyze_markov(two, w);
      ++checked;
      if (std::abs(a.acc - b.acc) > 1e-12) o.fail("eps=" + fmt(eps) + " P_acc on " + quote(w));
      const double ratio = b.expected_total_steps / a.expected_total_steps;
      worst = std::max(worst, ratio);
      if (!(ratio <= 2.0)) o.fail("eps=" + fmt(eps) + " steps ratio " + fmt(ratio) + " on " + quote(w));
    }
  }
  if (o.pass) o.detail = std::to_string(checked) + " words, worst steps ratio " + fmt(worst);
  return o;
}

// ---- 9: majority amplifier -----------------------------------------------

int exact_binomial_rounds(double eps, double target) {
  for (int k = 0;; ++k) {
    const int n = 2 * k + 1;
    double tail = 0.0, binom = 1.0;
    for (int i = 0; i <= n; ++i) {
      if (i > 0) binom = binom * (n - i + 1) / i;
      if (i > k) tail += binom * std::pow(eps, i) * std::pow(1.0 - eps, n - i);
    }
    if (tail <= target) return k;
  }
}

Outcome criterion_9() {
  Outcome o;
  const int k = exact_binomial_rounds(0.25, 0.05);
  const AmplifiedMachine a = amplify_reset(build_am_qfa(1, 0.25), 0.25, 0.05);
  if (a.k != k) o.fail("k=" + std::to_string(a.k) + " expected " + std::to_string(k));
  if (a.machine.num_states() != (k + 1) * (k + 1) * 6) {
    o.fail("states " + std::to_string(a.machine.num_states()));
  }
  const ErrorVerdict v = error_verdict(a.machine, lang_am(1).member, enumerate_words("ab", 5), 0.05);
  if (!v.pass()) o.fail(std::to_string(v.failures) + " words above 0.05");
  if (o.pass) o.detail = "k=" + std::to_string(k) + ", " + std::to_string(a.machine.num_states()) + " states";
  return o;
}

// ---- 10: Monte Carlo agreement -------------------------------------------

Outcome criterion_10() {
  Outcome o;
  long checked = 0;
  const long n = 100000;
  for (const auto& e : zoo_battery({0.45})) {
    const MachineSpec& s = e.spec;
    const auto words = enumerate_words(s.alphabet, 4);
    for (std::size_t i = 0; i < 5 && i < words.size(); ++i) {
      const std::string& w = words[i];
      const std::uint64_t seed = 1000 + i;
      const SampleStats st = sample_runs(s, w, n, seed);
      const DecisionReport d = decide(s, w);
      const double exact = d.acc / (d.acc + d.rej);
      ++checked;
      if (st.censored > 0) o.fail(e.id + " " + quote(w) + " censored runs");
      if (std::abs(st.acceptance() - exact) > 4.0 * st.stderr_acc + 1e-12) {
        o.fail(e.id + " " + quote(w) + " sampled " + fmt(st.acceptance()) + " exact " + fmt(exact) +
               " stderr " + fmt(st.stderr_acc));
      }
      if (i == 0) {
        const SampleStats again = sample_runs(s, w, n, seed);
        if (again.accepted != st.accepted || again.rejected != st.rejected || again.mean_steps != st.mean_steps) {
          o.fail(e.id + " not reproducible");
        }
      }
    }
  }
  if (o.pass) o.detail = std::to_string(checked) + " machine/word pairs within 4 stderr";
  return o;
}

// ---- 11: structure and mass ------------------------------------------------

Outcome criterion_11() {
  Outcome o;
  long ops = 0;
  std::vector<Entry> machines = zoo_battery({0.1, 0.3});
  machines.push_back({"leq-pfa two-way", restart_to_twoway(build_leq_pfa(0.2))});
  machines.push_back({"random-pfa two-way", restart_to_twoway(toy_random_restart_pfa(1))});
  for (const auto& e : machines) {
    const MachineSpec& s = e.spec;
    for (std::size_t k = 0; k < s.transitions.size(); ++k) {
      const ComplexMatrix& m = s.transitions[k];
      const bool ok = s.kind == Kind::Quantum
                          ? is_unitary(m, 1e-10)
                          : is_row_stochastic(m.real(), 1e-10) && m.imag().cwiseAbs().maxCoeff() == 0.0;
      if (!ok) o.fail(e.id + " matrix " + s.symbol_name(static_cast<int>(k)));
    }
    // quantum machines are checked in their two-way form: the induced
    // operator on Q x Z_n must be unitary
    MachineSpec two = s;
    two.motion = Motion::TwoWay;
    for (const auto& w : enumerate_words(s.alphabet, 6)) {
      if (s.kind == Kind::Quantum) {
        ++ops;
        if (!is_unitary(induced_step_operator(two, TapeWord::make(s, w)), 1e-9)) {
          o.fail(e.id + " step operator on " + quote(w));
        }
      }
      const RoundTable table = round_table(s, TapeWord::make(s, w));
      for (const auto& [start, r] : table) {
        if (std::abs(r.p_acc + r.p_rej + r.p_reset_total() + r.residual - 1.0) > 1e-9) {
          o.fail(e.id + " round mass on " + quote(w));
        }
      }
      const DecisionReport d = decide(s, w);
      if (!d.degenerate && std::abs(d.acc + d.rej + d.lost - 1.0) > 1e-9) {
        o.fail(e.id + " overall mass on " + quote(w));
      }
    }
  }
  if (o.pass) o.detail = std::to_string(machines.size()) + " machines, " + std::to_string(ops) + " step operators";
  return o;
}

const std::vector<std::pair<std::string, std::function<Outcome()>>>& criteria() {
  static const std::vector<std::pair<std::string, std::function<Outcome()>>> all = {
      {"A_m round probabilities", criterion_1},
      {"certainty side of wrapped machines", criterion_2},
      {"gap inequalities", criterion_3},
      {"L_eq PFA exact values", criterion_4},
      {"stochastic-to-unitary lift", criterion_5},
      {"closure and runtime bound", criterion_6},
      {"QCFA lift", criterion_7},
      {"restart to two-way", criterion_8},
      {"majority amplifier", criterion_9},
      {"Monte Carlo agreement", criterion_10},
      {"structure and mass", criterion_11},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "run one criterion (1-11)")->check(CLI::Range(1, 11));
  CLI11_PARSE(app, argc, argv);

  int failed = 0;
  const auto& all = criteria();
  for (std::size_t i = 0; i < all.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (only != 0 && id != only) continue;
    Outcome o;
    try {
      o = all[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << " (" << all[i].first << "): " << o.detail
              << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
