#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracle.hpp"
#include "qfa/closure.hpp"
#include "qfa/zoo.hpp"

using namespace qfa;

namespace {

RoundResult round_of(const MachineSpec& s, const std::string& w) {
  return run_round(s, TapeWord::make(s, w), s.initial);
}

bool is_palindrome(const std::string& w) { return std::equal(w.begin(), w.end(), w.rbegin()); }

// P(Bin(2k+1, eps) >= k+1) by direct summation with exact integer binomials.
double majority_error(int k, double eps) {
  const int n = 2 * k + 1;
  double total = 0.0;
  double binom = 1.0;  // C(n, 0)
  for (int i = 0; i <= n; ++i) {
    if (i > 0) binom = binom * (n - i + 1) / i;
    if (i >= k + 1) total += binom * std::pow(eps, i) * std::pow(1.0 - eps, n - i);
  }
  return total;
}

}  // namespace

TEST_CASE("language membership") {
  CHECK(lang_am(2).member("bba"));
  CHECK_FALSE(lang_am(2).member("bbba"));
  CHECK_FALSE(lang_am(2).member("ab"));
  CHECK(lang_bm(3).member(""));
  CHECK(lang_bm(3).member("aaa"));
  CHECK_FALSE(lang_bm(3).member("aa"));
  CHECK(lang_cm(2).member("ab"));
  CHECK_FALSE(lang_cm(2).member("a"));
  CHECK(lang_pal().member("abba"));
  CHECK(lang_pal().member(""));
  CHECK_FALSE(lang_pal().member("ab"));
  CHECK(lang_leq().member("aabb"));
  CHECK(lang_leq().member(""));
  CHECK_FALSE(lang_leq().member("aab"));
  CHECK_FALSE(lang_leq().member("ba"));
  CHECK(complement(lang_leq()).member("ba"));
}

TEST_CASE("state counts") {
  CHECK(build_am_qfa(3, 0.1).num_states() == 6);
  CHECK(build_pal(0.1).wrapped.num_states() == 15);
  CHECK(build_leq_qfa(0.1).wrapped.num_states() == 15);
  CHECK(build_bm(3, 0.1).wrapped.num_states() == 6);
  const MachineSpec pfa = build_am_pfa(1, 0.25);
  CHECK(pfa_to_qfa_restart(pfa, 0.25).machine.num_states() == 2 * pfa.num_states() + 4);
}

TEST_CASE("quantum A_m and its squared-moduli PFA give the same rounds") {
  const MachineSpec q = build_am_qfa(2, 0.25);
  const MachineSpec p = build_am_pfa(2, 0.25);
  CHECK(p.kind == Kind::Probabilistic);
  for (const auto& w : enumerate_words("ab", 5)) {
    CHECK(std::abs(round_of(q, w).p_acc - round_of(p, w).p_acc) < 1e-15);
    CHECK(std::abs(round_of(q, w).p_rej - round_of(p, w).p_rej) < 1e-15);
  }
}

TEST_CASE("B_m acceptance") {
  const MachineSpec b4 = build_bm(4, 0.1).base;
  CHECK(round_of(b4, "aa").p_acc == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(round_of(b4, "aaaa").p_acc < 1e-30);
  const MachineSpec b3 = build_bm(3, 0.1).base;
  CHECK(round_of(b3, "a").p_acc == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(round_of(b3, "aaa").p_acc < 1e-30);
  CHECK(bm_gap(3).a == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(bm_gap(1).a == 1.0);
  CHECK(bm_gap(2).a == 1.0);
}

TEST_CASE("C_m acceptance") {
  const MachineSpec c2 = build_cm(2, 0.1).base;
  for (const auto& w : enumerate_words_exact("ab", 2)) CHECK(round_of(c2, w).p_acc < 1e-30);
  // ((1/sqrt2)^5 - (1/sqrt2)^4)^2
  CHECK(round_of(c2, "aba").p_acc == doctest::Approx(5.36165e-3).epsilon(1e-5));
  const double h = 1.0 / std::sqrt(2.0);
  for (const auto& w : enumerate_words("ab", 6)) {
    const double want = std::pow(std::pow(h, w.size() + 2.0) - std::pow(h, 4.0), 2.0);
    CHECK(std::abs(round_of(c2, w).p_acc - want) < 1e-15);
  }
  CHECK(cm_gap(2).a == std::pow(0.5, 8));
}

TEST_CASE("L_pal base: palindromes never accepted, \"ab\" accepted with 1/144") {
  const MachineSpec s = build_pal(0.1).base;
  CHECK(round_of(s, "ab").p_acc == doctest::Approx(1.0 / 144.0).epsilon(1e-13));
  for (const auto& w : enumerate_words("ab", 6)) {
    const RoundResult r = round_of(s, w);
    const oracle::Round o = oracle::one_way_round(s, w, s.initial);
    CHECK(std::abs(r.p_acc - o.acc) < 1e-15);
    if (is_palindrome(w)) CHECK(r.p_acc < 1e-28);
    else CHECK(r.p_acc > 0.0);
  }
}

TEST_CASE("L_eq quantum base") {
  const MachineSpec s = build_leq_qfa(0.1).base;
  CHECK(round_of(s, "aabb").p_acc < 1e-30);
  // (1/2)^(m+n+2) ((1/sqrt2)^m - (1/sqrt2)^n)^2 for a^m b^n, m=2, n=1
  CHECK(round_of(s, "aab").p_acc == doctest::Approx(1.3404e-3).epsilon(1e-4));
  const double h = 1.0 / std::sqrt(2.0);
  for (int m = 0; m <= 5; ++m) {
    for (int n = 0; n <= 5; ++n) {
      if (m == 0 || n == 0) continue;
      const std::string w = std::string(static_cast<std::size_t>(m), 'a') + std::string(static_cast<std::size_t>(n), 'b');
      const double want = std::pow(0.5, m + n + 2) * std::pow(std::pow(h, m) - std::pow(h, n), 2.0);
      CHECK(std::abs(round_of(s, w).p_acc - want) < 1e-15);
    }
  }
  for (const auto& w : {"ba", "bab", "bb"}) CHECK(round_of(s, w).p_acc == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("L_eq PFA round probabilities") {
  for (double eps : {0.2, 0.1, 0.3}) {
    const MachineSpec s = build_leq_pfa(eps);
    const double x = eps * eps / 2.0;
    for (int m = 0; m <= 5; ++m) {
      for (int n = 0; m + n <= 6; ++n) {
        const std::string w = std::string(static_cast<std::size_t>(m), 'a') + std::string(static_cast<std::size_t>(n), 'b');
        const RoundResult r = round_of(s, w);
        CHECK(std::abs(r.p_acc - std::pow(x, m + n) / 3.0) < 1e-12);
        CHECK(std::abs(r.p_rej - eps / 6.0 * (std::pow(x, 2 * m) + std::pow(x, 2 * n))) < 1e-12);
        if (m == n) CHECK(r.p_rej / r.p_acc == doctest::Approx(eps).epsilon(1e-12));
      }
    }
    for (const auto& w : {"ba", "baa", "bba"}) CHECK(round_of(s, w).p_rej >= 1.0 / 3.0);
  }
  const RoundResult r = round_of(build_leq_pfa(0.2), "ab");
  CHECK(r.p_acc == doctest::Approx(0.02 * 0.02 / 3.0).epsilon(1e-13));
  CHECK(r.p_rej == doctest::Approx(0.2 / 6.0 * 2.0 * 0.02 * 0.02).epsilon(1e-13));
}

TEST_CASE("exponential wrapper with a = 1 rejects with eps / (2 c^|w|)") {
  const MachineSpec base = build_bm(3, 0.1).base;
  const GapBound g{1.0, 2.0, GapBound::Form::Exponential};
  const MachineSpec w = wrap_exponential(base, g, 0.2);
  CHECK(w.num_states() == base.num_states() + 3);
  CHECK(w.is_restart_only());
  for (const auto& word : enumerate_words("a", 6)) {
    const RoundResult r = round_of(w, word);
    CHECK(r.p_rej == doctest::Approx(0.2 / (2.0 * std::pow(2.0, word.size()))).epsilon(1e-12));
    CHECK(r.p_acc == doctest::Approx(0.5 * round_of(base, word).p_acc).epsilon(1e-12));
  }
  CHECK_THROWS_AS(wrap_exponential(base, GapBound{1.0, 0.0, GapBound::Form::Constant}, 0.2), ArgumentError);
}

TEST_CASE("constant wrapper rejects with a eps / 2 on CENT") {
  const MachineSpec base = build_cm(2, 0.1).base;
  const GapBound g = cm_gap(2);
  const MachineSpec w = wrap_constant(base, g, 0.1);
  CHECK(w.num_states() == base.num_states() + 2);
  for (const auto& word : enumerate_words("ab", 4)) {
    const RoundResult r = round_of(w, word);
    CHECK(r.p_rej == doctest::Approx(g.a * 0.1 / 2.0).epsilon(1e-12));
    CHECK(r.p_acc == doctest::Approx(0.5 * round_of(base, word).p_acc).epsilon(1e-10));
    CHECK(r.steps_rej == doctest::Approx(r.p_rej).epsilon(1e-12));
    // p_halt >= a eps / 2, so the expected runtime stays within 2 (|w|+2) / (a eps)
    const DecisionReport d = decide(w, word);
    CHECK(d.expected_total_steps <= 2.0 * (word.size() + 2.0) / (g.a * 0.1));
  }
}

TEST_CASE("swap_accept_reject is an involution") {
  const MachineSpec s = build_pal(0.2).wrapped;
  CHECK(swap_accept_reject(swap_accept_reject(s)) == s);
  CHECK(swap_accept_reject(s).roles.accepting == s.roles.rejecting);
}

TEST_CASE("wrapped one-sided machines accept members with certainty") {
  const WrappedMachine b = build_bm(3, 0.1);
  for (const auto& w : enumerate_words("a", 9)) {
    const DecisionReport d = decide(b.wrapped, w);
    if (lang_bm(3).member(w)) CHECK(d.acc == doctest::Approx(1.0).epsilon(1e-12));
    else CHECK(d.rej >= 0.9);
  }
}

TEST_CASE("stochastic-to-unitary lift: amplitude identity and squared error") {
  for (const MachineSpec& pfa : {build_am_pfa(1, 0.25), toy_random_restart_pfa(3)}) {
    const PfaLift lift = pfa_to_qfa_restart(pfa, 0.25);
    CHECK(lift.scale == doctest::Approx(std::sqrt(static_cast<double>(pfa.num_states() + 2))).epsilon(1e-15));
    CHECK(lift.eps_prime == doctest::Approx(0.0625 / 0.625).epsilon(1e-15));
    for (const auto& w : enumerate_words(pfa.alphabet, 5)) {
      const auto trace = oneway_amplitude_trace(lift.machine, TapeWord::make(lift.machine, w), lift.machine.initial);
      const RoundResult p = round_of(pfa, w);
      const double f = std::pow(1.0 / lift.scale, w.size() + 2.0);
      CHECK(std::abs(trace.back()(lift.s_acc) - f * p.p_acc) < 1e-10);
      CHECK(std::abs(trace.back()(lift.s_rej) - f * p.p_rej) < 1e-10);
      const RoundResult q = round_of(lift.machine, w);
      if (p.p_acc > 0.0 && p.p_rej > 0.0) {
        CHECK(q.p_rej / q.p_acc == doctest::Approx(std::pow(p.p_rej / p.p_acc, 2)).epsilon(1e-8));
      }
    }
  }
  CHECK(squared_error_bound(0.25) == doctest::Approx(0.1));
}

TEST_CASE("majority amplifier") {
  const int k = amplification_rounds(0.25, 0.05);
  CHECK(majority_error(k, 0.25) <= 0.05);
  CHECK(majority_error(k - 1, 0.25) > 0.05);
  const AmplifiedMachine a = amplify_reset(build_am_qfa(1, 0.25), 0.25, 0.05);
  CHECK(a.k == k);
  CHECK(a.machine.num_states() == (k + 1) * (k + 1) * 6);
  const ErrorVerdict v = error_verdict(a.machine, lang_am(1).member, enumerate_words("ab", 3), 0.05);
  CHECK(v.pass());
}

TEST_CASE("sequential chaining of the parity toy") {
  const MachineSpec c = chain_one_sided(toy_parity_pfa(), 3, CertainSide::Members);
  CHECK(c.num_states() == 15);
  CHECK(decide(c, "a").acc == doctest::Approx(0.125).epsilon(1e-14));
  CHECK(decide(c, "aa").acc == doctest::Approx(1.0).epsilon(1e-14));
  const MachineSpec d = chain_one_sided(toy_parity_pfa(), 3, CertainSide::NonMembers);
  CHECK(decide(d, "a").rej == doctest::Approx(0.125).epsilon(1e-14));
  CHECK(decide(d, "aa").acc == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("restart to two-way keeps acceptance and at most doubles the steps") {
  for (const MachineSpec& p : {build_leq_pfa(0.2), toy_random_restart_pfa(6), build_am_pfa(1, 0.25)}) {
    const MachineSpec t = restart_to_twoway(p);
    CHECK(t.num_states() == p.num_states() - static_cast<int>(p.roles.reset_targets.size()) + 2);
    for (const auto& w : enumerate_words(p.alphabet, 5)) {
      const DecisionReport a = decide(p, w);
      const DecisionReport b = decide(t, w);
      CHECK(std::abs(a.acc - b.acc) < 1e-12);
      CHECK(b.expected_total_steps <= 2.0 * a.expected_total_steps * (1.0 + 1e-12));
      CHECK(b.expected_total_steps >= a.expected_total_steps * (1.0 - 1e-12));
    }
  }
}

TEST_CASE("catalogue") {
  CHECK(family_names().size() == 10);
  CHECK(build_family({"bm", 3, 0.1, 1}).size() == 2);
  CHECK(build_family({"bm", 3, 0.1, 1})[0].id == "bm(m=3)-base");
  CHECK(build_family({"random-pfa", 2, 0.1, 4})[0].id == "random-pfa(seed=4)");
  CHECK_THROWS_AS(build_family({"nope", 2, 0.1, 1}), ArgumentError);
  CHECK_THROWS_AS(build_am_qfa(0, 0.1), ArgumentError);
  CHECK_THROWS_AS(build_pal(0.6), ArgumentError);
}
