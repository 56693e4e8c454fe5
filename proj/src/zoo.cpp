#include "qfa/zoo.hpp"

#include <cmath>
#include <numbers>

#include "build_util.hpp"

namespace qfa {

using detail::QuantumDraft;
using detail::range_set;
using detail::require_eps;

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

void require_m(int m) {
  if (m < 1) throw ArgumentError("m must be at least 1");
}

// |U|^2 read as a row-stochastic matrix: row q holds the squared moduli of
// column q.
MachineSpec square_moduli(const MachineSpec& q) {
  MachineSpec p = q;
  p.kind = Kind::Probabilistic;
  for (auto& m : p.transitions) {
    const ComplexMatrix sq = m.cwiseAbs2().transpose().cast<Complex>();
    m = sq;
  }
  require_valid(p);
  return p;
}

std::pair<double, double> rotation(int m) {
  // exact values where the library trig would leave 1e-16 residue
  if (m == 1) return {-1.0, 0.0};
  if (m == 2) return {0.0, 1.0};
  const double t = std::numbers::pi / m;
  return {std::cos(t), std::sin(t)};
}

}  // namespace

MachineSpec build_am_qfa(int m, double eps) {
  require_m(m);
  require_eps(eps);
  enum { q0, q1, A, R, I1, I2 };
  QuantumDraft d("ab", {"q0", "q1", "A", "R", "I1", "I2"});
  const double big = std::pow(eps, 2.0 * m + 5.0);
  d.set(d.cent(), q0, {{q1, eps}, {R, std::sqrt(big)}, {I1, std::sqrt(1.0 - eps * eps - big)}});
  const double mid = std::sqrt(0.5 - eps * eps);
  for (char c : std::string("ab")) {
    const int tgt = c == 'a' ? q0 : q1;
    d.set(d.sym(c), q0, {{tgt, eps}, {I1, mid}, {I2, kInvSqrt2}});
    d.set(d.sym(c), q1, {{tgt, eps}, {I1, mid}, {I2, -kInvSqrt2}});
  }
  d.set(d.dollar(), q0, {{A, 1.0}});
  d.set(d.dollar(), q1, {{R, 1.0}});
  StateRoles roles;
  roles.nonhalting = {q0, q1};
  roles.accepting = {A};
  roles.rejecting = {R};
  roles.reset_targets = {{I1, q0}, {I2, q0}};
  return d.finish(roles, q0);
}

MachineSpec build_am_pfa(int m, double eps) { return square_moduli(build_am_qfa(m, eps)); }

GapBound bm_gap(int m) {
  require_m(m);
  // B_1 has no non-members; any positive constant works
  const double s = rotation(m).second;
  return {m == 1 ? 1.0 : s * s, 0.0, GapBound::Form::Constant};
}

WrappedMachine build_bm(int m, double eps) {
  require_eps(eps);
  const GapBound gap = bm_gap(m);
  enum { q0, q1, A, R };
  QuantumDraft d("a", {"q0", "q1", "A", "R"});
  const auto [c, s] = rotation(m);
  d.set(d.cent(), q0, {{q0, 1.0}});
  d.set(d.sym('a'), q0, {{q0, c}, {q1, s}});
  d.set(d.sym('a'), q1, {{q0, -s}, {q1, c}});
  d.set(d.dollar(), q0, {{R, 1.0}});
  d.set(d.dollar(), q1, {{A, 1.0}});
  StateRoles roles;
  roles.nonhalting = {q0, q1};
  roles.accepting = {A};
  roles.rejecting = {R};
  WrappedMachine out;
  out.base = d.finish(roles, q0);
  out.gap = gap;
  out.wrapped = swap_accept_reject(wrap_constant(out.base, gap, eps));
  return out;
}

GapBound cm_gap(int m) {
  require_m(m);
  return {std::pow(0.5, m + 6), 0.0, GapBound::Form::Constant};
}

WrappedMachine build_cm(int m, double eps) {
  require_eps(eps);
  const GapBound gap = cm_gap(m);
  enum { q0, q1, A, R };
  QuantumDraft d("ab", {"q0", "q1", "A", "R"});
  d.set(d.cent(), q0,
        {{q0, kInvSqrt2}, {q1, std::pow(kInvSqrt2, m + 1)}, {R, std::sqrt(0.5 - std::pow(0.5, m + 1))}});
  for (char ch : std::string("ab")) {
    d.set(d.sym(ch), q0, {{q0, kInvSqrt2}, {R, kInvSqrt2}});
    d.set(d.sym(ch), q1, {{q1, 1.0}});
  }
  d.set(d.dollar(), q0, {{A, kInvSqrt2}, {R, kInvSqrt2}});
  d.set(d.dollar(), q1, {{A, -kInvSqrt2}, {R, kInvSqrt2}});
  StateRoles roles;
  roles.nonhalting = {q0, q1};
  roles.accepting = {A};
  roles.rejecting = {R};
  WrappedMachine out;
  out.base = d.finish(roles, q0);
  out.gap = gap;
  out.wrapped = swap_accept_reject(wrap_constant(out.base, gap, eps));
  return out;
}

GapBound pal_gap() { return {1.0 / 16.0, 3.0, GapBound::Form::Exponential}; }

WrappedMachine build_pal(double eps) {
  require_eps(eps);
  enum { q0, p1, p2, q1, q2, q3, A, R1, R2, R3, R4, R5 };
  QuantumDraft d("ab", {"q0", "p1", "p2", "q1", "q2", "q3", "A", "R1", "R2", "R3", "R4", "R5"});
  const double s23 = std::sqrt(2.0 / 3.0);
  const double s13 = 1.0 / std::sqrt(3.0);
  const double s16 = 1.0 / std::sqrt(6.0);
  d.set(d.cent(), q0, {{p1, kInvSqrt2}, {q1, kInvSqrt2}});

  const int a = d.sym('a');
  d.set(a, p1, {{p1, s23}, {R1, -s13}});
  d.set(a, p2, {{p1, s16}, {p2, s16}, {R1, s13}, {R2, s13}});
  d.set(a, q1, {{q1, s16}, {q3, s16}, {R3, -s13}, {R4, s13}});
  d.set(a, q2, {{q2, s23}, {R5, s13}});
  d.set(a, q3, {{q3, s23}, {R3, s13}});

  const int b = d.sym('b');
  d.set(b, p1, {{p1, s16}, {p2, s16}, {R1, s13}, {R2, s13}});
  d.set(b, p2, {{p2, s23}, {R1, -s13}});
  d.set(b, q1, {{q1, s16}, {q2, s16}, {R3, -s13}, {R4, s13}});
  d.set(b, q2, {{q2, s23}, {R3, s13}});
  d.set(b, q3, {{q3, s23}, {R5, s13}});

  d.set(d.dollar(), p1, {{R1, 1.0}});
  d.set(d.dollar(), p2, {{A, kInvSqrt2}, {R2, kInvSqrt2}});
  d.set(d.dollar(), q1, {{R3, 1.0}});
  d.set(d.dollar(), q2, {{A, -kInvSqrt2}, {R2, kInvSqrt2}});
  d.set(d.dollar(), q3, {{R4, 1.0}});

  StateRoles roles;
  roles.nonhalting = range_set(q0, A);
  roles.accepting = {A};
  roles.rejecting = range_set(R1, R5 + 1);
  WrappedMachine out;
  out.base = d.finish(roles, q0);
  out.gap = pal_gap();
  out.wrapped = swap_accept_reject(wrap_exponential(out.base, out.gap, eps));
  return out;
}

GapBound leq_gap() { return {std::pow(2.0, -6), 2.0 * std::numbers::sqrt2, GapBound::Form::Exponential}; }

WrappedMachine build_leq_qfa(double eps) {
  require_eps(eps);
  enum { q0, p0, p1, p2, q1, q2, A1, A2, A3, R1, R2, R3 };
  QuantumDraft d("ab", {"q0", "p0", "p1", "p2", "q1", "q2", "A1", "A2", "A3", "R1", "R2", "R3"});
  d.set(d.cent(), q0, {{p0, kInvSqrt2}, {q0, kInvSqrt2}});

  const int a = d.sym('a');
  d.set(a, p0, {{p1, 0.5}, {R1, 0.5}, {R2, kInvSqrt2}});
  d.set(a, p1, {{p1, 0.5}, {R1, 0.5}, {R2, -kInvSqrt2}});
  d.set(a, p2, {{A1, 1.0}});
  d.set(a, q0, {{q1, kInvSqrt2}, {R3, kInvSqrt2}});
  d.set(a, q1, {{q1, kInvSqrt2}, {R3, -kInvSqrt2}});
  d.set(a, q2, {{A2, 1.0}});

  const int b = d.sym('b');
  d.set(b, p0, {{A1, 1.0}});
  d.set(b, p1, {{p2, kInvSqrt2}, {R1, kInvSqrt2}});
  d.set(b, p2, {{p2, kInvSqrt2}, {R1, -kInvSqrt2}});
  d.set(b, q0, {{A2, 1.0}});
  d.set(b, q1, {{q2, 0.5}, {R2, 0.5}, {R3, kInvSqrt2}});
  d.set(b, q2, {{q2, 0.5}, {R2, 0.5}, {R3, -kInvSqrt2}});

  d.set(d.dollar(), p0, {{R1, 1.0}});
  d.set(d.dollar(), p1, {{A1, 1.0}});
  d.set(d.dollar(), p2, {{R2, kInvSqrt2}, {A2, kInvSqrt2}});
  d.set(d.dollar(), q0, {{R3, 1.0}});
  d.set(d.dollar(), q1, {{A3, 1.0}});
  d.set(d.dollar(), q2, {{R2, kInvSqrt2}, {A2, -kInvSqrt2}});

  StateRoles roles;
  roles.nonhalting = range_set(q0, A1);
  roles.accepting = {A1, A2, A3};
  roles.rejecting = {R1, R2, R3};
  WrappedMachine out;
  out.base = d.finish(roles, q0);
  out.gap = leq_gap();
  out.wrapped = swap_accept_reject(wrap_exponential(out.base, out.gap, eps));
  return out;
}

MachineSpec build_leq_pfa(double eps) {
  require_eps(eps);
  enum { s0, p1a, p1b, p2a, p2b, p3a, p3b, ACC, REJ, RESTART, N };
  const double x = eps * eps / 2.0;
  MachineSpec s;
  s.kind = Kind::Probabilistic;
  s.motion = Motion::OneWay;
  s.alphabet = "ab";
  s.state_labels = {"s0", "p1a", "p1b", "p2a", "p2b", "p3a", "p3b", "ACC", "REJ", "RESTART"};
  s.roles.nonhalting = range_set(s0, ACC);
  s.roles.accepting = {ACC};
  s.roles.rejecting = {REJ};
  s.roles.reset_targets = {{RESTART, s0}};
  s.initial = s0;
  s.directions.assign(N, 1);
  s.transitions.assign(4, ComplexMatrix::Identity(N, N));
  auto row = [&](int sym, int q, std::initializer_list<std::pair<int, double>> dist) {
    ComplexMatrix& m = s.transitions[static_cast<std::size_t>(sym)];
    m.row(q).setZero();
    for (const auto& [t, p] : dist) m(q, t) += p;
  };
  const int cent = 0, a = 1, b = 2, dollar = 3;
  row(cent, s0, {{p1a, 1.0 / 3.0}, {p2a, 1.0 / 3.0}, {p3a, 1.0 / 3.0}});
  // path 1: every symbol survives with x, accepts at $
  row(a, p1a, {{p1a, x}, {RESTART, 1.0 - x}});
  row(b, p1a, {{p1b, x}, {RESTART, 1.0 - x}});
  row(a, p1b, {{REJ, 1.0}});
  row(b, p1b, {{p1b, x}, {RESTART, 1.0 - x}});
  row(dollar, p1a, {{ACC, 1.0}});
  row(dollar, p1b, {{ACC, 1.0}});
  // path 2: each a survives with x^2
  row(a, p2a, {{p2a, x * x}, {RESTART, 1.0 - x * x}});
  row(b, p2a, {{p2b, 1.0}});
  row(a, p2b, {{REJ, 1.0}});
  row(b, p2b, {{p2b, 1.0}});
  // path 3: each b survives with x^2
  row(a, p3a, {{p3a, 1.0}});
  row(b, p3a, {{p3b, x * x}, {RESTART, 1.0 - x * x}});
  row(a, p3b, {{REJ, 1.0}});
  row(b, p3b, {{p3b, x * x}, {RESTART, 1.0 - x * x}});
  for (int q : {p2a, p2b, p3a, p3b}) row(dollar, q, {{REJ, eps / 2.0}, {RESTART, 1.0 - eps / 2.0}});
  require_valid(s);
  return s;
}

std::vector<std::string> family_names() {
  return {"am", "am-pfa", "bm", "cm", "pal", "leq", "leq-pfa", "parity", "reset-toy", "random-pfa"};
}

std::vector<ZooMachine> build_family(const FamilyRequest& req) {
  const std::string& f = req.family;
  const std::string tag = "(m=" + std::to_string(req.m) + ")";
  auto one_sided = [&](const std::string& id, const WrappedMachine& w, const Language& lang) {
    return std::vector<ZooMachine>{{id + "-base", w.base, complement(lang), 0.0},
                                   {id, w.wrapped, lang, req.eps}};
  };
  if (f == "am") return {{"am-qfa" + tag, build_am_qfa(req.m, req.eps), lang_am(req.m), req.eps}};
  if (f == "am-pfa") return {{"am-pfa" + tag, build_am_pfa(req.m, req.eps), lang_am(req.m), req.eps}};
  if (f == "bm") return one_sided("bm" + tag, build_bm(req.m, req.eps), lang_bm(req.m));
  if (f == "cm") return one_sided("cm" + tag, build_cm(req.m, req.eps), lang_cm(req.m));
  if (f == "pal") return one_sided("pal", build_pal(req.eps), lang_pal());
  if (f == "leq") return one_sided("leq-qfa", build_leq_qfa(req.eps), lang_leq());
  if (f == "leq-pfa") return {{"leq-pfa", build_leq_pfa(req.eps), lang_leq(), req.eps}};
  auto anything = [](const std::string& alphabet) {
    return Language{"any", alphabet, [](const std::string&) { return true; }};
  };
  if (f == "parity") return {{"parity-pfa", toy_parity_pfa(), anything("ab"), 0.0}};
  if (f == "reset-toy") return {{"reset-toy", toy_two_target_reset(), anything("ab"), 0.0}};
  if (f == "random-pfa") {
    return {{"random-pfa(seed=" + std::to_string(req.seed) + ")", toy_random_restart_pfa(req.seed),
             anything("ab"), 0.0}};
  }
  throw ArgumentError("unknown family \"" + f + "\"");
}

}  // namespace qfa
