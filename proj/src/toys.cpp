#include <cmath>
#include <random>

#include "build_util.hpp"
#include "qfa/zoo.hpp"

namespace qfa {

namespace {

MachineSpec blank_pfa(const std::string& alphabet, std::vector<std::string> labels) {
  MachineSpec s;
  s.kind = Kind::Probabilistic;
  s.motion = Motion::OneWay;
  s.alphabet = alphabet;
  s.state_labels = std::move(labels);
  s.directions.assign(s.state_labels.size(), 1);
  const int n = s.num_states();
  s.transitions.assign(alphabet.size() + 2, ComplexMatrix::Identity(n, n));
  return s;
}

void set_row(MachineSpec& s, int sym, int q, std::initializer_list<std::pair<int, double>> dist) {
  ComplexMatrix& m = s.transitions[static_cast<std::size_t>(sym)];
  m.row(q).setZero();
  for (const auto& [t, p] : dist) m(q, t) += p;
}

}  // namespace

MachineSpec toy_parity_pfa() {
  enum { even, odd, A1, A2, R };
  MachineSpec s = blank_pfa("ab", {"even", "odd", "A1", "A2", "R"});
  s.roles.nonhalting = {even, odd};
  s.roles.accepting = {A1, A2};
  s.roles.rejecting = {R};
  s.initial = even;
  set_row(s, 1, even, {{odd, 1.0}});
  set_row(s, 1, odd, {{even, 1.0}});
  set_row(s, 3, even, {{A1, 1.0}});
  set_row(s, 3, odd, {{A2, 0.5}, {R, 0.5}});
  require_valid(s);
  return s;
}

MachineSpec toy_two_target_reset() {
  enum { s0, s1, A, R, X0, X1 };
  detail::QuantumDraft d("ab", {"s0", "s1", "A", "R", "X0", "X1"});
  const double h = 1.0 / std::sqrt(2.0);
  const double r3 = std::sqrt(3.0) / 2.0;
  d.set(d.cent(), s0, {{s0, h}, {X1, h}});
  d.set(d.cent(), s1, {{s1, h}, {A, 0.5}, {X0, 0.5}});
  d.set(d.sym('a'), s0, {{s0, h}, {s1, h}});
  d.set(d.sym('a'), s1, {{s0, h}, {s1, -h}});
  d.set(d.sym('b'), s0, {{s1, r3}, {X0, 0.5}});
  d.set(d.sym('b'), s1, {{s0, r3}, {R, 0.5}});
  d.set(d.dollar(), s0, {{A, h}, {X1, h}});
  d.set(d.dollar(), s1, {{R, h}, {X0, h}});
  StateRoles roles;
  roles.nonhalting = {s0, s1};
  roles.accepting = {A};
  roles.rejecting = {R};
  roles.reset_targets = {{X0, s0}, {X1, s1}};
  return d.finish(roles, s0);
}

MachineSpec toy_random_restart_pfa(std::uint64_t seed) {
  enum { n0, n1, n2, A, R, X, N };
  MachineSpec s = blank_pfa("ab", {"n0", "n1", "n2", "A", "R", "X"});
  s.roles.nonhalting = {n0, n1, n2};
  s.roles.accepting = {A};
  s.roles.rejecting = {R};
  s.roles.reset_targets = {{X, n0}};
  s.initial = n0;
  std::mt19937_64 rng(seed);
  auto draw = [&] { return 0.05 + static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  for (int sym = 0; sym < 4; ++sym) {
    ComplexMatrix& m = s.transitions[static_cast<std::size_t>(sym)];
    for (int q = n0; q <= n2; ++q) {
      m.row(q).setZero();
      // nothing may stay nonhalting past the right end-marker
      const int lo = sym == 3 ? A : n0;
      double total = 0.0;
      for (int t = lo; t < N; ++t) total += (m(q, t) = draw()).real();
      for (int t = lo; t < N; ++t) m(q, t) /= total;
    }
  }
  require_valid(s);
  return s;
}

}  // namespace qfa
