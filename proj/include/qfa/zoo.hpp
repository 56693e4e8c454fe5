#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qfa/languages.hpp"
#include "qfa/machine.hpp"

namespace qfa {

// Lower bound on the gap of a one-sided base machine: a * c^-n, or the
// constant a.
struct GapBound {
  enum class Form { Exponential, Constant };
  double a = 1.0;
  double c = 2.0;
  Form form = Form::Exponential;
};

// A base machine with one-sided unbounded error together with its bounded
// error, certainty-on-members version.
struct WrappedMachine {
  MachineSpec base;
  MachineSpec wrapped;
  GapBound gap;
};

MachineSpec build_am_qfa(int m, double eps);
MachineSpec build_am_pfa(int m, double eps);
WrappedMachine build_bm(int m, double eps);
WrappedMachine build_cm(int m, double eps);
WrappedMachine build_pal(double eps);
WrappedMachine build_leq_qfa(double eps);
MachineSpec build_leq_pfa(double eps);

// Gap bounds used by the builders.
GapBound bm_gap(int m);
GapBound cm_gap(int m);
GapBound pal_gap();
GapBound leq_gap();

// Restart-only wrapper around a reset-free one-way quantum base. The base
// reject states become restart states; a second branch rejects with
// amplitude sqrt(a eps) after a walker that decays by 1/sqrt(c) per symbol.
MachineSpec wrap_exponential(const MachineSpec& base, const GapBound& gap, double eps);
// As above but the second branch rejects on CENT. Adds two states.
MachineSpec wrap_constant(const MachineSpec& base, const GapBound& gap, double eps);
MachineSpec swap_accept_reject(const MachineSpec& spec);

struct PfaLift {
  MachineSpec machine;  // quantum, restart-only, 2n + 4 states
  double scale = 1.0;   // l
  double eps_prime = 0.0;
  int s_acc = -1;  // indices in machine
  int s_rej = -1;
};
PfaLift pfa_to_qfa_restart(const MachineSpec& pfa, double eps);
// eps^2 / (1 - 2 eps + 2 eps^2)
double squared_error_bound(double eps);

// Smallest k with P(Bin(2k+1, eps) >= k+1) <= eps_prime.
int amplification_rounds(double eps, double eps_prime);
struct AmplifiedMachine {
  MachineSpec machine;
  int k = 0;
};
// (k+1)^2 copies; copy (i, j) has seen i accepts and j rejects.
AmplifiedMachine amplify_reset(const MachineSpec& spec, double eps, double eps_prime);

enum class CertainSide { Members, NonMembers };
// Members: accept only when every copy accepts. NonMembers: the mirror.
MachineSpec chain_one_sided(const MachineSpec& spec, int copies, CertainSide side);

// Restart-only one-way PFA to a two-way PFA whose restarts walk the head back
// to CENT.
MachineSpec restart_to_twoway(const MachineSpec& pfa);

// Small machines used by tests and the verification battery.
MachineSpec toy_parity_pfa();
MachineSpec toy_two_target_reset();
MachineSpec toy_random_restart_pfa(std::uint64_t seed);

// One entry of the catalogue: a machine with the language it recognises and
// its advertised error bound (0 when it has none).
struct ZooMachine {
  std::string id;
  MachineSpec spec;
  Language language;
  double eps = 0.0;
};

struct FamilyRequest {
  std::string family;  // am, am-pfa, bm, cm, pal, leq, leq-pfa, parity, reset-toy, random-pfa
  int m = 2;
  double eps = 0.1;
  std::uint64_t seed = 1;
};
// Every machine a family produces (base and wrapped for the one-sided ones).
std::vector<ZooMachine> build_family(const FamilyRequest& req);
std::vector<std::string> family_names();

}  // namespace qfa
