#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "qfa/linalg.hpp"

namespace qfa {

enum class Kind { Quantum, Probabilistic };
enum class Motion { OneWay, TwoWay };
enum class Role { Nonhalting, Accepting, Rejecting, Reset };

inline constexpr const char* kCentName = "CENT";
inline constexpr const char* kDollarName = "DOLLAR";

struct StateRoles {
  std::set<int> nonhalting;
  std::set<int> accepting;
  std::set<int> rejecting;
  std::map<int, int> reset_targets;  // reset state -> state it restarts into

  Role role_of(int q) const;
  bool is_halting(int q) const { return accepting.count(q) || rejecting.count(q); }
  bool is_reset(int q) const { return reset_targets.count(q) != 0; }
  // Distinct targets, ascending.
  std::set<int> targets() const;

  bool operator==(const StateRoles&) const = default;
};

// Tape symbols are numbered 0 = CENT, 1..k = alphabet in order, k+1 = DOLLAR.
// transitions[sym] is |Q| x |Q|. Quantum: column q is the image of q.
// Probabilistic: row q is the out-distribution of q (entries real).
struct MachineSpec {
  Kind kind = Kind::Quantum;
  Motion motion = Motion::OneWay;
  std::string alphabet;  // one char per symbol
  std::vector<std::string> state_labels;
  StateRoles roles;
  std::vector<ComplexMatrix> transitions;
  std::vector<int> directions;  // per target state, in {-1, 0, +1}
  int initial = 0;

  int num_states() const { return static_cast<int>(state_labels.size()); }
  int num_symbols() const { return static_cast<int>(alphabet.size()) + 2; }
  int cent() const { return 0; }
  int dollar() const { return num_symbols() - 1; }
  // Id of an input character; throws ArgumentError when not in the alphabet.
  int symbol_id(char c) const;
  // "CENT", "DOLLAR" or the one-char symbol.
  std::string symbol_name(int sym) const;
  // Inverse of symbol_name; throws SpecError.
  int symbol_from_name(const std::string& name) const;
  int state_index(const std::string& label) const;

  bool has_reset() const { return !roles.reset_targets.empty(); }
  // Every reset state restarts into the initial state.
  bool is_restart_only() const;

  bool operator==(const MachineSpec&) const;
};

struct TapeWord {
  std::string input;
  std::vector<int> tape;  // CENT, symbols..., DOLLAR

  static TapeWord make(const std::string& alphabet, const std::string& input);
  static TapeWord make(const MachineSpec& spec, const std::string& input) {
    return make(spec.alphabet, input);
  }
  int length() const { return static_cast<int>(tape.size()); }
};

struct Violation {
  std::string code;  // "roles", "unitarity", "stochastic", "shape", "directions", ...
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

ValidationReport validate_machine(const MachineSpec& spec);
// Throws ValidationError carrying the summary when the report is not empty.
void require_valid(const MachineSpec& spec);

// Operator acting on column vectors of state weights: U for quantum,
// A^T for probabilistic.
ComplexMatrix column_operator(const MachineSpec& spec, int sym);

// Weight an amplitude (quantum) or mass (probabilistic) contributes to a
// measurement outcome.
inline double outcome_weight(Kind kind, const Complex& x) {
  return kind == Kind::Quantum ? std::norm(x) : x.real();
}

// Configuration-space step operator for a word, basis index q * n + i with
// n = tape length. Column convention for both kinds.
ComplexMatrix induced_step_operator(const MachineSpec& spec, const TapeWord& word);

// Relabel states so that new index perm[old] holds old state `old`.
MachineSpec permute_states(const MachineSpec& spec, const std::vector<int>& perm);

// Stable reordering putting nonhalting states first.
MachineSpec canonicalize(const MachineSpec& spec);

// All words over the alphabet of length <= max_len, shortlex order.
std::vector<std::string> enumerate_words(const std::string& alphabet, int max_len);
std::vector<std::string> enumerate_words_exact(const std::string& alphabet, int len);

}  // namespace qfa
