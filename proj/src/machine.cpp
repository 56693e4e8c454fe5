#include "qfa/machine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qfa {

Role StateRoles::role_of(int q) const {
  if (nonhalting.count(q)) return Role::Nonhalting;
  if (accepting.count(q)) return Role::Accepting;
  if (rejecting.count(q)) return Role::Rejecting;
  if (reset_targets.count(q)) return Role::Reset;
  throw ValidationError("state " + std::to_string(q) + " has no role");
}

std::set<int> StateRoles::targets() const {
  std::set<int> out;
  for (const auto& kv : reset_targets) out.insert(kv.second);
  return out;
}

int MachineSpec::symbol_id(char c) const {
  const auto pos = alphabet.find(c);
  if (pos == std::string::npos) {
    throw ArgumentError(std::string("symbol '") + c + "' is not in the alphabet \"" + alphabet +
                        "\"");
  }
  return static_cast<int>(pos) + 1;
}

std::string MachineSpec::symbol_name(int sym) const {
  if (sym == 0) return kCentName;
  if (sym == dollar()) return kDollarName;
  if (sym < 0 || sym > dollar()) throw DimensionError("symbol id out of range");
  return std::string(1, alphabet[static_cast<std::size_t>(sym - 1)]);
}

int MachineSpec::symbol_from_name(const std::string& name) const {
  if (name == kCentName) return 0;
  if (name == kDollarName) return dollar();
  if (name.size() == 1) {
    const auto pos = alphabet.find(name[0]);
    if (pos != std::string::npos) return static_cast<int>(pos) + 1;
  }
  throw SpecError("unknown tape symbol \"" + name + "\"");
}

int MachineSpec::state_index(const std::string& label) const {
  for (int q = 0; q < num_states(); ++q) {
    if (state_labels[static_cast<std::size_t>(q)] == label) return q;
  }
  throw ArgumentError("no state labelled \"" + label + "\"");
}

bool MachineSpec::is_restart_only() const {
  for (const auto& kv : roles.reset_targets) {
    if (kv.second != initial) return false;
  }
  return true;
}

bool MachineSpec::operator==(const MachineSpec& o) const {
  if (kind != o.kind || motion != o.motion || alphabet != o.alphabet ||
      state_labels != o.state_labels || !(roles == o.roles) || directions != o.directions ||
      initial != o.initial || transitions.size() != o.transitions.size()) {
    return false;
  }
  for (std::size_t s = 0; s < transitions.size(); ++s) {
    if (transitions[s].rows() != o.transitions[s].rows() ||
        transitions[s].cols() != o.transitions[s].cols() || transitions[s] != o.transitions[s]) {
      return false;
    }
  }
  return true;
}

TapeWord TapeWord::make(const std::string& alphabet, const std::string& input) {
  TapeWord w;
  w.input = input;
  w.tape.reserve(input.size() + 2);
  w.tape.push_back(0);
  for (char c : input) {
    const auto pos = alphabet.find(c);
    if (pos == std::string::npos) {
      throw ArgumentError(std::string("symbol '") + c + "' is not in the alphabet \"" + alphabet +
                          "\"");
    }
    w.tape.push_back(static_cast<int>(pos) + 1);
  }
  w.tape.push_back(static_cast<int>(alphabet.size()) + 1);
  return w;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) os << "; ";
    os << violations[i].code << ": " << violations[i].message;
  }
  return os.str();
}

ValidationReport validate_machine(const MachineSpec& spec) {
  ValidationReport r;
  auto add = [&](const std::string& code, const std::string& msg) {
    r.violations.push_back({code, msg});
  };
  const int n = spec.num_states();
  if (n == 0) {
    add("shape", "machine has no states");
    return r;
  }

  // alphabet
  for (std::size_t i = 0; i < spec.alphabet.size(); ++i) {
    if (spec.alphabet.find(spec.alphabet[i]) != i) {
      add("alphabet", std::string("duplicate symbol '") + spec.alphabet[i] + "'");
    }
  }

  // roles partition the state set
  std::vector<int> seen(static_cast<std::size_t>(n), 0);
  auto mark = [&](int q, const char* set_name) {
    if (q < 0 || q >= n) {
      add("roles", std::string(set_name) + " contains out-of-range state " + std::to_string(q));
      return;
    }
    ++seen[static_cast<std::size_t>(q)];
  };
  for (int q : spec.roles.nonhalting) mark(q, "nonhalting");
  for (int q : spec.roles.accepting) mark(q, "accepting");
  for (int q : spec.roles.rejecting) mark(q, "rejecting");
  for (const auto& kv : spec.roles.reset_targets) {
    mark(kv.first, "reset");
    if (!spec.roles.nonhalting.count(kv.second)) {
      add("roles", "reset state " + std::to_string(kv.first) + " targets " +
                       std::to_string(kv.second) + ", which is not nonhalting");
    }
  }
  for (int q = 0; q < n; ++q) {
    const int c = seen[static_cast<std::size_t>(q)];
    if (c == 0) add("roles", "state " + std::to_string(q) + " has no role");
    if (c > 1) add("roles", "state " + std::to_string(q) + " has more than one role");
  }
  if (!spec.roles.nonhalting.empty()) {
    const int k = static_cast<int>(spec.roles.nonhalting.size());
    if (*spec.roles.nonhalting.rbegin() != k - 1) {
      add("roles", "nonhalting states must carry the lowest indices");
    }
  }
  if (!spec.roles.nonhalting.count(spec.initial)) {
    add("roles", "initial state " + std::to_string(spec.initial) + " is not nonhalting");
  }

  // directions
  if (static_cast<int>(spec.directions.size()) != n) {
    add("directions", "expected " + std::to_string(n) + " directions, got " +
                          std::to_string(spec.directions.size()));
  } else {
    for (int q = 0; q < n; ++q) {
      const int d = spec.directions[static_cast<std::size_t>(q)];
      if (d < -1 || d > 1) add("directions", "state " + std::to_string(q) + " has direction " +
                                                 std::to_string(d));
      if (spec.motion == Motion::OneWay && d != 1) {
        add("directions", "one-way machine has non-right move into state " + std::to_string(q));
      }
    }
  }

  // transitions
  if (static_cast<int>(spec.transitions.size()) != spec.num_symbols()) {
    add("shape", "expected " + std::to_string(spec.num_symbols()) + " transition matrices, got " +
                     std::to_string(spec.transitions.size()));
    return r;
  }
  for (int s = 0; s < spec.num_symbols(); ++s) {
    const ComplexMatrix& m = spec.transitions[static_cast<std::size_t>(s)];
    const std::string name = spec.symbol_name(s);
    if (m.rows() != n || m.cols() != n) {
      add("shape", "matrix for " + name + " is " + std::to_string(m.rows()) + "x" +
                       std::to_string(m.cols()));
      continue;
    }
    if (!m.allFinite()) {
      add("shape", "matrix for " + name + " has non-finite entries");
      continue;
    }
    if (spec.kind == Kind::Quantum) {
      const double defect = unitarity_defect(m);
      if (defect > kStructuralTol) {
        add("unitarity", "matrix for " + name + " is not unitary (defect " +
                             std::to_string(defect) + ")");
      }
    } else {
      if (m.imag().cwiseAbs().maxCoeff() > kStructuralTol ||
          !is_row_stochastic(m.real(), kStructuralTol)) {
        add("stochastic", "matrix for " + name + " is not row-stochastic");
      }
    }
  }
  return r;
}

void require_valid(const MachineSpec& spec) {
  const auto report = validate_machine(spec);
  if (!report.ok()) throw ValidationError(report.summary());
}

ComplexMatrix column_operator(const MachineSpec& spec, int sym) {
  const ComplexMatrix& m = spec.transitions.at(static_cast<std::size_t>(sym));
  if (spec.kind == Kind::Quantum) return m;
  return m.transpose();
}

ComplexMatrix induced_step_operator(const MachineSpec& spec, const TapeWord& word) {
  if (spec.motion != Motion::TwoWay) {
    throw UnsupportedError("induced_step_operator needs a two-way machine");
  }
  const Index q_count = spec.num_states();
  const Index n = word.length();
  ComplexMatrix op = ComplexMatrix::Zero(q_count * n, q_count * n);
  for (Index i = 0; i < n; ++i) {
    const ComplexMatrix t = column_operator(spec, word.tape[static_cast<std::size_t>(i)]);
    for (Index q = 0; q < q_count; ++q) {
      for (Index qp = 0; qp < q_count; ++qp) {
        const Complex v = t(qp, q);
        if (v == Complex(0.0, 0.0)) continue;
        const Index j = ((i + spec.directions[static_cast<std::size_t>(qp)]) % n + n) % n;
        op(qp * n + j, q * n + i) += v;
      }
    }
  }
  if (spec.kind == Kind::Quantum && !is_unitary(op, kReconstructionTol)) {
    throw ValidationError("induced step operator is not unitary for word \"" + word.input + "\"");
  }
  return op;
}

MachineSpec permute_states(const MachineSpec& spec, const std::vector<int>& perm) {
  const int n = spec.num_states();
  if (static_cast<int>(perm.size()) != n) throw DimensionError("permutation size mismatch");
  MachineSpec out = spec;
  out.state_labels.assign(static_cast<std::size_t>(n), "");
  out.directions.assign(static_cast<std::size_t>(n), 1);
  for (int q = 0; q < n; ++q) {
    out.state_labels[static_cast<std::size_t>(perm[q])] = spec.state_labels[static_cast<std::size_t>(q)];
    out.directions[static_cast<std::size_t>(perm[q])] = spec.directions[static_cast<std::size_t>(q)];
  }
  auto map_set = [&](const std::set<int>& s) {
    std::set<int> o;
    for (int q : s) o.insert(perm[static_cast<std::size_t>(q)]);
    return o;
  };
  out.roles.nonhalting = map_set(spec.roles.nonhalting);
  out.roles.accepting = map_set(spec.roles.accepting);
  out.roles.rejecting = map_set(spec.roles.rejecting);
  out.roles.reset_targets.clear();
  for (const auto& kv : spec.roles.reset_targets) {
    out.roles.reset_targets[perm[static_cast<std::size_t>(kv.first)]] =
        perm[static_cast<std::size_t>(kv.second)];
  }
  out.initial = perm[static_cast<std::size_t>(spec.initial)];
  for (std::size_t s = 0; s < spec.transitions.size(); ++s) {
    const ComplexMatrix& m = spec.transitions[s];
    ComplexMatrix p(n, n);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) p(perm[r], perm[c]) = m(r, c);
    }
    out.transitions[s] = p;
  }
  return out;
}

MachineSpec canonicalize(const MachineSpec& spec) {
  const int n = spec.num_states();
  std::vector<int> perm(static_cast<std::size_t>(n));
  int next = 0;
  for (int q = 0; q < n; ++q) {
    if (spec.roles.nonhalting.count(q)) perm[static_cast<std::size_t>(q)] = next++;
  }
  for (int q = 0; q < n; ++q) {
    if (!spec.roles.nonhalting.count(q)) perm[static_cast<std::size_t>(q)] = next++;
  }
  return permute_states(spec, perm);
}

std::vector<std::string> enumerate_words_exact(const std::string& alphabet, int len) {
  std::vector<std::string> out;
  if (len < 0) return out;
  if (alphabet.empty()) {
    if (len == 0) out.emplace_back();
    return out;
  }
  std::vector<std::size_t> digits(static_cast<std::size_t>(len), 0);
  while (true) {
    std::string w;
    for (auto d : digits) w.push_back(alphabet[d]);
    out.push_back(w);
    int i = len - 1;
    while (i >= 0 && digits[static_cast<std::size_t>(i)] + 1 == alphabet.size()) {
      digits[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
    ++digits[static_cast<std::size_t>(i)];
  }
  return out;
}

std::vector<std::string> enumerate_words(const std::string& alphabet, int max_len) {
  std::vector<std::string> out;
  for (int len = 0; len <= max_len; ++len) {
    auto part = enumerate_words_exact(alphabet, len);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace qfa
