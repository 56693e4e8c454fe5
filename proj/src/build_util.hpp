#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "qfa/linalg.hpp"
#include "qfa/machine.hpp"

namespace qfa::detail {

inline void require_eps(double eps) {
  if (!(eps > 0.0 && eps < 0.5)) throw ArgumentError("eps must lie in (0, 1/2)");
}

// Quantum machine described by a few known columns per symbol; everything
// else is filled in by complete_unitary.
class QuantumDraft {
 public:
  QuantumDraft(std::string alphabet, std::vector<std::string> labels)
      : alphabet_(std::move(alphabet)), labels_(std::move(labels)) {
    cols_.assign(alphabet_.size() + 2, PartialMatrix{static_cast<Index>(labels_.size()), {}});
  }

  int n() const { return static_cast<int>(labels_.size()); }
  int sym(char c) const { return static_cast<int>(alphabet_.find(c)) + 1; }
  int cent() const { return 0; }
  int dollar() const { return static_cast<int>(alphabet_.size()) + 1; }
  int num_symbols() const { return static_cast<int>(alphabet_.size()) + 2; }

  void set(int symbol, int from, std::initializer_list<std::pair<int, Complex>> image) {
    ComplexVector v = ComplexVector::Zero(n());
    for (const auto& [q, a] : image) v(q) += a;
    cols_[static_cast<std::size_t>(symbol)].columns[from] = v;
  }
  void set(int symbol, int from, const ComplexVector& v) {
    cols_[static_cast<std::size_t>(symbol)].columns[from] = v;
  }

  MachineSpec finish(StateRoles roles, int initial) const {
    MachineSpec s;
    s.kind = Kind::Quantum;
    s.motion = Motion::OneWay;
    s.alphabet = alphabet_;
    s.state_labels = labels_;
    s.roles = std::move(roles);
    s.initial = initial;
    s.directions.assign(labels_.size(), 1);
    for (const auto& p : cols_) s.transitions.push_back(complete_unitary(p));
    MachineSpec out = canonicalize(s);
    require_valid(out);
    return out;
  }

 private:
  std::string alphabet_;
  std::vector<std::string> labels_;
  std::vector<PartialMatrix> cols_;
};

inline std::set<int> range_set(int lo, int hi) {
  std::set<int> s;
  for (int i = lo; i < hi; ++i) s.insert(i);
  return s;
}

}  // namespace qfa::detail
