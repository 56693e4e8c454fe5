#include "qfa/absorbing.hpp"

#include <set>
#include <string>

#include "qfa/error.hpp"

namespace qfa {

AbsorbingChain::AbsorbingChain(int transient, int absorbing)
    : transient_(transient), absorbing_(absorbing), out_(static_cast<std::size_t>(transient)) {
  if (transient < 0 || absorbing < 0) throw DimensionError("AbsorbingChain: negative size");
}

void AbsorbingChain::add_transition(int from, int to, double p, double time_weight) {
  if (from < 0 || from >= transient_ || to < 0 || to >= transient_) {
    throw DimensionError("AbsorbingChain: transition index out of range");
  }
  if (p <= 0.0) return;
  Edge& e = out_[static_cast<std::size_t>(from)][to];
  e.p += p;
  e.m += time_weight;
}

void AbsorbingChain::add_absorption(int from, int sink, double p, double time_weight) {
  if (from < 0 || from >= transient_ || sink < 0 || sink >= absorbing_) {
    throw DimensionError("AbsorbingChain: absorption index out of range");
  }
  if (p <= 0.0) return;
  Edge& e = out_[static_cast<std::size_t>(from)][transient_ + sink];
  e.p += p;
  e.m += time_weight;
}

double AbsorbingChain::Solution::expected_time() const {
  double t = 0.0;
  for (double m : time_weight) t += m;
  return t;
}

AbsorbingChain::Solution AbsorbingChain::solve(int start) const {
  if (start < 0 || start >= transient_) throw DimensionError("AbsorbingChain: bad start");
  const int T = transient_;
  const int lost = T + absorbing_;
  const int src = lost + 1;

  std::vector<std::map<int, Edge>> rows(static_cast<std::size_t>(src + 1));
  std::vector<std::set<int>> preds(static_cast<std::size_t>(T));
  for (int i = 0; i < T; ++i) {
    rows[static_cast<std::size_t>(i)] = out_[static_cast<std::size_t>(i)];
    for (const auto& [j, e] : out_[static_cast<std::size_t>(i)]) {
      if (j < T && j != i) preds[static_cast<std::size_t>(j)].insert(i);
    }
  }
  // virtual source pointing at the start state
  rows[static_cast<std::size_t>(src)][start] = Edge{1.0, 0.0};
  preds[static_cast<std::size_t>(start)].insert(src);

  for (int k = 0; k < T; ++k) {
    auto& row_k = rows[static_cast<std::size_t>(k)];
    Edge self;
    if (auto it = row_k.find(k); it != row_k.end()) {
      self = it->second;
      row_k.erase(it);
    }
    double out_p = 0.0;
    for (const auto& kv : row_k) out_p += kv.second.p;

    for (int i : preds[static_cast<std::size_t>(k)]) {
      auto& row_i = rows[static_cast<std::size_t>(i)];
      auto it = row_i.find(k);
      if (it == row_i.end()) continue;
      const Edge a = it->second;
      row_i.erase(it);
      if (out_p <= 0.0) {
        row_i[lost].p += a.p;
        continue;
      }
      for (const auto& [j, b] : row_k) {
        Edge& e = row_i[j];
        e.p += a.p * b.p / out_p;
        e.m += (a.m * b.p + a.p * b.m) / out_p + a.p * b.p * self.m / (out_p * out_p);
        if (j < T && j != i) preds[static_cast<std::size_t>(j)].insert(i);
      }
    }
    for (const auto& kv : row_k) {
      if (kv.first < T) preds[static_cast<std::size_t>(kv.first)].erase(k);
    }
    row_k.clear();
    preds[static_cast<std::size_t>(k)].clear();
  }

  Solution sol;
  sol.prob.assign(static_cast<std::size_t>(absorbing_), 0.0);
  sol.time_weight.assign(static_cast<std::size_t>(absorbing_), 0.0);
  for (const auto& [j, e] : rows[static_cast<std::size_t>(src)]) {
    if (j == lost) {
      sol.lost += e.p;
    } else if (j >= T && j < lost) {
      sol.prob[static_cast<std::size_t>(j - T)] += e.p;
      sol.time_weight[static_cast<std::size_t>(j - T)] += e.m;
    }
  }
  return sol;
}

}  // namespace qfa
