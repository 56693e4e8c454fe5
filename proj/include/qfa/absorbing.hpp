#pragma once

#include <map>
#include <vector>

namespace qfa {

// Discrete absorbing chain with time-weighted edges, solved by state
// elimination. Every edge carries a probability p and a time weight m = p * t
// (t = steps spent on the edge). Out-probabilities are always formed as sums of
// the remaining edges, never as 1 - self-loop, so chains whose halting
// probability is tiny keep full relative accuracy.
class AbsorbingChain {
 public:
  AbsorbingChain(int transient, int absorbing);

  int transient() const { return transient_; }
  int absorbing() const { return absorbing_; }

  // time_weight is p times the mean number of steps the edge takes. Calling
  // twice for the same pair accumulates.
  void add_transition(int from, int to, double p, double time_weight);
  void add_absorption(int from, int sink, double p, double time_weight);

  struct Solution {
    std::vector<double> prob;        // per absorbing state
    std::vector<double> time_weight;  // per absorbing state, sum of p * steps
    double lost = 0.0;  // mass trapped in a closed transient class
    double expected_time() const;  // sum of time weights; meaningful when lost == 0
  };

  Solution solve(int start) const;

 private:
  struct Edge {
    double p = 0.0;
    double m = 0.0;
  };
  int transient_;
  int absorbing_;
  // node ids: transients 0..T-1, absorbing T..T+A-1
  std::vector<std::map<int, Edge>> out_;
};

}  // namespace qfa
