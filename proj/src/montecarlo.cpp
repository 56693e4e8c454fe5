#include "qfa/montecarlo.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <random>
#include <vector>

#include "qfa/round.hpp"

namespace qfa {

double SampleStats::acceptance() const {
  const long halted = accepted + rejected;
  return halted > 0 ? static_cast<double>(accepted) / static_cast<double>(halted) : 0.0;
}

namespace {

enum class Outcome { Accept, Reject, Reset, Continue };

struct Branch {
  Outcome kind;
  int target;  // reset target
  double p;    // conditional on having continued so far
};

// Within a round every collapse except "continue" ends the round, so the
// renormalised state after k continues depends only on the start state. The
// outcome distribution of each step is therefore computed once per start
// state, by propagating and collapsing that single trajectory, and reused by
// every sampled run.
class RoundSampler {
 public:
  RoundSampler(const MachineSpec& spec, const TapeWord& word, int start, long step_cap)
      : spec_(spec), word_(word), cap_(step_cap) {
    const Index n = word.length();
    stride_ = spec.motion == Motion::TwoWay ? n : 1;
    psi_ = ComplexVector::Zero(spec.num_states() * stride_);
    psi_(start * stride_) = 1.0;
    if (spec.motion == Motion::TwoWay) op_ = induced_step_operator(spec, word);
  }

  // Distribution of step k (1-based), or nullptr when the round cannot reach it.
  const std::vector<Branch>* step(long k) {
    while (static_cast<long>(steps_.size()) < k && !dead_) extend();
    if (static_cast<long>(steps_.size()) < k) return nullptr;
    return &steps_[static_cast<std::size_t>(k - 1)];
  }

 private:
  void extend() {
    const long k = static_cast<long>(steps_.size()) + 1;
    const long limit = spec_.motion == Motion::OneWay ? word_.length() : cap_;
    if (k > limit) {
      dead_ = true;
      return;
    }
    if (spec_.motion == Motion::OneWay) {
      psi_ = column_operator(spec_, word_.tape[static_cast<std::size_t>(k - 1)]) * psi_;
    } else {
      psi_ = op_ * psi_;
    }
    double acc = 0.0, rej = 0.0, cont = 0.0;
    std::map<int, double> reset;
    for (int q = 0; q < spec_.num_states(); ++q) {
      double w = 0.0;
      for (Index i = 0; i < stride_; ++i) w += outcome_weight(spec_.kind, psi_(q * stride_ + i));
      switch (spec_.roles.role_of(q)) {
        case Role::Nonhalting:
          cont += w;
          continue;
        case Role::Accepting:
          acc += w;
          break;
        case Role::Rejecting:
          rej += w;
          break;
        case Role::Reset:
          reset[spec_.roles.reset_targets.at(q)] += w;
          break;
      }
      psi_.segment(q * stride_, stride_).setZero();
    }
    double total = acc + rej + cont;
    for (const auto& kv : reset) total += kv.second;
    std::vector<Branch> b;
    if (total > 0.0) {
      if (acc > 0.0) b.push_back({Outcome::Accept, -1, acc / total});
      if (rej > 0.0) b.push_back({Outcome::Reject, -1, rej / total});
      for (const auto& kv : reset) {
        if (kv.second > 0.0) b.push_back({Outcome::Reset, kv.first, kv.second / total});
      }
      if (cont > 0.0) b.push_back({Outcome::Continue, -1, cont / total});
    }
    steps_.push_back(std::move(b));
    if (cont <= 0.0) {
      dead_ = true;
      return;
    }
    psi_ /= spec_.kind == Kind::Quantum ? std::sqrt(cont) : cont;
  }

  const MachineSpec& spec_;
  const TapeWord& word_;
  long cap_;
  Index stride_ = 1;
  ComplexMatrix op_;
  ComplexVector psi_;
  std::vector<std::vector<Branch>> steps_;
  bool dead_ = false;
};

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

SampleStats sample_runs(const MachineSpec& spec, const std::string& word, long n,
                        std::uint64_t seed, const SampleCaps& caps) {
  if (n < 1) throw ArgumentError("sample count must be at least 1");
  const TapeWord tw = TapeWord::make(spec, word);
  const long step_cap = caps.step_cap > 0 ? caps.step_cap : default_step_cap(spec, tw);
  std::map<int, std::unique_ptr<RoundSampler>> samplers;
  auto sampler_for = [&](int start) -> RoundSampler& {
    auto& slot = samplers[start];
    if (!slot) slot = std::make_unique<RoundSampler>(spec, tw, start, step_cap);
    return *slot;
  };

  // per-run results, reduced afterwards in index order
  struct RunResult {
    int status;  // 1 accept, 0 reject, -1 censored
    long steps;
    long rounds;
  };
  std::vector<RunResult> runs(static_cast<std::size_t>(n));

  for (long r = 0; r < n; ++r) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(r),
                      static_cast<std::uint32_t>(static_cast<std::uint64_t>(r) >> 32)};
    std::mt19937_64 rng(seq);
    RunResult res{-1, 0, 1};
    int start = spec.initial;
    bool done = false;
    while (!done) {
      RoundSampler& rs = sampler_for(start);
      bool next_round = false;
      for (long k = 1; !done && !next_round; ++k) {
        const std::vector<Branch>* dist = rs.step(k);
        if (dist == nullptr || dist->empty()) {
          done = true;  // step cap reached, or nothing left to measure
          break;
        }
        ++res.steps;
        const double u = uniform01(rng);
        double cum = 0.0;
        const Branch* pick = &dist->back();
        for (const Branch& b : *dist) {
          cum += b.p;
          if (u < cum) {
            pick = &b;
            break;
          }
        }
        switch (pick->kind) {
          case Outcome::Accept:
            res.status = 1;
            done = true;
            break;
          case Outcome::Reject:
            res.status = 0;
            done = true;
            break;
          case Outcome::Reset:
            if (res.rounds >= caps.max_rounds) {
              done = true;
            } else {
              ++res.rounds;
              start = pick->target;
              next_round = true;
            }
            break;
          case Outcome::Continue:
            break;
        }
      }
    }
    runs[static_cast<std::size_t>(r)] = res;
  }

  SampleStats st;
  st.n = n;
  double steps = 0.0, rounds = 0.0;
  for (const RunResult& res : runs) {
    if (res.status < 0) {
      ++st.censored;
      continue;
    }
    if (res.status == 1) ++st.accepted;
    else ++st.rejected;
    steps += static_cast<double>(res.steps);
    rounds += static_cast<double>(res.rounds);
  }
  const long halted = st.accepted + st.rejected;
  if (halted > 0) {
    st.mean_steps = steps / static_cast<double>(halted);
    st.mean_rounds = rounds / static_cast<double>(halted);
    const double p = st.acceptance();
    st.stderr_acc = std::sqrt(p * (1.0 - p) / static_cast<double>(halted));
  }
  return st;
}

}  // namespace qfa
