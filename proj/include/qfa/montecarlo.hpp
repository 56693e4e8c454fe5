#pragma once

#include <cstdint>
#include <string>

#include "qfa/machine.hpp"

namespace qfa {

struct SampleCaps {
  long max_rounds = 1000000;
  long step_cap = 0;  // per round, two-way only; 0 = 10 * n * |Q|
};

struct SampleStats {
  long n = 0;
  long accepted = 0;
  long rejected = 0;
  long censored = 0;
  double mean_steps = 0.0;   // over halted runs
  double mean_rounds = 0.0;  // over halted runs
  double acceptance() const;  // accepted / (accepted + rejected)
  double stderr_acc = 0.0;
};

// Trajectory sampling with measurement collapse. Run r draws from its own
// mt19937_64 stream seeded with (seed, r), so the result depends only on the
// arguments and not on evaluation order.
SampleStats sample_runs(const MachineSpec& spec, const std::string& word, long n,
                        std::uint64_t seed, const SampleCaps& caps = {});

}  // namespace qfa
