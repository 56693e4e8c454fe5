#pragma once

#include <string>
#include <vector>

#include "qfa/zoo.hpp"

namespace qfa {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct BatteryOptions {
  int max_len = 6;       // exhaustive word battery
  int lift_max_len = 4;  // words pushed through the QCFA lift
};

// Structural, codec, mass, error-bound, certainty, runtime and lift checks
// for one catalogue machine.
std::vector<Check> verify_machine(const ZooMachine& z, const FamilyRequest& req,
                                  const BatteryOptions& opt = {});
std::vector<Check> verify_family(const FamilyRequest& req, const BatteryOptions& opt = {});
// Every family at small default parameters.
std::vector<FamilyRequest> default_battery();

// Runtime bound advertised for a family's bounded-error machine, or +inf when
// there is none.
double advertised_runtime_bound(const FamilyRequest& req, const std::string& word);

}  // namespace qfa
