#pragma once

#include <string>

#include "qfa/machine.hpp"
#include "qfa/qcfa.hpp"

namespace qfa {

// JSON machine files. Complex entries are [re, im] pairs; matrices are lists
// of rows. "orientation" says how a matrix is laid out: "columns" means
// column q is the image of q, "rows" means row q is the out-distribution of
// q. Files may use either; loading converts to the in-memory convention.
// Role lists and "initial" accept indices or state labels.
std::string save_machine(const MachineSpec& spec);
MachineSpec load_machine(const std::string& text);  // SpecError on bad input

void save_machine_file(const MachineSpec& spec, const std::string& path);
MachineSpec load_machine_file(const std::string& path);

// Same format with "type": "qcfa" and program entries tagged "unitary" or
// "measurement".
std::string save_qcfa(const QcfaSpec& spec);
QcfaSpec load_qcfa(const std::string& text);

}  // namespace qfa
