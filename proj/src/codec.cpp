#include "qfa/codec.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qfa {

using nlohmann::json;

namespace {

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

[[noreturn]] void schema(const std::string& where, const std::string& what) {
  throw SpecError(where + ": " + what);
}

const json& field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) schema(where, std::string("missing field \"") + key + "\"");
  return *it;
}

int as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) schema(where, "expected an integer");
  return j.get<int>();
}

double as_number(const json& j, const std::string& where) {
  if (!j.is_number()) schema(where, "expected a number");
  return j.get<double>();
}

std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) schema(where, "expected a string");
  return j.get<std::string>();
}

ComplexMatrix matrix_from_json(const json& j, int n, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) {
    schema(where, "expected " + std::to_string(n) + " rows");
  }
  ComplexMatrix m(n, n);
  for (int r = 0; r < n; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    const std::string rw = where + "[" + std::to_string(r) + "]";
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      schema(rw, "expected " + std::to_string(n) + " entries");
    }
    for (int c = 0; c < n; ++c) {
      const json& e = row[static_cast<std::size_t>(c)];
      const std::string ew = rw + "[" + std::to_string(c) + "]";
      if (e.is_number()) {
        m(r, c) = e.get<double>();
      } else if (e.is_array() && e.size() == 2) {
        m(r, c) = Complex(as_number(e[0], ew), as_number(e[1], ew));
      } else {
        schema(ew, "expected [re, im]");
      }
    }
  }
  return m;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpecError("parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

int state_ref(const json& j, const std::vector<std::string>& labels, const std::string& where) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == s) return static_cast<int>(i);
    }
    schema(where, "unknown state \"" + s + "\"");
  }
  const int q = as_int(j, where);
  if (q < 0 || q >= static_cast<int>(labels.size())) schema(where, "state index out of range");
  return q;
}

std::set<int> state_set(const json& j, const std::vector<std::string>& labels,
                        const std::string& where) {
  if (!j.is_array()) schema(where, "expected a list of states");
  std::set<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.insert(state_ref(j[i], labels, where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::string alphabet_from_json(const json& j) {
  if (!j.is_array()) schema("alphabet", "expected a list of one-character strings");
  std::string out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string s = as_string(j[i], "alphabet[" + std::to_string(i) + "]");
    if (s.size() != 1) schema("alphabet[" + std::to_string(i) + "]", "symbols are single characters");
    out += s;
  }
  return out;
}

json alphabet_to_json(const std::string& alphabet) {
  json a = json::array();
  for (char c : alphabet) a.push_back(std::string(1, c));
  return a;
}

std::vector<std::string> labels_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) schema(where, "expected a list of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(as_string(j[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

// Tape symbol names shared by both machine kinds.
std::string tape_symbol_name(const std::string& alphabet, int sym) {
  if (sym == 0) return kCentName;
  if (sym == static_cast<int>(alphabet.size()) + 1) return kDollarName;
  return std::string(1, alphabet[static_cast<std::size_t>(sym - 1)]);
}

int tape_symbol_id(const std::string& alphabet, const std::string& name, const std::string& where) {
  if (name == kCentName) return 0;
  if (name == kDollarName) return static_cast<int>(alphabet.size()) + 1;
  if (name.size() == 1) {
    const auto pos = alphabet.find(name[0]);
    if (pos != std::string::npos) return static_cast<int>(pos) + 1;
  }
  schema(where, "unknown tape symbol \"" + name + "\"");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string save_machine(const MachineSpec& spec) {
  json j;
  j["kind"] = spec.kind == Kind::Quantum ? "quantum" : "probabilistic";
  j["motion"] = spec.motion == Motion::OneWay ? "one-way" : "two-way";
  j["alphabet"] = alphabet_to_json(spec.alphabet);
  j["state_labels"] = spec.state_labels;
  json roles;
  roles["nonhalting"] = spec.roles.nonhalting;
  roles["accepting"] = spec.roles.accepting;
  roles["rejecting"] = spec.roles.rejecting;
  json resets = json::object();
  for (const auto& [r, t] : spec.roles.reset_targets) resets[std::to_string(r)] = t;
  roles["reset_targets"] = resets;
  j["roles"] = roles;
  j["initial"] = spec.initial;
  j["directions"] = spec.directions;
  j["orientation"] = spec.kind == Kind::Quantum ? "columns" : "rows";
  json tr = json::object();
  for (int s = 0; s < static_cast<int>(spec.transitions.size()); ++s) {
    tr[spec.symbol_name(s)] = matrix_to_json(spec.transitions[static_cast<std::size_t>(s)]);
  }
  j["transitions"] = tr;
  return j.dump(2) + "\n";
}

MachineSpec load_machine(const std::string& text) {
  const json j = parse(text);
  if (!j.is_object()) schema("$", "expected an object");
  MachineSpec spec;
  const std::string kind = as_string(field(j, "kind", "$"), "kind");
  if (kind == "quantum") spec.kind = Kind::Quantum;
  else if (kind == "probabilistic") spec.kind = Kind::Probabilistic;
  else schema("kind", "expected \"quantum\" or \"probabilistic\"");

  const std::string motion = as_string(field(j, "motion", "$"), "motion");
  if (motion == "one-way") spec.motion = Motion::OneWay;
  else if (motion == "two-way") spec.motion = Motion::TwoWay;
  else schema("motion", "expected \"one-way\" or \"two-way\"");

  spec.alphabet = alphabet_from_json(field(j, "alphabet", "$"));
  spec.state_labels = labels_from_json(field(j, "state_labels", "$"), "state_labels");
  const int n = spec.num_states();
  if (n == 0) schema("state_labels", "no states");

  const json& roles = field(j, "roles", "$");
  spec.roles.nonhalting = state_set(field(roles, "nonhalting", "roles"), spec.state_labels, "roles.nonhalting");
  spec.roles.accepting = state_set(field(roles, "accepting", "roles"), spec.state_labels, "roles.accepting");
  spec.roles.rejecting = state_set(field(roles, "rejecting", "roles"), spec.state_labels, "roles.rejecting");
  if (auto it = roles.find("reset_targets"); it != roles.end()) {
    if (!it->is_object()) schema("roles.reset_targets", "expected an object");
    for (const auto& [k, v] : it->items()) {
      const std::string where = "roles.reset_targets." + k;
      int r = -1;
      try {
        std::size_t used = 0;
        r = std::stoi(k, &used);
        if (used != k.size()) r = -1;
      } catch (const std::exception&) {
        r = -1;
      }
      if (r < 0) r = state_ref(json(k), spec.state_labels, where);
      if (r >= n) schema(where, "state index out of range");
      spec.roles.reset_targets[r] = state_ref(v, spec.state_labels, where);
    }
  }
  spec.initial = state_ref(field(j, "initial", "$"), spec.state_labels, "initial");

  if (auto it = j.find("directions"); it != j.end()) {
    if (!it->is_array() || static_cast<int>(it->size()) != n) {
      schema("directions", "expected one entry per state");
    }
    for (std::size_t i = 0; i < it->size(); ++i) {
      spec.directions.push_back(as_int((*it)[i], "directions[" + std::to_string(i) + "]"));
    }
  } else if (spec.motion == Motion::OneWay) {
    spec.directions.assign(static_cast<std::size_t>(n), 1);
  } else {
    schema("$", "two-way machines need \"directions\"");
  }

  const std::string native = spec.kind == Kind::Quantum ? "columns" : "rows";
  std::string orientation = native;
  if (auto it = j.find("orientation"); it != j.end()) {
    orientation = as_string(*it, "orientation");
    if (orientation != "columns" && orientation != "rows") {
      schema("orientation", "expected \"columns\" or \"rows\"");
    }
  }
  const json& tr = field(j, "transitions", "$");
  if (!tr.is_object()) schema("transitions", "expected an object keyed by symbol");
  spec.transitions.assign(static_cast<std::size_t>(spec.num_symbols()), ComplexMatrix());
  std::vector<char> seen(static_cast<std::size_t>(spec.num_symbols()), 0);
  for (const auto& [name, m] : tr.items()) {
    const std::string where = "transitions." + name;
    const int sym = tape_symbol_id(spec.alphabet, name, where);
    ComplexMatrix mat = matrix_from_json(m, n, where);
    if (orientation != native) mat.transposeInPlace();
    spec.transitions[static_cast<std::size_t>(sym)] = std::move(mat);
    seen[static_cast<std::size_t>(sym)] = 1;
  }
  for (int s = 0; s < spec.num_symbols(); ++s) {
    if (!seen[static_cast<std::size_t>(s)]) schema("transitions", "no matrix for " + spec.symbol_name(s));
  }
  return spec;
}

void save_machine_file(const MachineSpec& spec, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SpecError("cannot write " + path);
  out << save_machine(spec);
}

MachineSpec load_machine_file(const std::string& path) { return load_machine(read_file(path)); }

std::string save_qcfa(const QcfaSpec& spec) {
  json j;
  j["type"] = "qcfa";
  j["quantum_states"] = spec.quantum_states;
  j["quantum_labels"] = spec.quantum_labels;
  j["initial_quantum"] = spec.initial_quantum;
  j["alphabet"] = alphabet_to_json(spec.alphabet);
  j["classical_labels"] = spec.classical_labels;
  j["initial_classical"] = spec.initial_classical;
  j["accepting"] = spec.accepting;
  j["rejecting"] = spec.rejecting;
  json program = json::array();
  for (const auto& [key, op] : spec.program) {
    json e;
    e["state"] = key.first;
    e["symbol"] = tape_symbol_name(spec.alphabet, key.second);
    if (const auto* u = std::get_if<ComplexMatrix>(&op)) {
      e["op"] = "unitary";
      e["matrix"] = matrix_to_json(*u);
    } else {
      const auto& m = std::get<Measurement>(op);
      e["op"] = "measurement";
      e["labels"] = m.labels;
      json ps = json::array();
      for (const auto& p : m.projectors) ps.push_back(matrix_to_json(p));
      e["projectors"] = ps;
    }
    program.push_back(std::move(e));
  }
  j["program"] = program;
  json delta = json::array();
  for (const auto& [key, mv] : spec.delta) {
    delta.push_back({{"state", std::get<0>(key)},
                     {"symbol", tape_symbol_name(spec.alphabet, std::get<1>(key))},
                     {"outcome", std::get<2>(key)},
                     {"next", mv.next},
                     {"direction", mv.direction}});
  }
  j["delta"] = delta;
  return j.dump(2) + "\n";
}

QcfaSpec load_qcfa(const std::string& text) {
  const json j = parse(text);
  if (!j.is_object()) schema("$", "expected an object");
  if (as_string(field(j, "type", "$"), "type") != "qcfa") schema("type", "expected \"qcfa\"");
  QcfaSpec s;
  s.quantum_states = as_int(field(j, "quantum_states", "$"), "quantum_states");
  if (s.quantum_states <= 0) schema("quantum_states", "must be positive");
  s.quantum_labels = labels_from_json(field(j, "quantum_labels", "$"), "quantum_labels");
  s.initial_quantum = as_int(field(j, "initial_quantum", "$"), "initial_quantum");
  s.alphabet = alphabet_from_json(field(j, "alphabet", "$"));
  s.classical_labels = labels_from_json(field(j, "classical_labels", "$"), "classical_labels");
  s.initial_classical = state_ref(field(j, "initial_classical", "$"), s.classical_labels, "initial_classical");
  s.accepting = state_set(field(j, "accepting", "$"), s.classical_labels, "accepting");
  s.rejecting = state_set(field(j, "rejecting", "$"), s.classical_labels, "rejecting");
  const int d = s.quantum_states;

  const json& program = field(j, "program", "$");
  if (!program.is_array()) schema("program", "expected a list");
  for (std::size_t i = 0; i < program.size(); ++i) {
    const json& e = program[i];
    const std::string where = "program[" + std::to_string(i) + "]";
    const int st = state_ref(field(e, "state", where), s.classical_labels, where + ".state");
    const int sym = tape_symbol_id(s.alphabet, as_string(field(e, "symbol", where), where + ".symbol"), where);
    const std::string op = as_string(field(e, "op", where), where + ".op");
    if (op == "unitary") {
      s.program[{st, sym}] = matrix_from_json(field(e, "matrix", where), d, where + ".matrix");
    } else if (op == "measurement") {
      Measurement m;
      const json& ps = field(e, "projectors", where);
      if (!ps.is_array()) schema(where + ".projectors", "expected a list");
      for (std::size_t k = 0; k < ps.size(); ++k) {
        m.projectors.push_back(matrix_from_json(ps[k], d, where + ".projectors[" + std::to_string(k) + "]"));
      }
      if (auto it = e.find("labels"); it != e.end()) {
        m.labels = labels_from_json(*it, where + ".labels");
      } else {
        for (std::size_t k = 0; k < ps.size(); ++k) m.labels.push_back(std::to_string(k));
      }
      s.program[{st, sym}] = std::move(m);
    } else {
      schema(where + ".op", "expected \"unitary\" or \"measurement\"");
    }
  }
  const json& delta = field(j, "delta", "$");
  if (!delta.is_array()) schema("delta", "expected a list");
  for (std::size_t i = 0; i < delta.size(); ++i) {
    const json& e = delta[i];
    const std::string where = "delta[" + std::to_string(i) + "]";
    const int st = state_ref(field(e, "state", where), s.classical_labels, where + ".state");
    const int sym = tape_symbol_id(s.alphabet, as_string(field(e, "symbol", where), where + ".symbol"), where);
    const int outcome = e.contains("outcome") ? as_int(e["outcome"], where + ".outcome") : 0;
    QcfaMove mv;
    mv.next = state_ref(field(e, "next", where), s.classical_labels, where + ".next");
    mv.direction = as_int(field(e, "direction", where), where + ".direction");
    s.delta[{st, sym, outcome}] = mv;
  }
  return s;
}

}  // namespace qfa
