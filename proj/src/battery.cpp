#include "qfa/battery.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qfa/codec.hpp"
#include "qfa/qcfa.hpp"

namespace qfa {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string show(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

std::string quoted(const std::string& w) { return "\"" + w + "\""; }

bool is_wrapped(const ZooMachine& z, const FamilyRequest& req) {
  const bool one_sided = req.family == "bm" || req.family == "cm" || req.family == "pal" || req.family == "leq";
  return one_sided && z.id.find("-base") == std::string::npos;
}

bool is_base(const ZooMachine& z) { return z.id.find("-base") != std::string::npos; }

GapBound family_gap(const FamilyRequest& req) {
  if (req.family == "bm") return bm_gap(req.m);
  if (req.family == "cm") return cm_gap(req.m);
  if (req.family == "pal") return pal_gap();
  return leq_gap();
}

}  // namespace

double advertised_runtime_bound(const FamilyRequest& req, const std::string& word) {
  const double n = static_cast<double>(word.size());
  const double eps = req.eps;
  if (req.family == "am" || req.family == "am-pfa") return 4.0 * std::pow(1.0 / eps, 2.0 * req.m + 5.0) * (n + 2.0);
  if (req.family == "pal") return 4.0 * (8.0 / eps) * std::pow(3.0, n) * (n + 2.0);
  if (req.family == "leq") return 4.0 * (32.0 / eps) * std::pow(2.0 * std::numbers::sqrt2, n) * (n + 2.0);
  if (req.family == "leq-pfa") return 4.0 * 3.0 * std::pow(2.0 / (eps * eps), n) * (n + 2.0);
  return kInf;
}

std::vector<Check> verify_machine(const ZooMachine& z, const FamilyRequest& req, const BatteryOptions& opt) {
  std::vector<Check> out;
  auto add = [&](const std::string& what, bool ok, const std::string& detail) {
    out.push_back({z.id + " " + what, ok, detail});
  };
  const MachineSpec& spec = z.spec;

  const ValidationReport rep = validate_machine(spec);
  add("structure", rep.ok(), rep.ok() ? std::to_string(spec.num_states()) + " states" : rep.summary());
  if (!rep.ok()) return out;

  bool codec_ok = false;
  std::string codec_detail;
  try {
    codec_ok = load_machine(save_machine(spec)) == spec;
    codec_detail = codec_ok ? "round trip exact" : "round trip differs";
  } catch (const Error& e) {
    codec_detail = e.what();
  }
  add("codec", codec_ok, codec_detail);

  const auto words = enumerate_words(spec.alphabet, opt.max_len);
  const bool two_way_pfa = spec.kind == Kind::Probabilistic && spec.motion == Motion::TwoWay;

  // mass conservation per round and overall
  {
    double worst = 0.0;
    std::string where;
    for (const auto& w : words) {
      if (!two_way_pfa) {
        const RoundResult r = run_round(spec, TapeWord::make(spec, w), spec.initial);
        const double defect = std::abs(r.p_acc + r.p_rej + r.p_reset_total() + r.residual - 1.0);
        if (defect > worst) worst = defect, where = w;
      }
      const DecisionReport d = decide(spec, w);
      const double defect = d.degenerate ? 0.0 : std::abs(d.acc + d.rej + d.lost - 1.0);
      if (defect > worst) worst = defect, where = w;
    }
    add("mass", worst <= 1e-9, "worst defect " + show(worst) + (where.empty() ? "" : " at " + quoted(where)));
  }

  if (z.eps > 0.0) {
    const ErrorVerdict v = error_verdict(spec, z.language.member, words, z.eps);
    std::string detail = std::to_string(words.size()) + " words";
    for (const auto& wv : v.words) {
      if (wv.verdict != Verdict::Pass) {
        detail += ", first " + std::string(verdict_name(wv.verdict)) + " at " + quoted(wv.word) +
                  " ratio " + show(wv.ratio);
        break;
      }
    }
    add("error bound", v.pass(), detail);

    double worst = 1.0;
    std::string where;
    for (const auto& w : words) {
      const DecisionReport d = decide(spec, w);
      const double right = z.language.member(w) ? d.acc : d.rej;
      if (right < worst) worst = right, where = w;
    }
    add("correct side", worst >= 1.0 - z.eps - 1e-12,
        "min " + show(worst) + " at " + quoted(where) + " vs " + show(1.0 - z.eps));
  }

  if (is_wrapped(z, req)) {
    double worst = 1.0;
    std::string where;
    for (const auto& w : words) {
      if (!z.language.member(w)) continue;
      const double acc = decide(spec, w).acc;
      if (acc < worst) worst = acc, where = w;
    }
    add("certainty", worst >= 1.0 - 1e-12, "min member P_acc " + show(worst) + (where.empty() ? "" : " at " + quoted(where)));
  }

  if (is_base(z)) {
    const GapBound gap = family_gap(req);
    const GapProfile g = gap_profile(spec, z.language.member, opt.max_len);
    bool ok = true;
    std::string detail = "bound a=" + show(gap.a) + (gap.form == GapBound::Form::Exponential ? " c=" + show(gap.c) : "");
    for (const auto& [n, val] : g.g) {
      if (!val) continue;
      const double bound = gap.form == GapBound::Form::Exponential ? gap.a * std::pow(gap.c, -n) : gap.a;
      if (*val < bound * (1.0 - 1e-12)) {
        ok = false;
        detail += ", n=" + std::to_string(n) + " gap " + show(*val);
        break;
      }
    }
    add("gap", ok, detail);
  }

  if (!spec.has_reset() || spec.is_restart_only()) {
    double worst = 0.0;
    std::string where;
    for (const auto& w : words) {
      const DecisionReport d = decide(spec, w);
      if (d.degenerate || std::isinf(d.lemma4_bound)) continue;
      const double r = d.expected_total_steps / d.lemma4_bound;
      if (r > worst) worst = r, where = w;
    }
    add("expected steps vs max_steps/p_halt", worst <= 1.0 + 1e-12,
        "max ratio " + show(worst) + (where.empty() ? "" : " at " + quoted(where)));
  }

  if (z.eps > 0.0 && !is_base(z) && std::isfinite(advertised_runtime_bound(req, ""))) {
    double worst = 0.0;
    std::string where;
    for (const auto& w : words) {
      const double r = decide(spec, w).expected_total_steps / advertised_runtime_bound(req, w);
      if (r > worst) worst = r, where = w;
    }
    add("runtime bound", worst <= 1.0, "max ratio to bound " + show(worst) + " at " + quoted(where));
  }

  if (spec.kind == Kind::Quantum && spec.motion == Motion::OneWay && spec.has_reset()) {
    const QcfaSpec lifted = lift_reset_to_qcfa(spec);
    const ValidationReport lrep = validate_qcfa(lifted);
    double worst = 0.0, steps_ratio = 0.0;
    std::string where;
    if (lrep.ok()) {
      for (const auto& w : enumerate_words(spec.alphabet, opt.lift_max_len)) {
        const DecisionReport d = decide(spec, w);
        const QcfaResult q = run_qcfa(lifted, TapeWord::make(spec, w));
        const double diff = std::max(std::abs(q.acc - d.acc), std::abs(q.rej - d.rej));
        if (diff > worst) worst = diff, where = w;
        if (std::isfinite(d.expected_total_steps) && d.expected_total_steps > 0.0) {
          steps_ratio = std::max(steps_ratio, q.expected_steps / d.expected_total_steps);
        }
      }
    }
    add("qcfa lift", lrep.ok() && worst <= 1e-9,
        lrep.ok() ? "max |diff| " + show(worst) + ", steps ratio " + show(steps_ratio) : lrep.summary());
    add("qcfa lift runtime", lrep.ok() && steps_ratio <= 3.0, "steps ratio " + show(steps_ratio));
  }
  return out;
}

std::vector<Check> verify_family(const FamilyRequest& req, const BatteryOptions& opt) {
  std::vector<Check> out;
  for (const ZooMachine& z : build_family(req)) {
    auto c = verify_machine(z, req, opt);
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

std::vector<FamilyRequest> default_battery() {
  std::vector<FamilyRequest> out;
  for (int m : {1, 2}) out.push_back({"am", m, 0.25, 1});
  out.push_back({"am-pfa", 1, 0.25, 1});
  for (int m : {1, 2, 3}) out.push_back({"bm", m, 0.1, 1});
  for (int m : {1, 2}) out.push_back({"cm", m, 0.1, 1});
  out.push_back({"pal", 1, 0.1, 1});
  out.push_back({"leq", 1, 0.1, 1});
  out.push_back({"leq-pfa", 1, 0.2, 1});
  out.push_back({"parity", 1, 0.1, 1});
  out.push_back({"reset-toy", 1, 0.1, 1});
  out.push_back({"random-pfa", 1, 0.1, 7});
  return out;
}

}  // namespace qfa
