#include "qfa/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qfa/battery.hpp"
#include "qfa/codec.hpp"
#include "qfa/report.hpp"
#include "qfa/zoo.hpp"

namespace qfa {

namespace {

constexpr int kMaxSweepLen = 12;

struct MachineArgs {
  std::string spec_path;
  std::string family;
  int m = 2;
  double eps = 0.1;
  std::uint64_t seed = 1;
  std::string variant;  // base | wrapped, empty = last one the family builds
  std::string language;  // for spec files: am, bm, cm, pal, leq
};

struct Selected {
  std::string id;
  MachineSpec spec;
  std::optional<Language> language;
  double eps = 0.0;
};

void add_machine_options(CLI::App* app, MachineArgs& a) {
  app->add_option("--spec", a.spec_path, "machine spec file (JSON)");
  app->add_option("--family", a.family, "zoo family");
  app->add_option("--m", a.m, "family parameter m");
  app->add_option("--eps", a.eps, "error bound");
  app->add_option("--machine-seed", a.seed, "seed for the random toy machine");
  app->add_option("--variant", a.variant, "base or wrapped")->check(CLI::IsMember({"base", "wrapped"}));
  app->add_option("--language", a.language, "language for judging a spec file")
      ->check(CLI::IsMember({"am", "bm", "cm", "pal", "leq"}));
}

Language language_by_name(const std::string& name, int m) {
  if (name == "am") return lang_am(m);
  if (name == "bm") return lang_bm(m);
  if (name == "cm") return lang_cm(m);
  if (name == "pal") return lang_pal();
  return lang_leq();
}

std::string fmt_eps(double eps) {
  std::ostringstream s;
  s << eps;
  return s.str();
}

std::vector<Selected> select_family(const FamilyRequest& req, const std::string& variant) {
  const auto all = build_family(req);
  std::vector<Selected> out;
  for (const auto& z : all) {
    const bool base = z.id.find("-base") != std::string::npos;
    if (variant == "base" && !base) continue;
    if (variant == "wrapped" && base) continue;
    std::string id = z.id;
    if (z.eps > 0.0) id += "[eps=" + fmt_eps(z.eps) + "]";
    out.push_back({id, z.spec, z.language, z.eps});
  }
  if (out.empty()) throw ArgumentError("family " + req.family + " has no " + variant + " machine");
  return out;
}

Selected select_one(const MachineArgs& a) {
  if (!a.spec_path.empty() && !a.family.empty()) throw ArgumentError("use either --spec or --family");
  if (!a.spec_path.empty()) {
    Selected s;
    s.spec = load_machine_file(a.spec_path);
    require_valid(s.spec);
    s.id = std::filesystem::path(a.spec_path).stem().string();
    if (!a.language.empty()) {
      s.language = language_by_name(a.language, a.m);
      s.eps = a.eps;
    }
    return s;
  }
  if (a.family.empty()) throw ArgumentError("need --spec or --family");
  return select_family({a.family, a.m, a.eps, a.seed}, a.variant).back();
}

void check_words(const MachineSpec& spec, const std::vector<std::string>& words) {
  for (const auto& w : words) TapeWord::make(spec, w);
}

ReportFormat parse_format(const std::string& f) { return f == "json" ? ReportFormat::Json : ReportFormat::Csv; }

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw ArgumentError("cannot write " + out_path);
  f << text;
}

std::vector<std::string> gather_words(const MachineSpec& spec, const std::vector<std::string>& words,
                                      int max_len) {
  std::vector<std::string> out = words;
  if (max_len >= 0) {
    const auto all = enumerate_words(spec.alphabet, max_len);
    out.insert(out.end(), all.begin(), all.end());
  }
  if (out.empty()) throw ArgumentError("no words given (use --word or --max-len)");
  check_words(spec, out);
  return out;
}

ReportRow row_for(const Selected& s, const std::string& w, const EngineCaps& caps) {
  std::optional<bool> member;
  if (s.language) member = s.language->member(w);
  return evaluate_row(s.id, s.spec, w, member, s.eps, caps);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and sampled evaluation of quantum and probabilistic automata with restart"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "csv";
  std::string out_path;
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", out_path, "write the report here instead of stdout");

  auto* zoo = app.add_subcommand("zoo", "zoo machines");
  zoo->require_subcommand(1);
  auto* zoo_build = zoo->add_subcommand("build", "write a zoo machine as a spec file");
  MachineArgs build_args;
  add_machine_options(zoo_build, build_args);
  auto* zoo_list = zoo->add_subcommand("list", "list families");

  auto* eval = app.add_subcommand("eval", "evaluate one machine on words");
  MachineArgs eval_args;
  std::vector<std::string> eval_words;
  int eval_max_len = -1;
  long step_cap = 0;
  add_machine_options(eval, eval_args);
  eval->add_option("--word", eval_words, "input word (repeatable; \"\" is the empty word)");
  eval->add_option("--max-len", eval_max_len, "also every word up to this length");
  eval->add_option("--step-cap", step_cap, "per-round step cap for two-way machines");

  auto* sweep = app.add_subcommand("sweep", "grid over m, eps and word length");
  std::string sweep_family;
  std::vector<int> sweep_m{2};
  std::vector<double> sweep_eps{0.1};
  int sweep_len = 6;
  std::string sweep_variant;
  sweep->add_option("--family", sweep_family, "zoo family")->required();
  sweep->add_option("--m", sweep_m, "values of m")->delimiter(',');
  sweep->add_option("--eps", sweep_eps, "values of eps")->delimiter(',');
  sweep->add_option("--max-len", sweep_len, "longest word")->check(CLI::Range(0, kMaxSweepLen));
  sweep->add_option("--variant", sweep_variant, "base or wrapped")->check(CLI::IsMember({"base", "wrapped"}));

  auto* verify = app.add_subcommand("verify", "run the invariant battery");
  std::string verify_family_name;
  int verify_m = 2;
  double verify_eps = 0.1;
  BatteryOptions bopt;
  verify->add_option("--family", verify_family_name, "only this family (default: all)");
  verify->add_option("--m", verify_m, "family parameter m");
  verify->add_option("--eps", verify_eps, "error bound");
  verify->add_option("--max-len", bopt.max_len, "exhaustive word length")->check(CLI::Range(0, kMaxSweepLen));

  auto* sample = app.add_subcommand("sample", "Monte Carlo trajectories");
  MachineArgs sample_args;
  std::vector<std::string> sample_words;
  long sample_n = 100000;
  std::uint64_t sample_seed = 1;
  SampleCaps scaps;
  add_machine_options(sample, sample_args);
  sample->add_option("--word", sample_words, "input word (repeatable)")->required();
  sample->add_option("--n", sample_n, "number of runs")->check(CLI::PositiveNumber);
  sample->add_option("--seed", sample_seed, "sampling seed");
  sample->add_option("--max-rounds", scaps.max_rounds, "rounds before a run is censored");
  sample->add_option("--step-cap", scaps.step_cap, "per-round step cap for two-way machines");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  const ReportFormat fmt = parse_format(format);

  try {
    if (zoo->parsed()) {
      if (zoo_list->parsed()) {
        std::string text;
        for (const auto& f : family_names()) text += f + "\n";
        emit(text, out_path, out);
        return 0;
      }
      const Selected s = select_one(build_args);
      emit(save_machine(s.spec), out_path, out);
      return 0;
    }
    if (eval->parsed()) {
      const Selected s = select_one(eval_args);
      EngineCaps caps;
      caps.step_cap = step_cap;
      std::vector<ReportRow> rows;
      for (const auto& w : gather_words(s.spec, eval_words, eval_max_len)) rows.push_back(row_for(s, w, caps));
      emit(export_report(rows, fmt), out_path, out);
      return 0;
    }
    if (sweep->parsed()) {
      std::vector<ReportRow> rows;
      for (int m : sweep_m) {
        for (double eps : sweep_eps) {
          for (const Selected& s : select_family({sweep_family, m, eps, 1}, sweep_variant)) {
            for (const auto& w : enumerate_words(s.spec.alphabet, sweep_len)) rows.push_back(row_for(s, w, {}));
          }
        }
      }
      std::stable_sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
        if (a.machine != b.machine) return a.machine < b.machine;
        if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
        return a.word < b.word;
      });
      rows.erase(std::unique(rows.begin(), rows.end(),
                             [](const ReportRow& a, const ReportRow& b) {
                               return a.machine == b.machine && a.word == b.word;
                             }),
                 rows.end());
      emit(export_report(rows, fmt), out_path, out);
      return 0;
    }
    if (verify->parsed()) {
      std::vector<FamilyRequest> reqs;
      if (verify_family_name.empty()) reqs = default_battery();
      else reqs.push_back({verify_family_name, verify_m, verify_eps, 1});
      std::ostringstream text;
      int failed = 0, total = 0;
      for (const auto& r : reqs) {
        for (const Check& c : verify_family(r, bopt)) {
          ++total;
          if (!c.passed) ++failed;
          text << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
        }
      }
      text << (total - failed) << "/" << total << " checks passed\n";
      emit(text.str(), out_path, out);
      return failed == 0 ? 0 : 1;
    }
    if (sample->parsed()) {
      const Selected s = select_one(sample_args);
      check_words(s.spec, sample_words);
      std::vector<SampleRow> rows;
      for (const auto& w : sample_words) {
        SampleRow r;
        r.machine = s.id;
        r.word = w;
        r.seed = sample_seed;
        r.stats = sample_runs(s.spec, w, sample_n, sample_seed, scaps);
        const DecisionReport d = decide(s.spec, w);
        r.exact_P_acc = d.acc + d.rej > 0.0 ? d.acc / (d.acc + d.rej) : 0.0;
        rows.push_back(std::move(r));
      }
      emit(export_samples(rows, fmt), out_path, out);
      return 0;
    }
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const SpecError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    err << "error: invalid machine: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace qfa
