#include "asyncbool/cli.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "asyncbool/bifurcation.hpp"
#include "asyncbool/boolean_core.hpp"
#include "asyncbool/conjugacy.hpp"
#include "asyncbool/omega.hpp"
#include "asyncbool/runs.hpp"
#include "asyncbool/state_graph.hpp"
#include "asyncbool/text_format.hpp"

namespace asyncbool::cli {

namespace {

using Json = nlohmann::ordered_json;

enum class Format { kText, kJson };

// Raised for input files that cannot be read or parsed.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

template <typename Parser>
auto load(const std::string& path, Parser parse) {
  const auto text = read_file(path);
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  } catch (const UsageError& e) {
    throw InputError(path + ": " + e.what());
  }
}

State parse_state_arg(const std::string& text, unsigned width, const char* flag) {
  State s = state_from_bits(text);
  if (s.width() != width) {
    throw UsageError(std::string(flag) + " has width " + std::to_string(s.width()) +
                     ", expected " + std::to_string(width));
  }
  return s;
}

Json states_json(const std::vector<State>& states) {
  Json out = Json::array();
  for (const auto& s : states) out.push_back(to_bits(s));
  return out;
}

std::string states_text(const std::vector<State>& states) {
  std::string out;
  for (const auto& s : states) out += to_bits(s) + "\n";
  return out;
}

Json witness_json(const ConjugacyWitness& w) {
  return Json{{"h", render_bijection(w.h)}, {"h_prime", render_bijection(w.h_prime)}};
}

Json verdict_json(const EquivalenceVerdict& v) {
  Json out{{"equivalent", v.equivalent}};
  if (v.witness) {
    out["h"] = render_bijection(v.witness->h);
    out["h_prime"] = render_bijection(v.witness->h_prime);
  }
  if (v.counterexample) {
    out["counterexample"] = Json{{"nu", to_bits(v.counterexample->nu)},
                                 {"mu", to_bits(v.counterexample->mu)}};
  }
  return out;
}

Json signal_json(const Signal& x) {
  Json out{{"initial", to_bits(x.initial())}};
  Json bps = Json::array();
  for (const auto& [t, s] : x.breakpoints()) bps.push_back(Json{{"t", to_string(t)}, {"state", to_bits(s)}});
  out["breakpoints"] = bps;
  if (const auto* tail = std::get_if<PeriodicTail>(&x.tail())) {
    Json pattern = Json::array();
    for (const auto& [off, s] : tail->pattern) {
      pattern.push_back(Json{{"offset", to_string(off)}, {"state", to_bits(s)}});
    }
    out["tail"] = Json{{"kind", "periodic"},
                       {"start", to_string(tail->start)},
                       {"period", to_string(tail->period)},
                       {"pattern", pattern}};
  } else {
    out["tail"] = Json{{"kind", "constant"}};
  }
  if (auto fv = final_value(x)) out["final_value"] = to_bits(*fv);
  if (auto p = detect_period(x)) {
    out["period"] = Json{{"T0", to_string(p->period)}, {"t_prime", to_string(p->t_prime)}};
  }
  return out;
}

std::string signal_text(const Signal& x) {
  std::ostringstream out;
  out << "initial " << to_bits(x.initial()) << "\n";
  for (const auto& [t, s] : x.breakpoints()) out << "at " << to_string(t) << " " << to_bits(s) << "\n";
  if (const auto* tail = std::get_if<PeriodicTail>(&x.tail())) {
    out << "periodic tail from " << to_string(tail->start) << " every " << to_string(tail->period) << ":";
    for (const auto& [off, s] : tail->pattern) out << " +" << to_string(off) << " " << to_bits(s);
    out << "\n";
  }
  if (auto fv = final_value(x)) out << "final value " << to_bits(*fv) << "\n";
  if (auto p = detect_period(x)) {
    out << "period " << to_string(p->period) << " from " << to_string(p->t_prime) << "\n";
  }
  return out.str();
}

void emit(std::ostream& out, Format format, const Json& json, const std::string& text) {
  if (format == Format::kJson) {
    out << json.dump(2) << "\n";
  } else {
    out << text;
  }
}

struct Context {
  std::ostream& out;
  std::ostream& err;
  Format format = Format::kText;
  unsigned jobs = 1;
};

void add_format(CLI::App* sub, Format& format, Format fallback) {
  static const std::map<std::string, Format> kFormats{{"text", Format::kText}, {"json", Format::kJson}};
  format = fallback;
  sub->add_option("--format", format, "Output format")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Analysis of asynchronous Boolean systems generated by truth tables", "asyncbool"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Context ctx{out, err};
  std::function<int()> action;
  Format format = Format::kText;

  // fixed-points
  std::string table_path;
  auto* fixed = app.add_subcommand("fixed-points", "List the fixed points of a truth table");
  fixed->add_option("table", table_path, "Truth-table file")->required();
  Format fixed_format;
  add_format(fixed, fixed_format, Format::kText);
  fixed->callback([&] {
    format = fixed_format;
    action = [&] {
      const auto phi = load(table_path, parse_truth_table);
      const auto fps = fixed_points(phi);
      emit(out, format, Json{{"fixed_points", states_json(fps)}}, states_text(fps));
      return kExitHolds;
    };
  });

  // nullclins
  auto* nc = app.add_subcommand("nullclins", "List the nullclins NC_i");
  nc->add_option("table", table_path, "Truth-table file")->required();
  std::optional<unsigned> coord;
  nc->add_option("--coord", coord, "Only coordinate i (1-based)");
  Format nc_format;
  add_format(nc, nc_format, Format::kText);
  nc->callback([&] {
    format = nc_format;
    action = [&] {
      const auto phi = load(table_path, parse_truth_table);
      Json json = Json::object();
      std::string text;
      for (unsigned i = 1; i <= phi.width(); ++i) {
        if (coord && *coord != i) continue;
        const auto set = nullclin(phi, i);
        json[std::to_string(i)] = states_json(set);
        text += "NC_" + std::to_string(i) + ":";
        for (const auto& s : set) text += " " + to_bits(s);
        text += "\n";
      }
      if (coord && (*coord < 1 || *coord > phi.width())) throw UsageError("--coord out of range");
      emit(out, format, Json{{"nullclins", json}}, text);
      return kExitHolds;
    };
  });

  // portrait
  auto* portrait = app.add_subcommand("portrait", "Emit the state portrait as Graphviz DOT");
  portrait->add_option("table", table_path, "Truth-table file")->required();
  bool self_loops = false;
  portrait->add_flag("--self-loops", self_loops, "Draw arrows from fixed points to themselves");
  Format portrait_format;
  add_format(portrait, portrait_format, Format::kText);
  portrait->callback([&] {
    format = portrait_format;
    action = [&] {
      const auto phi = load(table_path, parse_truth_table);
      const auto dot = export_portrait(phi, PortraitOptions{self_loops});
      emit(out, format, Json{{"dot", dot}}, dot);
      return kExitHolds;
    };
  });

  // run
  auto* run_cmd = app.add_subcommand("run", "Simulate Phi^rho(t, mu)");
  run_cmd->add_option("table", table_path, "Truth-table file")->required();
  std::string mu_text, rho_path, at_text;
  bool trace = false;
  run_cmd->add_option("--mu", mu_text, "Initial state bits")->required();
  run_cmd->add_option("--rho-file", rho_path, "Progressive function file")->required();
  auto* at_opt = run_cmd->add_option("--at", at_text, "Evaluate at time t (p/q)");
  auto* trace_flag = run_cmd->add_flag("--trace", trace, "Print the whole signal");
  at_opt->excludes(trace_flag);
  Format run_format;
  add_format(run_cmd, run_format, Format::kText);
  run_cmd->callback([&] {
    format = run_format;
    action = [&] {
      const auto phi = load(table_path, parse_truth_table);
      const auto rho = load(rho_path, parse_rho);
      if (rho.width() != phi.width()) throw UsageError("rho width does not match the table");
      const State mu = parse_state_arg(mu_text, phi.width(), "--mu");
      const Signal x = continuous_run(phi, rho, mu);
      if (!at_text.empty()) {
        const Time t = parse_time(at_text);
        const auto v = to_bits(x(t));
        emit(out, format, Json{{"t", to_string(t)}, {"state", v}}, v + "\n");
      } else if (trace) {
        emit(out, format, signal_json(x), signal_text(x));
      } else {
        throw UsageError("run needs --at <time> or --trace");
      }
      return kExitHolds;
    };
  });

  // reach
  auto* reach = app.add_subcommand("reach", "Decide accessibility of --to from --from");
  reach->add_option("table", table_path, "Truth-table file")->required();
  std::string from_text, to_text;
  reach->add_option("--from", from_text, "Source state")->required();
  reach->add_option("--to", to_text, "Target state")->required();
  Format reach_format;
  add_format(reach, reach_format, Format::kText);
  reach->callback([&] {
    format = reach_format;
    action = [&] {
      const auto phi = load(table_path, parse_truth_table);
      const State a = parse_state_arg(from_text, phi.width(), "--from");
      const State b = parse_state_arg(to_text, phi.width(), "--to");
      const bool ok = accessible(phi, a, b);
      emit(out, format, Json{{"accessible", ok}}, ok ? "accessible\n" : "not accessible\n");
      return ok ? kExitHolds : kExitFails;
    };
  });

  // transitive
  auto* trans = app.add_subcommand("transitive", "Decide transitivity (exists: some run, forall: every run)");
  trans->add_option("table", table_path, "Truth-table file")->required();
  std::string mode = "exists";
  trans->add_option("--mode", mode, "exists | forall")->check(CLI::IsMember({"exists", "forall"}));
  Format trans_format;
  add_format(trans, trans_format, Format::kText);
  trans->callback([&] {
    format = trans_format;
    action = [&] {
      const auto phi = load(table_path, parse_truth_table);
      const bool ok = mode == "exists" ? is_transitive_exists(phi) : is_transitive_forall(phi);
      emit(out, format, Json{{"mode", mode}, {"transitive", ok}},
           ok ? "transitive\n" : "not transitive\n");
      return ok ? kExitHolds : kExitFails;
    };
  });

  // omega
  auto* omega = app.add_subcommand("omega", "Test Omega_n membership or enumerate Omega_n");
  std::string bijection_path;
  std::optional<unsigned> enumerate_width;
  auto* bij_opt = omega->add_option("bijection", bijection_path, "Bijection file");
  auto* enum_opt = omega->add_option("--enumerate", enumerate_width, "List Omega_n for n <= 3");
  bij_opt->excludes(enum_opt);
  Format omega_format;
  add_format(omega, omega_format, Format::kText);
  omega->callback([&] {
    format = omega_format;
    action = [&] {
      if (enumerate_width) {
        const auto members = enumerate_omega(*enumerate_width);
        Json json = Json::array();
        std::string text;
        for (const auto& h : members) {
          json.push_back(render_bijection(h));
          text += (text.empty() ? "" : "\n") + render_bijection(h);
        }
        emit(out, format, Json{{"size", members.size()}, {"members", json}}, text);
        return kExitHolds;
      }
      if (bijection_path.empty()) throw UsageError("omega needs a bijection file or --enumerate <n>");
      const auto h = load(bijection_path, parse_bijection);
      const auto verdict = is_in_omega(h);
      Json json{{"member", verdict.verdict}};
      std::string text = verdict.verdict ? "member\n" : "not a member\n";
      if (verdict.witness) {
        json["witness"] = states_json(*verdict.witness);
        text += "witness:";
        for (const auto& s : *verdict.witness) text += " " + to_bits(s);
        text += "\n";
      }
      emit(out, format, json, text);
      return verdict.verdict ? kExitHolds : kExitFails;
    };
  });

  // conjugate
  auto* conj = app.add_subcommand("conjugate", "Check or search a conjugacy Phi -(h,h')-> Psi");
  std::string phi_path, psi_path, witness_path;
  bool search = false;
  conj->add_option("phi", phi_path, "Truth-table file for Phi")->required();
  conj->add_option("psi", psi_path, "Truth-table file for Psi")->required();
  auto* witness_opt = conj->add_option("--witness", witness_path, "Witness file with [h] and [h_prime]");
  auto* search_flag = conj->add_flag("--search", search, "Exhaustive search (n <= 3)");
  witness_opt->excludes(search_flag);
  conj->add_option("--jobs", ctx.jobs, "Worker threads for the search")->check(CLI::PositiveNumber);
  Format conj_format;
  add_format(conj, conj_format, Format::kJson);
  conj->callback([&] {
    format = conj_format;
    action = [&] {
      const auto phi = load(phi_path, parse_truth_table);
      const auto psi = load(psi_path, parse_truth_table);
      if (phi.width() != psi.width()) throw UsageError("phi and psi widths differ");
      EquivalenceVerdict verdict;
      if (!witness_path.empty()) {
        const auto w = load(witness_path, parse_witness);
        verdict = check_conjugacy(phi, psi, w);
      } else if (search) {
        verdict = find_equivalence(phi, psi, SearchOptions{ctx.jobs});
      } else {
        throw UsageError("conjugate needs --witness <file> or --search");
      }
      std::string text = verdict.equivalent ? "conjugated\n" : "not conjugated\n";
      if (verdict.witness) text += render_witness(*verdict.witness);
      if (verdict.counterexample) {
        text += "counterexample: nu=" + to_bits(verdict.counterexample->nu) +
                " mu=" + to_bits(verdict.counterexample->mu) + "\n";
      }
      emit(out, format, verdict_json(verdict), text);
      return verdict.equivalent ? kExitHolds : kExitFails;
    };
  });

  // bifurcation
  auto* bif = app.add_subcommand("bifurcation", "Bifurcation diagrams of a parameterized family");
  std::string family_path, dot_dir;
  bif->add_option("family", family_path, "Family file")->required();
  bif->add_option("--dot-dir", dot_dir, "Write one DOT portrait per class representative here");
  bif->add_option("--jobs", ctx.jobs, "Worker threads for equivalence searches")->check(CLI::PositiveNumber);
  Format bif_format;
  add_format(bif, bif_format, Format::kJson);
  bif->callback([&] {
    format = bif_format;
    action = [&] {
      const auto f = load(family_path, parse_family);
      const SearchOptions options{ctx.jobs};
      const auto diagram = bifurcation_diagram(f, options);
      const auto fixed_diagram = fixed_point_diagram(f);
      const bool stable = diagram.classes.size() == 1;
      const unsigned m = f.param_width();
      auto lam = [m](std::uint32_t l) { return to_bits(State(m, l)); };

      Json classes = Json::array();
      for (const auto& c : diagram.classes) {
        Json members = Json::array();
        for (auto l : c) members.push_back(lam(l));
        classes.push_back(members);
      }
      Json reps = Json::array();
      for (auto r : diagram.representatives) reps.push_back(lam(r));
      Json within = Json::array();
      for (const auto& p : diagram.within_class) {
        Json entry = witness_json(p.witness);
        entry["lambda"] = lam(p.lambda);
        entry["lambda_prime"] = lam(p.lambda_prime);
        within.push_back(entry);
      }
      Json inequivalent = Json::array();
      for (const auto& [a, b] : diagram.inequivalent) inequivalent.push_back(Json::array({lam(a), lam(b)}));
      Json fixed = Json::object();
      for (std::uint32_t l = 0; l < fixed_diagram.fixed_points.size(); ++l) {
        fixed[lam(l)] = states_json(fixed_diagram.fixed_points[l]);
      }
      Json notes = Json::array();
      std::string note;
      if (fixed_diagram.uninformative) {
        note = stable ? "no member has fixed points; the fixed-point diagram is uninformative"
                      : "no member has fixed points; the fixed-point diagram is uninformative "
                        "although the family has a dynamic bifurcation";
        notes.push_back(note);
      }

      std::vector<std::string> dot_files;
      if (!dot_dir.empty()) {
        std::filesystem::create_directories(dot_dir);
        for (std::size_t k = 0; k < diagram.representatives.size(); ++k) {
          const auto path = (std::filesystem::path(dot_dir) /
                             ("lambda_" + lam(diagram.representatives[k]) + ".dot")).string();
          std::ofstream file(path, std::ios::binary);
          file << diagram.portraits[k];
          if (!file) throw InputError(path + ": cannot write file");
          dot_files.push_back(path);
        }
      }

      Json json{{"structurally_stable", stable},
                {"classes", classes},
                {"representatives", reps},
                {"within_class", within},
                {"inequivalent", inequivalent},
                {"fixed_point_diagram", fixed},
                {"notes", notes}};
      if (!dot_files.empty()) json["dot_files"] = dot_files;

      std::ostringstream text;
      text << (stable ? "structurally stable\n" : "dynamic bifurcation\n");
      for (std::size_t k = 0; k < diagram.classes.size(); ++k) {
        text << "class " << k << ":";
        for (auto l : diagram.classes[k]) text << " " << lam(l);
        text << "\n";
      }
      for (std::uint32_t l = 0; l < fixed_diagram.fixed_points.size(); ++l) {
        text << "fixed points at lambda=" << lam(l) << ":";
        for (const auto& s : fixed_diagram.fixed_points[l]) text << " " << to_bits(s);
        text << "\n";
      }
      if (!note.empty()) text << "note: " << note << "\n";
      emit(out, format, json, text.str());
      return kExitHolds;
    };
  });

  // family-equiv
  auto* feq = app.add_subcommand("family-equiv", "Search h'' making two families equivalent");
  std::string f_path, g_path;
  feq->add_option("f", f_path, "First family file")->required();
  feq->add_option("g", g_path, "Second family file")->required();
  feq->add_option("--jobs", ctx.jobs, "Worker threads for equivalence searches")->check(CLI::PositiveNumber);
  Format feq_format;
  add_format(feq, feq_format, Format::kJson);
  feq->callback([&] {
    format = feq_format;
    action = [&] {
      const auto f = load(f_path, parse_family);
      const auto g = load(g_path, parse_family);
      if (f.state_width() != g.state_width() || f.param_width() != g.param_width()) {
        throw UsageError("families have different widths");
      }
      const auto h2 = families_equivalent(f, g, SearchOptions{ctx.jobs});
      Json json{{"equivalent", h2.has_value()}};
      std::string text = h2 ? "equivalent\n" + render_bijection(*h2) : "not equivalent\n";
      if (h2) json["h_double_prime"] = render_bijection(*h2);
      emit(out, format, json, text);
      return h2 ? kExitHolds : kExitFails;
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitHolds;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitHolds;
  } catch (const CLI::ParseError& e) {
    err << "asyncbool: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    return action();
  } catch (const InputError& e) {
    err << "asyncbool: " << e.what() << "\n";
  } catch (const UsageError& e) {
    err << "asyncbool: " << e.what() << "\n";
  } catch (const CapabilityError& e) {
    err << "asyncbool: " << e.what() << "\n";
  }
  return kExitUsage;
}

}  // namespace asyncbool::cli
