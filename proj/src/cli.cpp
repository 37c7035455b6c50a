#include "gcolex/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "gcolex/colex.hpp"
#include "gcolex/group.hpp"
#include "gcolex/mapping.hpp"
#include "gcolex/qdouble.hpp"
#include "gcolex/spectrum.hpp"
#include "gcolex/stabilizer.hpp"

namespace gcolex::cli {

namespace {

using nlohmann::json;

struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string group = "Z2";
  std::string lattice;
  std::string file;
  std::string mode = "exhaustive";
  std::uint64_t samples = 100000;
  std::uint64_t seed = 20140611;
  std::uint64_t budget_states = 200000000;
  unsigned workers = 1;
  std::string out;
  std::string size = "2x2";
  std::string method = "orbit";
  bool full_z2 = false;
  bool color_code = false;
};

FiniteGroup load_group(const std::string& spec) {
  if (std::ifstream in{spec}; in && spec.find('/') != std::string::npos) return read_group_table(in, spec);
  return parse_group(spec);
}

Colex2 load_colex(const RunConfig& c) {
  if (!c.lattice.empty() == !c.file.empty()) throw InvalidInput("give exactly one lattice source");
  if (!c.file.empty()) return load_lattice(c.file);
  if (c.lattice.find(':') == std::string::npos) return load_lattice(c.lattice);
  return build_from_spec(c.lattice);
}

class Runner {
 public:
  Runner(RunConfig cfg, std::ostream& out) : cfg_(std::move(cfg)), out_(out) {}

  // Writes the report to --out, or to stdout when print_report is set and no --out was given.
  void emit(json report, bool print_report) {
    report["seed"] = cfg_.seed;
    std::string text = report.dump(1) + "\n";
    if (!cfg_.out.empty()) {
      std::ofstream f(cfg_.out);
      if (!f) throw InvalidInput("cannot write " + cfg_.out);
      f << text;
    } else if (print_report) {
      out_ << text;
    }
  }

  int group_info() {
    FiniteGroup g = load_group(cfg_.group);
    Subgroup k = commutator_subgroup(g);
    json j{{"group", g.name()},
           {"order", g.order()},
           {"abelian", k.size() == 1},
           {"commutator_order", k.size()},
           {"abelianization_order", g.order() / k.size()},
           {"conjugacy_classes", conjugacy_classes(g).size()},
           {"double_anyons", count_double_anyons(g)},
           {"color_code_anyons", color_code_anyon_count(g)}};
    emit(j, true);
    return 0;
  }

  int lattice_build() {
    Colex2 c = load_colex(cfg_);
    if (cfg_.out.empty())
      out_ << to_json(c);
    else
      save_lattice(c, cfg_.out);
    return 0;
  }

  int lattice_validate() {
    json j;
    std::optional<Violation> first;
    try {
      ValidationReport r = validate(load_colex(cfg_));
      j["violations"] = json::array();
      for (const auto& v : r.failures) {
        j["violations"].push_back({{"kind", v.kind}, {"location", v.location}, {"detail", v.detail}});
        if (!first) first = v;
      }
    } catch (const std::invalid_argument& e) {
      if (cfg_.file.empty() && cfg_.lattice.find(':') != std::string::npos) throw;
      first = Violation{"format", cfg_.file.empty() ? cfg_.lattice : cfg_.file, e.what()};
      j["violations"] = json::array({{{"kind", first->kind}, {"location", first->location}, {"detail", first->detail}}});
    }
    j["ok"] = !first;
    emit(j, true);
    if (first) {
      out_ << "first violation: " << first->kind << " at " << first->location << ": " << first->detail << "\n";
      return 1;
    }
    return 0;
  }

  int lattice_dot() {
    Colex2 c = load_colex(cfg_);
    if (cfg_.out.empty())
      out_ << export_dot(c);
    else
      std::ofstream(cfg_.out) << export_dot(c);
    return 0;
  }

  CheckOptions check_options() const {
    CheckOptions o;
    if (cfg_.mode == "exhaustive")
      o.mode = CheckMode::Exhaustive;
    else if (cfg_.mode == "sampled")
      o.mode = CheckMode::Sampled;
    else
      throw InvalidInput("--mode must be exhaustive or sampled");
    o.samples = cfg_.samples;
    o.seed = cfg_.seed;
    o.budget_states = cfg_.budget_states;
    o.workers = cfg_.workers;
    return o;
  }

  int stab_check() {
    CheckOptions o = check_options();
    Colex2 c = load_colex(cfg_);
    FiniteGroup g = load_group(cfg_.group);
    CommutationReport r = check_commutation(c, g, o);
    emit(json::parse(r.to_json()), true);
    return r.ok() ? 0 : 1;
  }

  int stab_red_order() {
    FiniteGroup g = load_group(cfg_.group);
    RedOrderReport r = check_red_order_independence(g, 4, cfg_.samples, cfg_.seed);
    emit(json::parse(r.to_json()), true);
    return r.ok() ? 0 : 1;
  }

  SpectrumOptions spectrum_options() const {
    SpectrumOptions o;
    o.budget_states = cfg_.budget_states;
    o.workers = cfg_.workers;
    return o;
  }

  int color_degeneracy() {
    Colex2 c = load_colex(cfg_);
    FiniteGroup g = load_group(cfg_.group);
    GroundSpaceReport r;
    if (cfg_.method == "orbit")
      r = degeneracy(c, g, spectrum_options());
    else if (cfg_.method == "rank_oracle")
      r = degeneracy_rank_oracle(c, g);
    else
      throw InvalidInput("--method must be orbit or rank_oracle");
    out_ << r.summary() << "\n";
    emit(json::parse(r.to_json()), false);
    return 0;
  }

  int qd_degeneracy_cmd() {
    std::smatch m;
    static const std::regex re(R"((\d+)x(\d+))");
    if (!std::regex_match(cfg_.size, m, re)) throw InvalidInput("--size must look like L1xL2");
    int l1 = std::stoi(m[1]), l2 = std::stoi(m[2]);
    if (l1 < 1 || l2 < 1) throw InvalidInput("--size must be positive");
    GroundSpaceReport r = qd_degeneracy(l1, l2, load_group(cfg_.group), spectrum_options());
    out_ << r.summary() << "\n";
    emit(json::parse(r.to_json()), false);
    return 0;
  }

  int map_verify() {
    FiniteGroup g = load_group(cfg_.group);
    json j{{"group", g.name()}};
    bool ok = true;
    auto add = [&](const char* key, const MappingReport& r) {
      j[key] = json::parse(r.to_json());
      ok &= r.ok();
    };
    add("encoded_dims", verify_encoded_dims(g));
    add("encoded_algebra", verify_encoded_algebra(g));
    add("stabilizer_mapping", verify_stabilizer_mapping(g));
    if (cfg_.full_z2) {
      if (g.order() != 2) throw InvalidInput("--full-z2 needs --group Z2");
      add("full_lattice", verify_full_lattice_z2());
    }
    j["ok"] = ok;
    emit(j, true);
    return ok ? 0 : 1;
  }

  int anyons() {
    FiniteGroup g = load_group(cfg_.group);
    std::uint64_t n = cfg_.color_code ? color_code_anyon_count(g) : count_double_anyons(g);
    out_ << n << "\n";
    emit({{"group", g.name()}, {"color_code", cfg_.color_code}, {"anyons", n}}, false);
    return 0;
  }

 private:
  RunConfig cfg_;
  std::ostream& out_;
};

std::uint64_t default_budget() {
  if (const char* env = std::getenv("GCOLEX_BUDGET_STATES")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw InvalidInput("GCOLEX_BUDGET_STATES is not a number");
    }
  }
  return 200000000;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"G-color codes and quantum doubles over finite groups", "gcolex"};
  app.require_subcommand(1);
  std::function<int()> action;

  auto group_flag = [&](CLI::App* s) { s->add_option("--group", cfg.group, "Z2, Z3, Z4, S3, D4, Q8, S3xZ2 or a table file"); };
  auto lattice_flag = [&](CLI::App* s) {
    s->add_option("--lattice", cfg.lattice, "builder spec such as hex-torus:1, or a lattice file");
  };
  auto common = [&](CLI::App* s) {
    s->add_option("--mode", cfg.mode, "exhaustive or sampled");
    s->add_option("--samples", cfg.samples);
    s->add_option("--seed", cfg.seed);
    s->add_option("--budget-states", cfg.budget_states);
    s->add_option("--workers", cfg.workers)->check(CLI::PositiveNumber);
    s->add_option("--out", cfg.out, "report path");
  };
  std::optional<Runner> runner;
  auto bind = [&](CLI::App* s, int (Runner::*fn)()) {
    s->callback([&, fn] { action = [&, fn] { return ((*runner).*fn)(); }; });
  };

  auto* group = app.add_subcommand("group", "group data")->require_subcommand(1);
  auto* info = group->add_subcommand("info");
  group_flag(info);
  common(info);
  bind(info, &Runner::group_info);

  auto* lattice = app.add_subcommand("lattice", "build, validate and export lattices")->require_subcommand(1);
  for (auto [name, fn] : {std::pair{"build", &Runner::lattice_build}, std::pair{"validate", &Runner::lattice_validate},
                          std::pair{"export-dot", &Runner::lattice_dot}}) {
    auto* s = lattice->add_subcommand(name);
    lattice_flag(s);
    s->add_option("file", cfg.file, "lattice file");
    common(s);
    bind(s, fn);
  }

  auto* stab = app.add_subcommand("stab", "stabilizer checks")->require_subcommand(1);
  auto* check = stab->add_subcommand("check", "pairwise commutation of the stabilizer family");
  group_flag(check);
  lattice_flag(check);
  common(check);
  bind(check, &Runner::stab_check);
  auto* red = stab->add_subcommand("red-order", "order independence of red plaquette predicates");
  group_flag(red);
  common(red);
  red->get_option("--samples")->default_val(1000);
  bind(red, &Runner::stab_red_order);

  auto* deg = app.add_subcommand("degeneracy", "ground-space degeneracy of a color code");
  group_flag(deg);
  lattice_flag(deg);
  common(deg);
  deg->add_option("--method", cfg.method, "orbit or rank_oracle");
  bind(deg, &Runner::color_degeneracy);

  auto* qd = app.add_subcommand("qd", "quantum double models")->require_subcommand(1);
  auto* qdd = qd->add_subcommand("degeneracy");
  group_flag(qdd);
  common(qdd);
  qdd->add_option("--size", cfg.size, "L1xL2");
  bind(qdd, &Runner::qd_degeneracy_cmd);

  auto* map = app.add_subcommand("map", "4.8.8 encoding map")->require_subcommand(1);
  auto* verify = map->add_subcommand("verify");
  group_flag(verify);
  common(verify);
  verify->add_flag("--full-z2", cfg.full_z2, "also check the complete Z2 lattice");
  bind(verify, &Runner::map_verify);

  auto* any = app.add_subcommand("anyons", "anyon count of the quantum double");
  group_flag(any);
  common(any);
  any->add_flag("--color-code", cfg.color_code, "count for the color code instead");
  bind(any, &Runner::anyons);

  try {
    cfg.budget_states = default_budget();
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
    runner.emplace(cfg, out);
    return action();
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return 2;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace gcolex::cli
