// cantordyn: experiment driver for the Cantor-dynamics toolkit.
//
// One subcommand per module (system | towers | groupoid | compare | tsdg |
// suite); each takes a JSON config and emits deterministic CSV/JSON
// reports. Exit codes: 0 all checks pass, 1 check failures, 2 invalid
// config, 3 computation error.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"

#include "cantor/acceptance.hpp"
#include "cantor/compare.hpp"
#include "cantor/diagonal.hpp"
#include "cantor/matrix_model.hpp"
#include "cantor/serialize.hpp"
#include "cantor/tower_algebra.hpp"
#include "cantor/towers.hpp"
#include "cantor/tsdg.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace cantor;

namespace {

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> radius;
  std::optional<std::int64_t> window_length;
};

struct RunOutput {
  Report report;
  std::vector<std::pair<std::string, std::string>> files;  // suffix -> content
};

std::uint64_t config_seed(const json& cfg, const Overrides& ov) {
  if (ov.seed) return *ov.seed;
  return cfg.value("seed", 0ull);
}

Clopen parse_set(const SystemPtr& sys, const json& j) {
  if (j.is_string()) {
    const std::string w = j.get<std::string>();
    // cylinder shorthand: radius inferred from the word length
    for (int r = 0; r < 1 << 12; ++r) {
      const int len = sys->word_length(r);
      if (len == static_cast<int>(w.size()) - static_cast<int>(std::count(w.begin(), w.end(), '|')))
        return Clopen::cylinder(sys, w, r);
      if (len > static_cast<int>(w.size())) break;
    }
    throw std::invalid_argument("cylinder word '" + w + "' matches no radius");
  }
  return clopen_from_json(sys, j);
}

RunOutput run_system(const json& cfg, const Overrides& ov) {
  require_keys(cfg, {"command", "system", "seed", "radius", "cylinders", "window_length", "ocap"},
               "system config");
  RunOutput out;
  auto sys = system_from_json(cfg.at("system"));
  const int radius = ov.radius ? *ov.radius : cfg.value("radius", 2);
  out.report.title = "system " + sys->describe();

  out.report.add("minimal", "flag", sys->minimal() ? 1 : 0, true, "");
  out.report.add("free action", "flag", sys->free_action() ? 1 : 0, true, "");
  out.report.add("uniquely ergodic (exact mode)", "flag", sys->uniquely_ergodic() ? 1 : 0, true,
                 "");
  for (int r = 0; r <= radius; ++r)
    out.report.add("admissible words at radius " + std::to_string(r), "count",
                   static_cast<double>(sys->admissible_count(r)), true, "");
  auto mu = InvariantMeasure::exact(sys);
  if (cfg.contains("cylinders")) {
    std::optional<InvariantMeasure> emp;
    if (cfg.contains("window_length") || ov.window_length)
      emp = InvariantMeasure::empirical(
          sys, ov.window_length ? *ov.window_length : cfg.at("window_length").get<std::int64_t>(),
          config_seed(cfg, ov));
    for (const auto& cj : cfg.at("cylinders")) {
      const Clopen e = parse_set(sys, cj);
      const double exact = mu(e);
      out.report.add("mu(" + cj.get<std::string>() + ")", "exact", exact, true, "");
      if (emp) {
        const double est = (*emp)(e);
        out.report.add("birkhoff(" + cj.get<std::string>() + ")", "|.-exact| < 1e-2", est,
                       std::fabs(est - exact) < 1e-2, "");
      }
    }
  }
  if (cfg.contains("ocap")) {
    const auto& oj = cfg.at("ocap");
    require_keys(oj, {"set", "n", "samples"}, "ocap");
    const Clopen e = parse_set(sys, oj.at("set"));
    auto est = estimate_ocap(sys, e, oj.at("n").get<std::int64_t>(),
                             oj.value("samples", 1ll), config_seed(cfg, ov));
    out.report.add("ocap estimate at n=" + std::to_string(est.n),
                   est.exhaustive ? "exhaustive" : "sampled", est.value, true,
                   est.exhaustive ? "sup exact" : std::to_string(est.samples) + " samples");
  }
  out.files.push_back({"system.json", system_to_json(*sys).dump(2) + "\n"});
  return out;
}

TowerDecomposition towers_from_config(const SystemPtr& sys, const json& cfg) {
  if (cfg.contains("base")) return kakutani_rokhlin(sys, parse_set(sys, cfg.at("base")));
  const auto& inv = cfg.at("invariance");
  require_keys(inv, {"k_radius", "epsilon"}, "invariance");
  const int kr = inv.at("k_radius").get<int>();
  std::vector<GroupElement> kel;
  std::vector<std::int64_t> cur(sys->dim(), -kr);
  for (;;) {
    kel.push_back(GroupElement(cur));
    int a = sys->dim() - 1;
    while (a >= 0 && ++cur[a] > kr) cur[a--] = -kr;
    if (a < 0) break;
  }
  return urp_towers(sys, FiniteGroupSet(kel), inv.at("epsilon").get<double>());
}

RunOutput run_towers(const json& cfg, const Overrides& ov) {
  (void)ov;
  require_keys(cfg, {"command", "system", "seed", "base", "invariance"}, "towers config");
  RunOutput out;
  auto sys = system_from_json(cfg.at("system"));
  auto td = towers_from_config(sys, cfg);
  auto mu = InvariantMeasure::exact(sys);
  out.report.title = "towers over " + sys->describe();
  for (std::size_t i = 0; i < td.towers.size(); ++i) {
    const auto& t = td.towers[i];
    const double base_mu = mu(t.base);
    out.report.add("tower " + std::to_string(i) + " height", "shape " + t.shape.str(),
                   static_cast<double>(t.shape.size()), true, "");
    out.report.add("tower " + std::to_string(i) + " base measure", "", base_mu, true, "");
    out.report.add("tower " + std::to_string(i) + " product", "height x measure",
                   static_cast<double>(t.shape.size()) * base_mu, true, "");
  }
  const auto check = verify_tower_partition(td);
  out.report.add("partition exact", "disjoint + covering + empty boundary cells",
                 check.ok() ? 1 : 0, check.ok(), "");
  const double kac = kac_sum(td, mu);
  out.report.add("sum of height x base measure", "= 1", kac, std::fabs(kac - 1.0) < 1e-12, "");
  out.report.add("complement empty", "clopen pipeline", td.complement.is_empty() ? 1 : 0,
                 td.complement.is_empty(), "");
  out.files.push_back({"towers.json", towers_to_json(td).dump(2) + "\n"});
  return out;
}

RunOutput run_groupoid(const json& cfg, const Overrides& ov) {
  (void)ov;
  require_keys(cfg, {"command", "system", "seed", "base", "k_radius", "epsilon"},
               "groupoid config");
  RunOutput out;
  auto sys = system_from_json(cfg.at("system"));
  const Clopen y = parse_set(sys, cfg.at("base"));
  auto sf = shape_from_tiling(tiling_from_returns(first_return_analysis(sys, y)));
  auto g = build_groupoid(sf);
  auto mu = InvariantMeasure::exact(sys);
  out.report.title = "groupoid from base " + y.str();
  const auto axioms = verify_groupoid_axioms(g);
  out.report.add("groupoid axioms", "exhaustive", static_cast<double>(axioms.atoms_checked),
                 axioms.ok(), axioms.ok() ? "" : axioms.witnesses.front());
  const double eps = cfg.value("epsilon", 0.5);
  const int kr = cfg.value("k_radius", 1);
  const auto inv = orbit_invariance_report(g, FiniteGroupSet::interval(-kr, kr), eps);
  for (std::size_t i = 0; i < g.shape().cells.size(); ++i) {
    const auto& c = g.shape().cells[i];
    out.report.add("block " + std::to_string(i) + " shape " + c.shape.str(),
                   "|F| = " + std::to_string(c.shape.size()), mu(c.cell), true,
                   "cell measure");
  }
  out.report.add("worst orbit invariance defect", "< " + format_double(eps), inv.worst,
                 inv.pass, "K radius " + std::to_string(kr));
  out.files.push_back({"groupoid.json", shape_function_to_json(g.shape()).dump(2) + "\n"});
  return out;
}

RunOutput run_compare(const json& cfg, const Overrides& ov) {
  require_keys(cfg, {"command", "system", "seed", "A", "B", "lambda", "window", "groupoid_base"},
               "compare config");
  RunOutput out;
  auto sys = system_from_json(cfg.at("system"));
  const Clopen a = parse_set(sys, cfg.at("A"));
  const Clopen b = parse_set(sys, cfg.at("B"));
  const double lambda = cfg.value("lambda", 0.25);
  const std::int64_t window =
      ov.window_length ? *ov.window_length : cfg.value("window", 16ll);
  out.report.title = "compare A vs B";
  auto mu = InvariantMeasure::exact(sys);
  const auto gap = measure_gap_check(mu, a, b, lambda);
  out.report.add("mu(A) < lambda mu(B)", format_double(gap.lhs) + " vs " + format_double(gap.rhs),
                 gap.holds ? 1 : 0, true, "verdict row");
  auto res = dynamical_compare(sys, a, b, FiniteGroupSet::interval(-window, window));
  if (res.found()) {
    const auto v = validate_witness(*res.witness, a, b);
    out.report.add("witness found", "valid", static_cast<double>(res.witness->pieces.size()),
                   v.ok(), "pieces at radius " + std::to_string(res.refine_radius));
    out.files.push_back({"witness.json", witness_to_json(*res.witness).dump(2) + "\n"});
  } else {
    out.report.add("witness", "window-limited", 0,
                   !gap.holds,  // a gap with no witness at this window is a check failure
                   res.not_found_reason);
  }
  if (cfg.contains("groupoid_base")) {
    auto g = build_groupoid(shape_from_tiling(
        tiling_from_returns(first_return_analysis(sys, parse_set(sys, cfg.at("groupoid_base"))))));
    const auto qc = quarter_criterion(g, a, b, lambda);
    out.report.add("quarter criterion", "both inequalities", qc.min_slack_first, qc.pass(),
                   "second slack " + format_double(qc.min_slack_second));
    // per-cell rank table
    std::string csv = "block,atom,orbit_size,in_A,in_B\n";
    int rbig = g.data_radius();
    for (const auto& c : g.shape().cells)
      for (const auto& off : c.shape.elements())
        rbig = std::max(rbig, sys->needed_radius(std::max(a.radius(), b.radius()), off));
    for (const auto& w : sys->admissible(rbig)) {
      const int pi = g.piece_index(w, rbig);
      const auto s = g.shape_at(w, rbig);
      csv += std::to_string(pi) + "," + sys->display(w) + "," + std::to_string(s.size()) + "," +
             std::to_string(orbit_count_in(g, a, w, rbig)) + "," +
             std::to_string(orbit_count_in(g, b, w, rbig)) + "\n";
    }
    out.files.push_back({"ranks.csv", csv});
  }
  return out;
}

RunOutput run_tsdg(const json& cfg, const Overrides& ov) {
  require_keys(cfg, {"command", "system", "seed", "base", "support_radius", "ramp", "delta",
                     "coefficient_radius", "window_length"},
               "tsdg config");
  RunOutput out;
  auto sys = system_from_json(cfg.at("system"));
  auto td = kakutani_rokhlin(sys, parse_set(sys, cfg.at("base")));
  auto mu = InvariantMeasure::exact(sys);
  const int support_radius = cfg.value("support_radius", 1);
  const std::int64_t ramp = cfg.value("ramp", 4ll);
  const double delta = cfg.value("delta", 0.5);
  const int coeff_radius = cfg.value("coefficient_radius", 2);
  std::uint64_t state = config_seed(cfg, ov);

  CrossedElement f(sys);
  for (std::int64_t g = -support_radius; g <= support_radius; ++g) {
    std::vector<double> v;
    for (std::size_t i = 0; i < sys->admissible(coeff_radius).size(); ++i)
      v.push_back(static_cast<double>(static_cast<int>(splitmix64(state) % 17) - 8) / 8.0);
    f.set_coefficient(GroupElement::z(g), LcReal::from_values(sys, coeff_radius, std::move(v)));
  }
  const LcReal h = LcReal::indicator(Clopen::cylinder(sys, "0", 0));
  auto c = tsdg_construct(sys, td, {f}, h, Clopen::cylinder(sys, "0", 0), delta, ramp,
                          FiniteGroupSet::interval(-support_radius, support_radius));
  const std::int64_t wl = ov.window_length ? *ov.window_length : cfg.value("window_length", 4096ll);
  auto w = OrbitWindow::generate(sys, wl, config_seed(cfg, ov));
  const TsdgReport tr = tsdg_verify(c, mu, w);
  for (const auto& row : tr.rows)
    out.report.add(row.property, format_double(row.bound), row.measured, row.pass, row.note);
  out.report.title = "tower subalgebra construction";
  out.report.add("proof bookkeeping L > 8M|N|/delta", "recorded", c.large_l_ok ? 1 : 0, true,
                 c.large_l_ok ? "" : "short-ramp run; properties above are the honest record");
  return out;
}

RunOutput run_acceptance(const json& cfg, const Overrides& ov) {
  (void)ov;
  require_keys(cfg, {"command", "criterion", "seed"}, "acceptance config");
  RunOutput out;
  const int k = cfg.at("criterion").get<int>();
  out.report = acceptance_criterion(k);
  out.report.title = "acceptance criterion " + std::to_string(k) + ": " +
                     acceptance_criterion_title(k);
  return out;
}

RunOutput dispatch(const json& cfg, const Overrides& ov) {
  if (!cfg.is_object() || !cfg.contains("command"))
    throw std::invalid_argument("config: missing 'command'");
  const std::string cmd = cfg.at("command").get<std::string>();
  if (cmd == "system") return run_system(cfg, ov);
  if (cmd == "towers") return run_towers(cfg, ov);
  if (cmd == "groupoid") return run_groupoid(cfg, ov);
  if (cmd == "compare") return run_compare(cfg, ov);
  if (cmd == "tsdg") return run_tsdg(cfg, ov);
  if (cmd == "acceptance") return run_acceptance(cfg, ov);
  throw std::invalid_argument("config: unknown command '" + cmd + "'");
}

// exit code semantics
constexpr int kOk = 0, kCheckFail = 1, kBadConfig = 2, kComputeError = 3;

int run_one(const fs::path& config_path, const fs::path& out_dir, const Overrides& ov,
            const std::string& expect_command, Report* aggregate) {
  json cfg;
  {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "cannot read config " << config_path << "\n";
      return kBadConfig;
    }
    try {
      in >> cfg;
    } catch (const std::exception& e) {
      std::cerr << "config parse error: " << e.what() << "\n";
      return kBadConfig;
    }
  }
  RunOutput out;
  try {
    if (!expect_command.empty() && cfg.value("command", "") != expect_command)
      throw std::invalid_argument("config command '" + cfg.value("command", "") +
                                  "' does not match subcommand '" + expect_command + "'");
    out = dispatch(cfg, ov);
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return kBadConfig;
  } catch (const std::exception& e) {
    std::cerr << "computation error: " << e.what() << "\n";
    return kComputeError;
  }
  out.report.config_echo = cfg.dump();
  const std::string stem = config_path.stem().string();
  fs::create_directories(out_dir);
  std::string csv = "# " + std::string(kArtifactVersion) + "\n# " + out.report.title + "\n# config " +
                    out.report.config_echo + "\n" + out.report.to_csv();
  write_atomic((out_dir / (stem + ".report.csv")).string(), csv);
  for (const auto& [suffix, content] : out.files)
    write_atomic((out_dir / (stem + "." + suffix)).string(), content);
  if (aggregate) {
    for (const auto& row : out.report.rows) {
      CheckRow r = row;
      r.name = stem + ": " + r.name;
      aggregate->rows.push_back(std::move(r));
    }
  }
  for (const auto& row : out.report.rows)
    std::cout << (row.pass ? "  [pass] " : "  [FAIL] ") << row.name
              << (row.note.empty() ? "" : " (" + row.note + ")") << "\n";
  return out.report.all_pass() ? kOk : kCheckFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cantordyn: towers, tilings, groupoid models, and comparison checks for Cantor "
               "dynamical systems"};
  app.require_subcommand(1);

  std::string config_file, out_dir = ".", suite_dir;
  Overrides ov;
  std::uint64_t seed_flag = 0;
  int radius_flag = 0;
  std::int64_t window_flag = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_file, "JSON config file")->required();
    sub->add_option("--out", out_dir, "output directory (default .)");
    auto* s = sub->add_option("--seed", seed_flag, "override the config seed");
    auto* r = sub->add_option("--radius", radius_flag, "override the config radius");
    auto* w = sub->add_option("--window-length", window_flag, "override the window length");
    sub->callback([&, s, r, w] {
      if (s->count()) ov.seed = seed_flag;
      if (r->count()) ov.radius = radius_flag;
      if (w->count()) ov.window_length = window_flag;
    });
  };

  std::vector<std::pair<std::string, CLI::App*>> subs;
  for (const std::string name : {"system", "towers", "groupoid", "compare", "tsdg"}) {
    CLI::App* sub = app.add_subcommand(name, "run a " + name + " config");
    add_common(sub);
    subs.push_back({name, sub});
  }
  CLI::App* suite = app.add_subcommand("suite", "run every config in a directory");
  suite->add_option("--dir", suite_dir, "directory of JSON configs")->required();
  suite->add_option("--out", out_dir, "output directory (default .)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (suite->parsed()) {
      std::vector<fs::path> configs;
      for (const auto& entry : fs::directory_iterator(suite_dir))
        if (entry.path().extension() == ".json") configs.push_back(entry.path());
      std::sort(configs.begin(), configs.end());
      Report aggregate;
      aggregate.title = "suite " + suite_dir;
      int worst = kOk;
      for (const auto& cfg : configs) {
        std::cout << cfg.filename().string() << "\n";
        const int code = run_one(cfg, out_dir, ov, "", &aggregate);
        worst = std::max(worst, code == kOk ? kOk : kCheckFail);
      }
      aggregate.sort_rows();
      write_atomic((fs::path(out_dir) / "suite.report.csv").string(),
                   "# " + std::string(kArtifactVersion) + "\n" + aggregate.to_csv());
      std::cout << (worst == kOk ? "suite: all checks passed\n" : "suite: failures present\n");
      return worst;
    }
    for (const auto& [name, sub] : subs)
      if (sub->parsed()) return run_one(config_file, out_dir, ov, name, nullptr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kComputeError;
  }
  return kBadConfig;
}
