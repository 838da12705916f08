#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "ballbeam/cheb2d.hpp"
#include "ballbeam/errors.hpp"

namespace ballbeam::cli {

using nlohmann::json;

json default_config() {
  json cfg;
  cfg["model"] = {{"a1", 1.0}, {"a2", 1.0}, {"delta", 0.0}, {"c_mult", 0.0}};
  cfg["operators"] = {{"length", std::numbers::pi}, {"modes", 8}};
  cfg["psi"] = {{"preset", "ball"}, {"alpha", 1.0}, {"beta", 1.0}, {"gamma", 1.0}};
  cfg["time"] = {{"t_bar", 1.0}, {"n", 100}, {"start_order", 2}};
  cfg["initial"] = {{"phi0", json::array({json::array({1, 1.0})})},
                    {"phi1", json::array()}};
  cfg["forcing"] = {{"kind", "zero"}};
  cfg["solver"] = {{"tol", 1e-12}, {"max_iter", 100}, {"q_max", 0.9}};
  cfg["study"] = {{"n_values", json::array({100, 200, 400, 800})},
                  {"epsilons", json::array({1e-2, 1e-3, 1e-4})},
                  {"seed", 12345},
                  {"trials", 100},
                  {"samples", 10000},
                  {"k_max", 40}};
  return cfg;
}

namespace {

void deep_merge(json& base, const json& user) {
  if (!user.is_object() || !base.is_object()) {
    base = user;
    return;
  }
  for (auto it = user.begin(); it != user.end(); ++it) {
    if (base.contains(it.key()))
      deep_merge(base[it.key()], it.value());
    else
      base[it.key()] = it.value();
  }
}

// Bare-key shorthands for the most commonly overridden fields.
std::string expand_alias(const std::string& key) {
  static const std::pair<const char*, const char*> kAliases[] = {
      {"n", "time.n"},           {"t_bar", "time.t_bar"},
      {"start_order", "time.start_order"}, {"modes", "operators.modes"},
      {"length", "operators.length"},      {"a1", "model.a1"},
      {"a2", "model.a2"},        {"delta", "model.delta"},
      {"c_mult", "model.c_mult"}, {"alpha", "psi.alpha"},
      {"beta", "psi.beta"},      {"gamma", "psi.gamma"},
      {"tol", "solver.tol"},     {"max_iter", "solver.max_iter"},
      {"q_max", "solver.q_max"}, {"seed", "study.seed"},
      {"trials", "study.trials"}, {"samples", "study.samples"},
      {"k_max", "study.k_max"}};
  for (const auto& [bare, dotted] : kAliases)
    if (key == bare) return dotted;
  return key;
}

void apply_override(json& cfg, const std::string& spec) {
  const std::size_t eq = spec.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("override must look like key=value: " + spec);
  const std::string path = expand_alias(spec.substr(0, eq));
  const std::string raw = spec.substr(eq + 1);

  json* node = &cfg;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = path.find('.', start);
    const std::string part = path.substr(start, dot - start);
    if (part.empty()) throw ConfigError("bad override key: " + path);
    if (dot == std::string::npos) {
      json value = json::parse(raw, nullptr, false);
      (*node)[part] = value.is_discarded() ? json(raw) : value;
      return;
    }
    node = &(*node)[part];
    start = dot + 1;
  }
}

}  // namespace

json load_config(const std::string& path,
                 const std::vector<std::string>& overrides) {
  json cfg = default_config();
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json user;
    try {
      user = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ConfigError("config parse error in " + path + ": " + e.what());
    }
    deep_merge(cfg, user);
  }
  for (const std::string& ov : overrides) apply_override(cfg, ov);
  return cfg;
}

std::string config_digest(const json& cfg) {
  const std::string dump = cfg.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

TimeProfile parse_profile(const json& p) {
  const std::string kind = p.at("kind");
  if (kind == "cosine") return TimeProfile::cosine(p.value("omega", 1.0));
  if (kind == "exponential")
    return TimeProfile::exponential(p.value("rate", -1.0));
  if (kind == "poly")
    return TimeProfile::poly(p.at("coeffs").get<std::vector<double>>());
  throw ConfigError("unknown profile kind: " + kind);
}

NonlinearityTriple parse_psi(const json& psi) {
  if (psi.contains("preset")) {
    const std::string preset = psi.at("preset");
    if (preset == "ball")
      return NonlinearityTriple::ball(psi.value("alpha", 1.0),
                                      psi.value("beta", 1.0),
                                      psi.value("gamma", 1.0));
    if (preset == "none") return NonlinearityTriple::none();
    throw ConfigError("unknown psi preset: " + preset);
  }
  auto poly = [&psi](const char* name) {
    if (!psi.contains(name)) return PsiFunction::polynomial({});
    return PsiFunction::polynomial(
        psi.at(name).at("poly").get<std::vector<double>>());
  };
  return {poly("psi1"), poly("psi2"), poly("psi3")};
}

StateVector parse_mode_list(const json& list, int modes, const char* what) {
  StateVector v(static_cast<std::size_t>(modes));
  for (const json& entry : list) {
    if (!entry.is_array() || entry.size() != 2)
      throw ConfigError(std::string(what) + " entries must be [mode, value] pairs");
    const int j = entry[0].get<int>();
    if (j < 1 || j > modes)
      throw ConfigError(std::string(what) + " mode index out of range: " +
                        std::to_string(j));
    v.c[static_cast<std::size_t>(j) - 1] += entry[1].get<double>();
  }
  return v;
}

IterationConfig parse_solver(const json& cfg) {
  const json& s = cfg.at("solver");
  return {s.value("tol", 1e-12), s.value("max_iter", 100), s.value("q_max", 0.9)};
}

}  // namespace

ManufacturedCase build_manufactured(const json& cfg) {
  const json& psi = cfg.at("psi");
  if (psi.value("preset", std::string()) != "ball")
    throw ConfigError("manufactured forcing requires the ball psi preset");
  const json& model = cfg.at("model");
  if (model.value("c_mult", 0.0) != 0.0)
    throw ConfigError("manufactured forcing requires c_mult = 0");
  const json& forcing = cfg.at("forcing");
  ManufacturedCase mc{
      .length = cfg.at("operators").at("length"),
      .modes = cfg.at("operators").at("modes"),
      .j = forcing.value("j", 1),
      .a1 = model.value("a1", 1.0),
      .a2 = model.value("a2", 1.0),
      .params = {psi.value("alpha", 1.0), psi.value("beta", 1.0),
                 psi.value("gamma", 1.0), model.value("delta", 0.0)},
      .profile = parse_profile(
          forcing.value("profile", json{{"kind", "cosine"}, {"omega", 1.0}})),
      .t_bar = cfg.at("time").at("t_bar")};
  return mc;
}

SchemeConfig build_scheme_config(const json& cfg) {
  const json& time = cfg.at("time");
  const json& forcing = cfg.at("forcing");
  const std::string kind = forcing.value("kind", "zero");

  if (kind == "manufactured") {
    // Exact-solution runs take their initial data from the profile; the
    // initial section is ignored.
    ManufacturedCase mc = build_manufactured(cfg);
    SchemeConfig sc = mc.scheme_config(time.at("n").get<int>(),
                                       time.value("start_order", 2));
    sc.solver = parse_solver(cfg);
    sc.validate();
    return sc;
  }

  const json& model = cfg.at("model");
  const json& ops_cfg = cfg.at("operators");
  const int modes = ops_cfg.at("modes");
  OperatorSet ops = OperatorSet::beam(ops_cfg.at("length"), modes,
                                      model.value("c_mult", 0.0),
                                      model.value("delta", 0.0));

  Forcing f;
  if (kind == "modes") {
    StateVector base = parse_mode_list(forcing.at("entries"), modes, "forcing");
    TimeProfile profile =
        forcing.contains("profile")
            ? parse_profile(forcing.at("profile"))
            : TimeProfile::poly({1.0});
    f.fn = [base, profile](double t) { return profile.g(t) * base; };
  } else if (kind != "zero") {
    throw ConfigError("unknown forcing kind: " + kind);
  }

  const json& initial = cfg.at("initial");
  SchemeConfig sc{.ops = std::move(ops),
                  .triple = parse_psi(cfg.at("psi")),
                  .a1 = model.value("a1", 1.0),
                  .a2 = model.value("a2", 1.0),
                  .t_bar = time.at("t_bar"),
                  .n = time.at("n"),
                  .forcing = std::move(f),
                  .phi0 = parse_mode_list(initial.at("phi0"), modes, "phi0"),
                  .phi1 = parse_mode_list(initial.at("phi1"), modes, "phi1"),
                  .solver = parse_solver(cfg),
                  .start_order = time.value("start_order", 2)};
  sc.validate();
  return sc;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << body;
}

json stamp(const json& cfg) {
  return {{"tool_version", kToolVersion},
          {"config_digest", config_digest(cfg)},
          {"seed", cfg.at("study").at("seed").get<std::uint64_t>()}};
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

int mode_solve(const json& cfg, const std::filesystem::path& out,
               bool write_trace) {
  SchemeConfig sc = build_scheme_config(cfg);
  RunResult res = ballbeam::run(sc);
  const RunTrace& tr = res.trace;
  const EnergyReport energy = check_energy_decay(tr, sc.conservative());

  if (write_trace) {
    write_file(out / "trace.csv", tr.to_csv());
    int iters_max = 0;
    long iters_total = 0;
    double contraction_max = 0.0;
    for (int k = 2; k <= tr.n; ++k) {
      const std::size_t i = static_cast<std::size_t>(k);
      iters_max = std::max(iters_max, tr.iterations[i]);
      iters_total += tr.iterations[i];
      if (std::isfinite(tr.contraction[i]))
        contraction_max = std::max(contraction_max, tr.contraction[i]);
    }
    json summary = stamp(cfg);
    summary["mode"] = "solve";
    summary["n"] = tr.n;
    summary["tau"] = tr.tau;
    const std::size_t last = static_cast<std::size_t>(tr.n);
    summary["final"] = {{"t", tr.t[last]},
                        {"norm_u", std::sqrt(tr.theta[last])},
                        {"norm_Asqrt_u", std::sqrt(tr.gamma[last])},
                        {"norm_Bsqrt_u", std::sqrt(tr.beta[last])},
                        {"norm_du_dt", std::sqrt(tr.alpha[last])},
                        {"lambda", tr.lambda[last]}};
    summary["iterations"] = {{"max", iters_max}, {"total", iters_total}};
    summary["contraction_max"] = contraction_max;
    summary["contraction_warnings"] = tr.contraction_warnings.size();
    summary["psi_range_warning"] = tr.psi_range_warning;
    summary["energy"] = {{"applicable", energy.applicable},
                         {"pass", energy.pass},
                         {"max_violation", energy.max_violation}};
    write_file(out / "summary.json", dump_json(summary));
  } else {
    std::ostringstream csv;
    csv.precision(17);
    csv << "step,t,lambda,increment\n";
    for (int k = 1; k <= tr.n; ++k) {
      const std::size_t i = static_cast<std::size_t>(k);
      const double inc = k >= 2 ? tr.lambda[i] - tr.lambda[i - 1]
                                : std::numeric_limits<double>::quiet_NaN();
      csv << k << ',' << tr.t[i] << ',' << tr.lambda[i] << ',' << inc << '\n';
    }
    write_file(out / "energy.csv", csv.str());
  }

  if (energy.applicable && !energy.pass) {
    std::cerr << "energy decay violated at step " << energy.worst_step
              << " (violation " << energy.max_violation << ")\n";
    return 1;
  }
  return 0;
}

int mode_converge(const json& cfg, const std::filesystem::path& out) {
  const std::string kind = cfg.at("forcing").value("kind", "zero");
  if (kind != "manufactured")
    throw ConfigError("converge mode requires forcing.kind = \"manufactured\"");
  ManufacturedCase mc = build_manufactured(cfg);
  const int start_order = cfg.at("time").value("start_order", 2);
  const std::vector<int> n_values =
      cfg.at("study").at("n_values").get<std::vector<int>>();
  ConvergenceReport rep = convergence_study(mc, n_values, start_order);

  std::ostringstream csv;
  csv.precision(17);
  csv << "n,error,order\n";
  for (std::size_t i = 0; i < rep.n.size(); ++i) {
    const double order =
        i == 0 ? std::numeric_limits<double>::quiet_NaN() : rep.order[i - 1];
    csv << rep.n[i] << ',' << rep.error[i] << ',' << order << '\n';
  }
  write_file(out / "orders.csv", csv.str());

  const double expected = start_order == 2 ? 2.0 : 1.0;
  bool pass = !rep.order.empty();
  for (double p : rep.order)
    pass = pass && p >= expected - 0.2 && p <= expected + 0.2;
  if (!pass) {
    std::cerr << "observed orders outside [" << expected - 0.2 << ", "
              << expected + 0.2 << "]\n";
    return 1;
  }
  return 0;
}

int mode_perturb(const json& cfg, const std::filesystem::path& out) {
  SchemeConfig sc = build_scheme_config(cfg);
  const json& study = cfg.at("study");
  PerturbationReport rep =
      perturbation_study(sc, study.at("epsilons").get<std::vector<double>>(),
                         study.at("seed").get<std::uint64_t>());
  json doc = stamp(cfg);
  doc["mode"] = "perturb";
  doc["epsilon"] = rep.epsilon;
  doc["response"] = rep.response;
  doc["data_size"] = rep.data_size;
  doc["ratio"] = rep.ratio;
  doc["spread"] = rep.spread;
  doc["pass"] = rep.pass;
  write_file(out / "stability.json", dump_json(doc));
  if (!rep.pass) {
    std::cerr << "perturbation ratio spread " << rep.spread << " exceeds 3\n";
    return 1;
  }
  return 0;
}

int mode_verify_cheb(const json& cfg, const std::filesystem::path& out) {
  const json& study = cfg.at("study");
  cheb::GridSpec grid{study.at("samples").get<int>(),
                      study.at("k_max").get<int>(),
                      study.at("seed").get<std::uint64_t>()};
  std::vector<cheb::BoundReport> reports = cheb::verify_bounds(grid);
  json doc = stamp(cfg);
  doc["mode"] = "verify-cheb";
  doc["grid"] = {{"samples", grid.samples}, {"k_max", grid.k_max}};
  bool pass = true;
  json rows = json::array();
  for (const auto& r : reports) {
    pass = pass && r.pass;
    rows.push_back({{"bound_id", std::string(r.bound_id)},
                    {"region", std::string(cheb::to_string(r.region))},
                    {"k_max", r.k_max},
                    {"samples", r.samples},
                    {"rejected", r.rejected},
                    {"violations", r.violations},
                    {"max_slack", r.max_slack},
                    {"pass", r.pass}});
  }
  doc["bounds"] = rows;
  doc["pass"] = pass;
  write_file(out / "bounds.json", dump_json(doc));
  if (!pass) {
    std::cerr << "polynomial bound violated; see bounds.json\n";
    return 1;
  }
  return 0;
}

int mode_verify_linear(const json& cfg, const std::filesystem::path& out) {
  const json& study = cfg.at("study");
  LinearSuiteReport rep = verify_linear_suite(
      study.at("trials").get<int>(), study.at("seed").get<std::uint64_t>());
  json doc = stamp(cfg);
  doc["mode"] = "verify-linear";
  doc["trials"] = rep.trials;
  doc["worst_representation_gap"] = rep.worst_representation_gap;
  json rows = json::array();
  for (const auto& r : rep.estimates)
    rows.push_back({{"estimate_id", std::string(r.estimate_id)},
                    {"s", r.s},
                    {"worst_ratio", r.worst_ratio},
                    {"worst_step", r.worst_step},
                    {"pass", r.pass}});
  doc["estimates"] = rows;
  doc["pass"] = rep.pass;
  write_file(out / "estimates.json", dump_json(doc));
  if (!rep.pass) {
    std::cerr << "a priori estimate or representation check failed; "
                 "see estimates.json\n";
    return 1;
  }
  return 0;
}

}  // namespace

int dispatch(const std::string& mode, const json& cfg,
             const std::string& out_dir) {
  const std::filesystem::path out(out_dir);
  std::filesystem::create_directories(out);
  // Full validation up front regardless of mode, so a broken scheme section
  // fails fast with the invariant's name even for the pure verification
  // modes.
  build_scheme_config(cfg);

  if (mode == "solve") return mode_solve(cfg, out, true);
  if (mode == "energy") return mode_solve(cfg, out, false);
  if (mode == "converge") return mode_converge(cfg, out);
  if (mode == "perturb") return mode_perturb(cfg, out);
  if (mode == "verify-cheb") return mode_verify_cheb(cfg, out);
  if (mode == "verify-linear") return mode_verify_linear(cfg, out);
  throw ConfigError("unknown mode: " + mode);
}

int run(int argc, const char* const* argv) {
  CLI::App app{"three-layer semi-discrete solver for the nonlinear beam "
               "equation"};
  std::string mode;
  std::string config_path;
  std::string out_dir = ".";
  std::vector<std::string> overrides;
  std::int64_t seed = -1;
  app.add_option("--mode", mode, "run mode")
      ->required()
      ->check(CLI::IsMember({"solve", "converge", "perturb", "verify-cheb",
                             "verify-linear", "energy"}));
  app.add_option("--config", config_path, "config file (json)");
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  app.add_option("--set", overrides, "override, key=value (repeatable)");
  app.add_option("--seed", seed, "override study.seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    json cfg = load_config(config_path, overrides);
    if (seed >= 0) cfg["study"]["seed"] = static_cast<std::uint64_t>(seed);
    return dispatch(mode, cfg, out_dir);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const DimensionError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "run failed: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace ballbeam::cli
