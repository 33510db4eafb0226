#include "peersplit/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "peersplit/attacks.hpp"
#include "peersplit/experiments.hpp"
#include "peersplit/formation.hpp"
#include "peersplit/io.hpp"
#include "peersplit/version.hpp"

namespace peersplit {

namespace {

using nlohmann::json;

struct CommonOpts {
  std::size_t n = 100;
  double s = 1.0;
  double rho = 4.0;
  std::size_t r = 10;
  std::size_t k = 4;
  double k_const = 1e10;
  std::uint64_t seed = 42;
  std::uint64_t master_seed = 1;
  std::size_t runs = 1000;
  std::string out;
  std::string format = "csv";
  int jobs = 0;
  bool quiet = false;
  std::string config;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  cmd->add_option("--n", o.n, "Node count");
  cmd->add_option("--s", o.s, "Zipf exponent");
  cmd->add_option("--rho", o.rho, "Mana-ratio tolerance (> 1)");
  cmd->add_option("--r", o.r, "Rank window");
  cmd->add_option("--k", o.k, "Outgoing link quota (target degree 2k)");
  cmd->add_option("--k-const", o.k_const, "Zipf scale constant");
  cmd->add_option("--seed", o.seed, "Graph seed");
  cmd->add_option("--master-seed", o.master_seed, "Campaign master seed");
  cmd->add_option("--runs", o.runs, "Monte Carlo runs per parameter point");
  cmd->add_option("--out", o.out,
                  "Output file (gen/attack) or directory (campaigns); "
                  "default directory from PEERSPLIT_OUT_DIR");
  cmd->add_option("--format", o.format, "Table format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--jobs", o.jobs, "Worker threads (0 = all available)");
  cmd->add_flag("--quiet,-q", o.quiet, "Suppress console summaries");
  cmd->add_option("--config", o.config,
                  "Flat key=value config file (keys are long flag names without "
                  "dashes); flags take precedence");
}

std::string trim(const std::string& text) {
  const auto a = text.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = text.find_last_not_of(" \t\r");
  return text.substr(a, b - a + 1);
}

// Turns the file given by a --config flag into --key=value tokens injected
// right after the subcommand name, so explicit flags (parsed later, last one
// wins) keep precedence over file values, and file values beat presets.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    }
  }
  if (path.empty()) return args;
  if (args.size() < 2 || args[1].empty() || args[1][0] == '-') return args;

  std::string text;
  try {
    text = read_text_file(path);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot read config file '" + path + "'");
  }

  std::vector<std::string> tokens;
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string entry = trim(line);
    if (entry.empty() || entry[0] == '#' || entry[0] == ';') continue;
    const auto eq = entry.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected key=value");
    }
    const std::string key = trim(entry.substr(0, eq));
    std::string value = trim(entry.substr(eq + 1));
    if (key.empty()) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": empty key");
    }
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    tokens.push_back("--" + key + "=" + value);
  }
  args.insert(args.begin() + 2, tokens.begin(), tokens.end());
  return args;
}

bool user_set(const CLI::App* cmd, const std::string& flag) {
  return cmd->get_option(flag)->count() > 0;
}

std::string campaign_dir(const CommonOpts& c) {
  if (!c.out.empty()) return c.out;
  if (const char* env = std::getenv("PEERSPLIT_OUT_DIR"); env && *env) return env;
  return ".";
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_number(const std::string& text) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || text.empty()) {
    throw std::invalid_argument("not a number: '" + text + "'");
  }
  return v;
}

// Grid syntax: "lo:hi:step" (inclusive, step defaults to 1) or a comma list.
// Range values are snapped to 9 decimals so ids and CSV stay tidy.
std::vector<double> parse_double_grid(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    const auto parts = split_list([&] {
      std::string t = text;
      std::replace(t.begin(), t.end(), ':', ',');
      return t;
    }());
    if (parts.size() != 2 && parts.size() != 3) {
      throw std::invalid_argument("bad grid '" + text + "' (want lo:hi[:step])");
    }
    const double lo = parse_number(parts[0]);
    const double hi = parse_number(parts[1]);
    const double step = parts.size() == 3 ? parse_number(parts[2]) : 1.0;
    if (!(step > 0.0) || hi < lo) {
      throw std::invalid_argument("bad grid '" + text + "'");
    }
    for (std::size_t i = 0;; ++i) {
      double v = lo + static_cast<double>(i) * step;
      v = std::round(v * 1e9) / 1e9;
      if (v > hi + 1e-9) break;
      out.push_back(v);
    }
  } else {
    for (const auto& item : split_list(text)) out.push_back(parse_number(item));
  }
  if (out.empty()) throw std::invalid_argument("empty grid '" + text + "'");
  return out;
}

std::vector<std::size_t> parse_index_grid(const std::string& text) {
  std::vector<std::size_t> out;
  for (double v : parse_double_grid(text)) {
    if (v < 1 || v != std::floor(v)) {
      throw std::invalid_argument("grid '" + text + "' must hold positive integers");
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

std::vector<Strategy> parse_strategies(const std::string& text, bool allow_blind) {
  std::vector<Strategy> out;
  for (const auto& name : split_list(text)) {
    const auto s = strategy_from_name(name);
    if (!s) throw std::invalid_argument("unknown strategy '" + name + "'");
    if (*s == Strategy::blind && !allow_blind) {
      throw std::invalid_argument("use the blind subcommand for the blind strategy");
    }
    out.push_back(*s);
  }
  if (out.empty()) throw std::invalid_argument("no strategies given");
  return out;
}

std::string join_doubles(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_double(v[i]);
  }
  return out;
}

std::string join_indices(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

using KvList = std::vector<std::pair<std::string, std::string>>;

json make_manifest(const std::string& subcommand, const KvList& config, const KvList& files,
                   bool with_conventions) {
  json m;
  m["code_version"] = kVersion;
  m["subcommand"] = subcommand;
  m["config"] = json::object();
  for (const auto& [key, value] : config) m["config"][key] = value;
  m["files"] = json::object();
  for (const auto& [key, value] : files) m["files"][key] = value;
  if (with_conventions) {
    m["conventions"] = {
        {"p", "successful runs / total runs"},
        {"mean_eff", "mean efficiency over successful runs with finite efficiency; "
                     "nan when no run qualifies"},
        {"std_eff", "sample standard deviation over the same runs"},
        {"ci95", "1.96 * std_eff / sqrt(count of runs entering mean_eff)"},
        {"mean_damage,mean_cost", "means over all runs"},
        {"run_row_order", "per point: full-information rows run-major then strategy; "
                          "blind rows L-major then run"},
    };
  }
  return m;
}

KvList common_config(const CommonOpts& c, bool campaign) {
  KvList kv;
  kv.emplace_back("k", std::to_string(c.k));
  kv.emplace_back("k-const", format_double(c.k_const));
  if (campaign) {
    kv.emplace_back("master-seed", std::to_string(c.master_seed));
    kv.emplace_back("runs", std::to_string(c.runs));
  } else {
    kv.emplace_back("seed", std::to_string(c.seed));
  }
  kv.emplace_back("format", c.format);
  kv.emplace_back("jobs", std::to_string(c.jobs));
  return kv;
}

// Writes the per-run and aggregate tables plus manifest.json into dir.
void write_campaign(const std::string& dir, const std::string& subcommand,
                    const CommonOpts& c, const KvList& config, const ResultsTable& table) {
  const std::filesystem::path base(dir);
  KvList files;
  if (c.format == "csv") {
    write_text_file((base / "runs.csv").string(), per_run_csv(table.run_rows));
    write_text_file((base / "aggregate.csv").string(), aggregate_csv(table.aggregate_rows));
    files.emplace_back("runs", "runs.csv");
    files.emplace_back("aggregate", "aggregate.csv");
  } else {
    write_text_file((base / "runs.json").string(), per_run_json(table.run_rows));
    write_text_file((base / "aggregate.json").string(), aggregate_json(table.aggregate_rows));
    files.emplace_back("runs", "runs.json");
    files.emplace_back("aggregate", "aggregate.json");
  }
  const json manifest = make_manifest(subcommand, config, files, true);
  write_text_file((base / "manifest.json").string(), manifest.dump(2) + "\n");
}

void print_aggregates(const ResultsTable& table) {
  for (const auto& row : table.aggregate_rows) {
    std::cout << row.point_id << " " << strategy_name(row.strategy);
    if (row.l) std::cout << " L=" << *row.l;
    std::cout << " p=" << format_double(row.p) << " mean_eff=" << format_double(row.mean_eff)
              << " ci95=" << format_double(row.ci95)
              << " mean_cost=" << format_double(row.mean_cost) << "\n";
  }
}

std::string point_label(Model model, double s, double rho, std::size_t n, std::size_t r,
                        bool with_n, bool with_r) {
  std::string id = model_name(model);
  id += "_s" + format_double(s);
  if (model == Model::autopeering) id += "_rho" + format_double(rho);
  if (with_n) id += "_n" + std::to_string(n);
  if (with_r) id += "_r" + std::to_string(r);
  return id;
}

FormationParams params_from(const CommonOpts& c) {
  FormationParams p;
  p.n = c.n;
  p.s = c.s;
  p.k_const = c.k_const;
  p.rho = c.rho;
  p.r_window = c.r;
  p.k_out = c.k;
  p.seed = c.seed;
  return p;
}

// ---------------------------------------------------------------- gen

struct GenOpts {
  CommonOpts c;
  std::string model = "autopeering";
  double rewire_p = 1.0;
};

int cmd_gen(const GenOpts& o) {
  const Model model = *model_from_name(o.model);
  const FormationParams p = params_from(o.c);
  FormationStats stats;
  Graph g;
  switch (model) {
    case Model::autopeering: g = generate_autopeering(p, &stats); break;
    case Model::lattice: g = generate_lattice(p.n, p.k_out); break;
    case Model::ws: g = generate_ws(p.n, p.k_out, o.rewire_p, p.seed); break;
  }

  std::filesystem::path path;
  if (!o.c.out.empty()) {
    path = o.c.out;
  } else {
    path = std::filesystem::path(campaign_dir(CommonOpts{})) /
           ("graph_" + std::string(model_name(model)) + ".txt");
  }
  write_text_file(path.string(), to_edge_list(g));

  const ManaDistribution dist = build_mana(p.n, p.s, p.k_const);
  std::ostringstream nodes;
  nodes << "rank,mana\n";
  for (std::size_t i = 1; i <= p.n; ++i) {
    nodes << i << ',' << format_double(dist.value(i)) << '\n';
  }
  std::filesystem::path nodes_path = path;
  nodes_path.replace_extension(".nodes.csv");
  write_text_file(nodes_path.string(), nodes.str());

  if (!o.c.quiet) {
    std::size_t dmin = p.n, dmax = 0, dsum = 0;
    for (std::size_t i = 1; i <= p.n; ++i) {
      const std::size_t d = g.degree(i);
      dmin = std::min(dmin, d);
      dmax = std::max(dmax, d);
      dsum += d;
    }
    std::cout << "model=" << model_name(model) << " n=" << p.n << " edges=" << g.edge_count()
              << " degree_min=" << dmin << " degree_mean="
              << format_double(static_cast<double>(dsum) / static_cast<double>(p.n))
              << " degree_max=" << dmax << " components=" << components(g).size();
    if (model == Model::autopeering) std::cout << " shortfall_nodes=" << stats.shortfall_nodes;
    std::cout << "\nwrote " << path.string() << " and " << nodes_path.string() << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------- attack

struct AttackOpts {
  CommonOpts c;
  std::string strategy;
  std::string in;
  std::string model = "autopeering";
  double rewire_p = 1.0;
  std::size_t target = 0;
  std::size_t range_l = 0;
};

int cmd_attack(const AttackOpts& o, const CLI::App* cmd) {
  const Strategy strategy = *strategy_from_name(o.strategy);

  Graph g;
  std::size_t n = o.c.n;
  if (!o.in.empty()) {
    g = from_edge_list(read_text_file(o.in));
    n = g.label_bound();
  } else {
    const Model model = *model_from_name(o.model);
    const FormationParams p = params_from(o.c);
    switch (model) {
      case Model::autopeering: g = generate_autopeering(p); break;
      case Model::lattice: g = generate_lattice(p.n, p.k_out); break;
      case Model::ws: g = generate_ws(p.n, p.k_out, o.rewire_p, p.seed); break;
    }
  }
  const ManaDistribution dist = build_mana(n, o.c.s, o.c.k_const);

  AttackOutcome outcome;
  switch (strategy) {
    case Strategy::betweenness: outcome = betweenness_attack(g, dist, o.c.jobs); break;
    case Strategy::greedy: outcome = greedy_attack(g, dist); break;
    case Strategy::blind:
      if (!user_set(cmd, "--target") || !user_set(cmd, "--range-l")) {
        throw std::invalid_argument("blind attack needs --target and --range-l");
      }
      outcome = blind_attack(g, dist, o.target, o.range_l);
      break;
  }

  if (!o.c.quiet) {
    std::cout << "strategy=" << strategy_name(outcome.strategy)
              << " success=" << (outcome.success ? 1 : 0)
              << " damage=" << format_double(outcome.damage)
              << " cost=" << format_double(outcome.cost)
              << " efficiency=" << format_double(outcome.efficiency);
    if (outcome.target) std::cout << " target=" << *outcome.target;
    std::cout << " controlled=" << outcome.controlled.size()
              << " cut_links=" << outcome.cut.links.size()
              << " part_a=" << outcome.part_a.size() << " part_b=" << outcome.part_b.size()
              << "\n";
  }

  RunRecord rec;
  rec.point_id = "attack";
  rec.s = o.c.s;
  rec.rho = o.c.rho;
  rec.n = n;
  rec.r = o.c.r;
  rec.k = o.c.k;
  rec.run = 0;
  rec.seed = o.c.seed;
  rec.strategy = outcome.strategy;
  rec.target = outcome.target;
  if (strategy == Strategy::blind) rec.l = o.range_l;
  rec.success = outcome.success;
  rec.damage = outcome.damage;
  rec.cost = outcome.cost;
  rec.efficiency = outcome.efficiency;
  rec.frontier_size = outcome.controlled.size();

  std::filesystem::path path;
  if (!o.c.out.empty()) {
    path = o.c.out;
  } else {
    path = std::filesystem::path(campaign_dir(CommonOpts{})) / "attack.csv";
  }
  write_text_file(path.string(), per_run_csv({rec}));
  if (!o.c.quiet) std::cout << "wrote " << path.string() << "\n";
  return 0;
}

// ---------------------------------------------------------------- sweep

struct SweepOpts {
  CommonOpts c;
  std::string s_grid;
  std::string rho_grid;
  std::string n_grid;
  std::string r_grid;
  std::string strategies = "betweenness,greedy";
  std::string baseline = "none";
  double rewire_p = 1.0;
  std::string figure;
};

void apply_sweep_figure(const CLI::App* cmd, SweepOpts& o) {
  if (o.figure.empty()) return;
  auto preset = [&](const char* flag, std::string& field, const char* value) {
    if (!user_set(cmd, flag)) field = value;
  };
  auto preset_runs = [&](std::size_t value) {
    if (!user_set(cmd, "--runs")) o.c.runs = value;
  };
  preset("--s-grid", o.s_grid, "0.5:1.5:0.1");
  preset("--rho-grid", o.rho_grid, "4");
  preset_runs(1000);
  if (o.figure == "fig2") {
    preset("--strategies", o.strategies, "betweenness,greedy");
    preset("--baseline", o.baseline, "ws");
  } else if (o.figure == "figA1") {
    if (!user_set(cmd, "--s-grid")) o.s_grid = "1";
    preset("--strategies", o.strategies, "greedy");
  } else if (o.figure == "figA5") {
    preset("--n-grid", o.n_grid, "50,100,200");
    if (!user_set(cmd, "--rho-grid")) o.rho_grid = "1.5:4:0.5";
  } else if (o.figure == "figA6") {
    preset("--r-grid", o.r_grid, "5,10,20");
    if (!user_set(cmd, "--rho-grid")) o.rho_grid = "1.5:4:0.5";
  }
}

int cmd_sweep(const SweepOpts& o) {
  const auto s_grid = parse_double_grid(o.s_grid.empty() ? format_double(o.c.s) : o.s_grid);
  const auto rho_grid =
      parse_double_grid(o.rho_grid.empty() ? format_double(o.c.rho) : o.rho_grid);
  const auto n_grid = parse_index_grid(o.n_grid.empty() ? std::to_string(o.c.n) : o.n_grid);
  const auto r_grid = parse_index_grid(o.r_grid.empty() ? std::to_string(o.c.r) : o.r_grid);
  const auto strategies = parse_strategies(o.strategies, false);
  if (o.baseline != "none" && o.baseline != "lattice" && o.baseline != "ws") {
    throw std::invalid_argument("unknown baseline '" + o.baseline + "'");
  }

  SweepConfig cfg;
  cfg.runs = o.c.runs;
  cfg.master_seed = o.c.master_seed;
  cfg.jobs = o.c.jobs;
  cfg.strategies = strategies;
  const bool with_n = n_grid.size() > 1;
  const bool with_r = r_grid.size() > 1;
  for (std::size_t n : n_grid) {
    for (std::size_t r : r_grid) {
      for (double s : s_grid) {
        for (double rho : rho_grid) {
          PointSpec pt;
          pt.model = Model::autopeering;
          pt.params = params_from(o.c);
          pt.params.n = n;
          pt.params.r_window = r;
          pt.params.s = s;
          pt.params.rho = rho;
          pt.point_id = point_label(pt.model, s, rho, n, r, with_n, with_r);
          cfg.points.push_back(std::move(pt));
        }
      }
    }
  }
  if (o.baseline != "none") {
    const Model model = *model_from_name(o.baseline);
    for (std::size_t n : n_grid) {
      for (double s : s_grid) {
        PointSpec pt;
        pt.model = model;
        pt.params = params_from(o.c);
        pt.params.n = n;
        pt.params.s = s;
        pt.rewire_p = o.rewire_p;
        pt.point_id = point_label(model, s, o.c.rho, n, o.c.r, with_n, false);
        cfg.points.push_back(std::move(pt));
      }
    }
  }

  const ResultsTable table = run_ensemble(cfg);

  KvList config = common_config(o.c, true);
  config.emplace_back("s-grid", join_doubles(s_grid));
  config.emplace_back("rho-grid", join_doubles(rho_grid));
  config.emplace_back("n-grid", join_indices(n_grid));
  config.emplace_back("r-grid", join_indices(r_grid));
  config.emplace_back("strategies", o.strategies);
  config.emplace_back("baseline", o.baseline);
  config.emplace_back("rewire-p", format_double(o.rewire_p));
  write_campaign(campaign_dir(o.c), "sweep", o.c, config, table);
  if (!o.c.quiet) print_aggregates(table);
  return 0;
}

// ---------------------------------------------------------------- blind

struct BlindOpts {
  CommonOpts c;
  std::string targets;
  std::string l_grid = "1:12";
  std::string target_source = "betweenness";
  std::string figure;
};

int cmd_blind(const BlindOpts& o, const CLI::App* cmd) {
  BlindOpts opts = o;
  if (opts.figure == "fig3") {
    if (!user_set(cmd, "--target")) opts.targets = "12,14";
    if (!user_set(cmd, "--l-grid")) opts.l_grid = "1:12";
    if (!user_set(cmd, "--runs")) opts.c.runs = 1000;
  }
  const auto l_grid = parse_index_grid(opts.l_grid);
  const auto source = strategy_from_name(opts.target_source);
  if (!source || *source == Strategy::blind) {
    throw std::invalid_argument("target source must be betweenness or greedy");
  }

  PointSpec pt;
  pt.model = Model::autopeering;
  pt.params = params_from(opts.c);
  const std::string base_id =
      point_label(pt.model, pt.params.s, pt.params.rho, pt.params.n, pt.params.r_window,
                  false, false);

  std::vector<std::size_t> targets;
  if (!opts.targets.empty()) {
    targets = parse_index_grid(opts.targets);
  } else {
    pt.point_id = base_id;
    const auto hist =
        frontier_frequencies(pt, *source, opts.c.runs, opts.c.master_seed, opts.c.jobs);
    targets = {hist.mode};
    if (!opts.c.quiet) {
      std::cout << "target from " << strategy_name(*source) << " frequency mode: "
                << hist.mode << "\n";
    }
  }

  ResultsTable table;
  for (std::size_t target : targets) {
    pt.point_id = base_id + "_t" + std::to_string(target);
    ResultsTable part =
        blind_sweep(pt, target, l_grid, opts.c.runs, opts.c.master_seed, opts.c.jobs);
    table.run_rows.insert(table.run_rows.end(),
                          std::make_move_iterator(part.run_rows.begin()),
                          std::make_move_iterator(part.run_rows.end()));
    table.aggregate_rows.insert(table.aggregate_rows.end(),
                                std::make_move_iterator(part.aggregate_rows.begin()),
                                std::make_move_iterator(part.aggregate_rows.end()));
  }

  KvList config = common_config(opts.c, true);
  config.emplace_back("target", join_indices(targets));
  config.emplace_back("l-grid", join_indices(l_grid));
  config.emplace_back("target-source", opts.target_source);
  write_campaign(campaign_dir(opts.c), "blind", opts.c, config, table);
  if (!opts.c.quiet) print_aggregates(table);
  return 0;
}

// ---------------------------------------------------------------- freq

struct FreqOpts {
  CommonOpts c;
  std::string strategies = "betweenness";
  std::string figure;
};

int cmd_freq(const FreqOpts& o, const CLI::App* cmd) {
  FreqOpts opts = o;
  if (opts.figure == "figA2") {
    if (!user_set(cmd, "--strategy")) opts.strategies = "betweenness,greedy";
    if (!user_set(cmd, "--runs")) opts.c.runs = 1000;
  }
  const auto strategies = parse_strategies(opts.strategies, false);

  PointSpec pt;
  pt.model = Model::autopeering;
  pt.params = params_from(opts.c);
  pt.point_id = point_label(pt.model, pt.params.s, pt.params.rho, pt.params.n,
                            pt.params.r_window, false, false);

  const std::filesystem::path dir(campaign_dir(opts.c));
  KvList files;
  for (Strategy strategy : strategies) {
    const auto hist =
        frontier_frequencies(pt, strategy, opts.c.runs, opts.c.master_seed, opts.c.jobs);
    const std::string stem = std::string("histogram_") + strategy_name(strategy);
    const std::string name =
        stem + (opts.c.format == "csv" ? ".csv" : ".json");
    write_text_file((dir / name).string(), opts.c.format == "csv" ? histogram_csv(hist)
                                                                  : histogram_json(hist));
    files.emplace_back(stem, name);
    if (!opts.c.quiet) {
      std::cout << strategy_name(strategy) << " mode=" << hist.mode
                << " count=" << hist.counts[hist.mode - 1] << "\n";
    }
  }

  KvList config = common_config(opts.c, true);
  config.emplace_back("n", std::to_string(opts.c.n));
  config.emplace_back("s", format_double(opts.c.s));
  config.emplace_back("rho", format_double(opts.c.rho));
  config.emplace_back("r", std::to_string(opts.c.r));
  config.emplace_back("strategy", opts.strategies);
  const json manifest = make_manifest("freq", config, files, true);
  write_text_file((dir / "manifest.json").string(), manifest.dump(2) + "\n");
  return 0;
}

// ---------------------------------------------------------------- minl

struct MinlOpts {
  CommonOpts c;
  std::size_t target = 0;
  std::string target_source = "betweenness";
  std::size_t l_max = 60;
  std::string s_grid;
  std::string rho_grid;
  std::string figure;
};

int cmd_minl(const MinlOpts& o, const CLI::App* cmd) {
  MinlOpts opts = o;
  if (opts.figure == "figA4") {
    if (!user_set(cmd, "--s-grid")) opts.s_grid = "0.5:1.5:0.1";
    if (!user_set(cmd, "--rho-grid")) opts.rho_grid = "1.5:4:0.5";
    if (!user_set(cmd, "--runs")) opts.c.runs = 1000;
  }
  const auto source = strategy_from_name(opts.target_source);
  if (!source || *source == Strategy::blind) {
    throw std::invalid_argument("target source must be betweenness or greedy");
  }

  HeatmapConfig cfg;
  cfg.base = params_from(opts.c);
  cfg.s_grid = parse_double_grid(opts.s_grid.empty() ? format_double(opts.c.s) : opts.s_grid);
  cfg.rho_grid =
      parse_double_grid(opts.rho_grid.empty() ? format_double(opts.c.rho) : opts.rho_grid);
  cfg.runs = opts.c.runs;
  cfg.strategy = *source;
  cfg.l_max = opts.l_max;
  cfg.master_seed = opts.c.master_seed;
  cfg.jobs = opts.c.jobs;

  Heatmap hm;
  if (user_set(cmd, "--target")) {
    if (cfg.s_grid.size() != 1 || cfg.rho_grid.size() != 1) {
      throw std::invalid_argument("--target requires a single (s, rho) cell");
    }
    PointSpec pt;
    pt.model = Model::autopeering;
    pt.params = cfg.base;
    pt.params.s = cfg.s_grid[0];
    pt.params.rho = cfg.rho_grid[0];
    pt.point_id = "minl";
    const auto min_l = min_l_for_full_success(pt, opts.target, cfg.runs, cfg.l_max,
                                              cfg.master_seed);
    hm.metric = HeatmapMetric::min_l;
    hm.strategy = cfg.strategy;
    hm.s_grid = cfg.s_grid;
    hm.rho_grid = cfg.rho_grid;
    hm.cells = {{min_l ? static_cast<double>(*min_l)
                       : std::numeric_limits<double>::quiet_NaN()}};
    hm.targets = {{opts.target}};
  } else {
    hm = heatmap(cfg, HeatmapMetric::min_l);
  }

  const std::filesystem::path dir(campaign_dir(opts.c));
  const std::string name = opts.c.format == "csv" ? "minl.csv" : "minl.json";
  write_text_file((dir / name).string(),
                  opts.c.format == "csv" ? heatmap_csv(hm) : heatmap_json(hm));

  KvList config = common_config(opts.c, true);
  config.emplace_back("n", std::to_string(opts.c.n));
  config.emplace_back("r", std::to_string(opts.c.r));
  config.emplace_back("s-grid", join_doubles(cfg.s_grid));
  config.emplace_back("rho-grid", join_doubles(cfg.rho_grid));
  config.emplace_back("target-source", opts.target_source);
  config.emplace_back("l-max", std::to_string(opts.l_max));
  if (user_set(cmd, "--target")) config.emplace_back("target", std::to_string(opts.target));
  const json manifest = make_manifest("minl", config, {{"minl", name}}, true);
  write_text_file((dir / "manifest.json").string(), manifest.dump(2) + "\n");

  if (!opts.c.quiet) {
    for (std::size_t si = 0; si < hm.s_grid.size(); ++si) {
      for (std::size_t ri = 0; ri < hm.rho_grid.size(); ++ri) {
        std::cout << "s=" << format_double(hm.s_grid[si])
                  << " rho=" << format_double(hm.rho_grid[ri])
                  << " min_l=" << format_double(hm.cells[si][ri]);
        if (!hm.targets.empty() && hm.targets[si][ri] != 0) {
          std::cout << " target=" << hm.targets[si][ri];
        }
        std::cout << "\n";
      }
    }
  }
  return 0;
}

// ---------------------------------------------------------------- heatmap

struct HeatOpts {
  CommonOpts c;
  std::string metric = "efficiency";
  std::string strategy = "betweenness";
  std::string s_grid;
  std::string rho_grid;
  std::size_t l_max = 60;
  std::string figure;
};

int cmd_heatmap(const HeatOpts& o, const CLI::App* cmd) {
  HeatOpts opts = o;
  if (!opts.figure.empty()) {
    if (!user_set(cmd, "--s-grid")) opts.s_grid = "0.5:1.5:0.1";
    if (!user_set(cmd, "--rho-grid")) opts.rho_grid = "1.5:4:0.5";
    if (!user_set(cmd, "--runs")) opts.c.runs = 1000;
    if (!user_set(cmd, "--metric")) {
      if (opts.figure == "fig4") opts.metric = "efficiency";
      if (opts.figure == "fig5") opts.metric = "cost_at_full_success";
      if (opts.figure == "figA3") opts.metric = "efficiency_ratio";
    }
  }
  std::string metric_name = opts.metric;
  if (metric_name == "cost") metric_name = "cost_at_full_success";
  if (metric_name == "ratio") metric_name = "efficiency_ratio";
  if (metric_name == "minl") metric_name = "min_l";
  const auto metric = heatmap_metric_from_name(metric_name);
  if (!metric) throw std::invalid_argument("unknown metric '" + opts.metric + "'");
  const auto strategy = strategy_from_name(opts.strategy);
  if (!strategy || *strategy == Strategy::blind) {
    throw std::invalid_argument("heatmap strategy must be betweenness or greedy");
  }

  HeatmapConfig cfg;
  cfg.base = params_from(opts.c);
  cfg.s_grid = parse_double_grid(opts.s_grid.empty() ? format_double(opts.c.s) : opts.s_grid);
  cfg.rho_grid =
      parse_double_grid(opts.rho_grid.empty() ? format_double(opts.c.rho) : opts.rho_grid);
  cfg.runs = opts.c.runs;
  cfg.strategy = *strategy;
  cfg.l_max = opts.l_max;
  cfg.master_seed = opts.c.master_seed;
  cfg.jobs = opts.c.jobs;

  const Heatmap hm = heatmap(cfg, *metric);

  const std::filesystem::path dir(campaign_dir(opts.c));
  const std::string name = opts.c.format == "csv" ? "heatmap.csv" : "heatmap.json";
  write_text_file((dir / name).string(),
                  opts.c.format == "csv" ? heatmap_csv(hm) : heatmap_json(hm));

  KvList config = common_config(opts.c, true);
  config.emplace_back("n", std::to_string(opts.c.n));
  config.emplace_back("r", std::to_string(opts.c.r));
  config.emplace_back("metric", metric_name);
  config.emplace_back("strategy", opts.strategy);
  config.emplace_back("s-grid", join_doubles(cfg.s_grid));
  config.emplace_back("rho-grid", join_doubles(cfg.rho_grid));
  config.emplace_back("l-max", std::to_string(opts.l_max));
  const json manifest = make_manifest("heatmap", config, {{"heatmap", name}}, true);
  write_text_file((dir / "manifest.json").string(), manifest.dump(2) + "\n");

  if (!opts.c.quiet) {
    for (std::size_t si = 0; si < hm.s_grid.size(); ++si) {
      for (std::size_t ri = 0; ri < hm.rho_grid.size(); ++ri) {
        std::cout << "s=" << format_double(hm.s_grid[si])
                  << " rho=" << format_double(hm.rho_grid[ri]) << " " << metric_name << "="
                  << format_double(hm.cells[si][ri]) << "\n";
      }
    }
  }
  return 0;
}

}  // namespace

int run_cli(std::vector<std::string> args) {
  CLI::App app{"Auto-peering network generator and partitioning-attack toolkit"};
  app.require_subcommand(1);

  GenOpts gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate a single network");
  add_common(gen_cmd, gen.c);
  gen_cmd->add_option("--model", gen.model, "Formation model")
      ->check(CLI::IsMember({"autopeering", "lattice", "ws"}));
  gen_cmd->add_option("--rewire-p", gen.rewire_p, "WS rewiring probability");

  AttackOpts attack;
  CLI::App* attack_cmd = app.add_subcommand("attack", "Attack one network");
  add_common(attack_cmd, attack.c);
  attack_cmd->add_option("--strategy", attack.strategy, "Attack strategy")
      ->required()
      ->check(CLI::IsMember({"betweenness", "greedy", "blind"}));
  attack_cmd->add_option("--in", attack.in, "Edge-list file (otherwise generate)");
  attack_cmd->add_option("--model", attack.model, "Formation model when generating")
      ->check(CLI::IsMember({"autopeering", "lattice", "ws"}));
  attack_cmd->add_option("--rewire-p", attack.rewire_p, "WS rewiring probability");
  attack_cmd->add_option("--target", attack.target, "Blind target rank");
  attack_cmd->add_option("--range-l", attack.range_l, "Blind rank radius L");

  SweepOpts sweep;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "Full-information attack ensemble over parameter grids");
  add_common(sweep_cmd, sweep.c);
  sweep_cmd->add_option("--s-grid", sweep.s_grid, "Zipf exponents (lo:hi[:step] or list)");
  sweep_cmd->add_option("--rho-grid", sweep.rho_grid, "Tolerances (lo:hi[:step] or list)");
  sweep_cmd->add_option("--n-grid", sweep.n_grid, "Node counts (list)");
  sweep_cmd->add_option("--r-grid", sweep.r_grid, "Rank windows (list)");
  sweep_cmd->add_option("--strategies", sweep.strategies, "Comma list: betweenness,greedy");
  sweep_cmd->add_option("--baseline", sweep.baseline, "Extra baseline model per s")
      ->check(CLI::IsMember({"none", "lattice", "ws"}));
  sweep_cmd->add_option("--rewire-p", sweep.rewire_p, "WS baseline rewiring probability");
  sweep_cmd->add_option("--figure", sweep.figure, "Preset parameter grids")
      ->check(CLI::IsMember({"fig2", "figA1", "figA5", "figA6"}));

  BlindOpts blind;
  CLI::App* blind_cmd =
      app.add_subcommand("blind", "Blind attack ensembles over a range of L");
  add_common(blind_cmd, blind.c);
  blind_cmd->add_option("--target", blind.targets,
                        "Target rank(s), comma list; default: frequency mode");
  blind_cmd->add_option("--l-grid", blind.l_grid, "L values (lo:hi[:step] or list)");
  blind_cmd->add_option("--target-source", blind.target_source,
                        "Strategy whose frontier mode picks the target")
      ->check(CLI::IsMember({"betweenness", "greedy"}));
  blind_cmd->add_option("--figure", blind.figure, "Preset parameter grids")
      ->check(CLI::IsMember({"fig3"}));

  FreqOpts freq;
  CLI::App* freq_cmd =
      app.add_subcommand("freq", "Frontier frequency histogram per rank");
  add_common(freq_cmd, freq.c);
  freq_cmd->add_option("--strategy", freq.strategies,
                       "Strategy or comma list: betweenness,greedy");
  freq_cmd->add_option("--figure", freq.figure, "Preset parameter grids")
      ->check(CLI::IsMember({"figA2"}));

  MinlOpts minl;
  CLI::App* minl_cmd =
      app.add_subcommand("minl", "Smallest L with full blind-attack success");
  add_common(minl_cmd, minl.c);
  minl_cmd->add_option("--target", minl.target, "Fixed blind target rank");
  minl_cmd->add_option("--target-source", minl.target_source,
                       "Strategy whose frontier mode picks per-cell targets")
      ->check(CLI::IsMember({"betweenness", "greedy"}));
  minl_cmd->add_option("--l-max", minl.l_max, "Search bound for L");
  minl_cmd->add_option("--s-grid", minl.s_grid, "Zipf exponents (lo:hi[:step] or list)");
  minl_cmd->add_option("--rho-grid", minl.rho_grid, "Tolerances (lo:hi[:step] or list)");
  minl_cmd->add_option("--figure", minl.figure, "Preset parameter grids")
      ->check(CLI::IsMember({"figA4"}));

  HeatOpts heat;
  CLI::App* heat_cmd = app.add_subcommand("heatmap", "Per-cell aggregate over s x rho");
  add_common(heat_cmd, heat.c);
  heat_cmd->add_option("--metric", heat.metric,
                       "efficiency | cost_at_full_success | efficiency_ratio | min_l");
  heat_cmd->add_option("--strategy", heat.strategy, "Full-information base strategy")
      ->check(CLI::IsMember({"betweenness", "greedy"}));
  heat_cmd->add_option("--s-grid", heat.s_grid, "Zipf exponents (lo:hi[:step] or list)");
  heat_cmd->add_option("--rho-grid", heat.rho_grid, "Tolerances (lo:hi[:step] or list)");
  heat_cmd->add_option("--l-max", heat.l_max, "Search bound for blind metrics");
  heat_cmd->add_option("--figure", heat.figure, "Preset parameter grids")
      ->check(CLI::IsMember({"fig4", "fig5", "figA3"}));

  try {
    args = expand_config(std::move(args));
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gen_cmd->parsed()) return cmd_gen(gen);
    if (attack_cmd->parsed()) return cmd_attack(attack, attack_cmd);
    if (sweep_cmd->parsed()) {
      apply_sweep_figure(sweep_cmd, sweep);
      return cmd_sweep(sweep);
    }
    if (blind_cmd->parsed()) return cmd_blind(blind, blind_cmd);
    if (freq_cmd->parsed()) return cmd_freq(freq, freq_cmd);
    if (minl_cmd->parsed()) return cmd_minl(minl, minl_cmd);
    if (heat_cmd->parsed()) return cmd_heatmap(heat, heat_cmd);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace peersplit
