#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "flexh/abstraction.hpp"
#include "flexh/activity_tree.hpp"
#include "flexh/discovery.hpp"
#include "flexh/error.hpp"
#include "flexh/log_io.hpp"
#include "flexh/logging.hpp"
#include "flexh/pnml.hpp"
#include "flexh/quality.hpp"
#include "flexh/xes.hpp"

namespace fs = std::filesystem;
using namespace flexh;

namespace {

struct CommonOptions {
  std::string input;
  std::string format = "auto";  // csv | xes | auto (by extension)
  std::string out = "out/run";
};

struct TreeOptions {
  std::string method = "labels";  // labels | random | flat
  std::string separator = "_";
  int depth = 1;
  int max_size = 10;
  std::uint64_t seed = 1;
};

struct MinerOptions {
  std::string miner = "inductive";
  double noise = 0.2;
};

EventLog load_log(const std::string& path, const std::string& format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open input '" + path + "'");
  std::string fmt = format;
  if (fmt == "auto") {
    auto ext = fs::path(path).extension().string();
    fmt = ext == ".xes" ? "xes" : "csv";
  }
  EventLog log = parse_log(in, log_format_from_name(fmt));
  log_info("loaded " + path + ": " + std::to_string(log.traces.size()) + " traces over " +
           std::to_string(log.alphabet.size()) + " activities");
  return log;
}

ActivityTree build_tree(const EventLog& log, const TreeOptions& opts) {
  if (opts.method == "labels") {
    char sep = opts.separator.empty() ? '_' : opts.separator[0];
    return tree_from_labels(log.alphabet, sep, opts.depth);
  }
  if (opts.method == "random") return tree_random(log.alphabet, opts.max_size, opts.seed);
  if (opts.method == "flat") return tree_flat(log.alphabet);
  throw InvalidArgument("unknown tree method '" + opts.method + "'");
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << content;
}

std::string sanitize(const std::string& label) {
  std::string safe;
  for (char c : label) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
              c == '-' || c == '.' || c == '_';
    safe.push_back(ok ? c : '_');
  }
  if (safe.empty()) safe = "_";
  return safe;
}

std::map<std::string, std::string> safe_names(const std::set<std::string>& labels) {
  std::map<std::string, std::string> names;
  std::set<std::string> used;
  for (const auto& label : labels) {
    std::string base = sanitize(label), name = base;
    int n = 1;
    while (!used.insert(name).second) name = base + "~" + std::to_string(++n);
    names[label] = name;
  }
  return names;
}

int run_tree(const CommonOptions& common, const TreeOptions& opts) {
  EventLog log = load_log(common.input, common.format);
  ActivityTree tree = build_tree(log, opts);
  TreeValidity validity = validate(tree, log.alphabet);
  if (!validity.ok) {
    std::cerr << "tree is not valid for the log:\n";
    for (const auto& [kind, msg] : validity.violations) {
      (void)kind;
      std::cerr << "  - " << msg << "\n";
    }
    return 1;
  }

  fs::path dir(common.out);
  write_file(dir / "tree.json", tree_to_json(tree));
  std::ostringstream dot;
  write_tree_dot(tree, dot);
  write_file(dir / "tree.dot", dot.str());

  int leaves = 0;
  for (const auto& n : tree.nodes) leaves += tree.is_leaf(n) ? 1 : 0;
  std::cout << "tree: height " << tree.max_height() << ", " << tree.nodes.size() << " nodes ("
            << leaves << " activities, " << tree.nodes.size() - leaves << " subprocesses)\n";
  std::cout << "wrote " << (dir / "tree.json").string() << ", " << (dir / "tree.dot").string()
            << "\n";
  return 0;
}

int run_discover(const CommonOptions& common, const TreeOptions& tree_opts,
                 const MinerOptions& miner_opts, const std::string& hide_csv, int jobs) {
  EventLog log = load_log(common.input, common.format);
  ActivityTree tree = build_tree(log, tree_opts);

  MinerConfig miner_config{miner_opts.miner, miner_opts.noise};
  log_info("tree method '" + tree_opts.method + "', miner '" + miner_config.name + "'");
  HierarchicalModel hm;
  try {
    hm = build_hierarchy(log, tree, make_miner(miner_config), jobs);
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  log_debug("hierarchy computed: " + std::to_string(hm.log_map.size()) + " sublogs");

  fs::path dir(common.out);
  write_file(dir / "tree.json", tree_to_json(tree));
  std::ostringstream tree_dot;
  write_tree_dot(tree, tree_dot);
  write_file(dir / "tree.dot", tree_dot.str());

  std::set<std::string> non_leaves;
  for (const auto& sp : tree.non_leaves()) non_leaves.insert(sp);
  auto names = safe_names(non_leaves);

  nlohmann::json manifest;
  manifest["root"] = tree.root;
  manifest["tree"] = "tree.json";
  manifest["miner"] = {{"name", miner_config.name}, {"noise", miner_config.noise_threshold}};
  nlohmann::json subs = nlohmann::json::object();
  for (const auto& sp : tree.non_leaves()) {
    nlohmann::json entry;
    const std::string& safe = names[sp];
    std::ostringstream xes;
    write_xes(hm.log_map.at(sp), xes);
    write_file(dir / "sublogs" / (safe + ".xes"), xes.str());
    entry["log"] = "sublogs/" + safe + ".xes";

    auto model_it = hm.model_map.find(sp);
    if (model_it != hm.model_map.end()) {
      std::ostringstream pnml, net_dot;
      write_pnml(model_it->second, pnml);
      write_net_dot(model_it->second, net_dot);
      write_file(dir / "models" / (safe + ".pnml"), pnml.str());
      write_file(dir / "models" / (safe + ".dot"), net_dot.str());
      entry["model"] = "models/" + safe + ".pnml";
      entry["dot"] = "models/" + safe + ".dot";
    } else {
      entry["failed"] = hm.failures.at(sp);
    }
    entry["is_root"] = sp == tree.root;
    subs[sp] = entry;
  }
  manifest["subprocesses"] = subs;
  write_file(dir / "model.json", manifest.dump(2) + "\n");

  if (!hide_csv.empty()) {
    std::set<std::string> hide;
    std::stringstream ss(hide_csv);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) hide.insert(item);
    EventLog abstracted = selective_abstract(log, tree, hide);
    std::ostringstream xes;
    write_xes(abstracted, xes);
    write_file(dir / "abstracted.xes", xes.str());
    std::cout << "wrote " << (dir / "abstracted.xes").string() << "\n";
  }

  std::cout << "discovered " << hm.model_map.size() << "/" << non_leaves.size()
            << " subprocess models into " << dir.string() << " (root: " << tree.root << ")\n";
  if (!hm.failures.empty()) {
    std::cerr << "failed subprocesses:\n";
    for (const auto& [sp, why] : hm.failures) std::cerr << "  - " << sp << ": " << why << "\n";
    return 3;
  }
  return 0;
}

int run_evaluate(const std::string& bundle, const std::string& out_override,
                 const std::string& metrics_csv, int k_folds, std::uint64_t seed,
                 std::int64_t budget_ms, int jobs) {
  fs::path dir(bundle);
  std::ifstream manifest_in(dir / "model.json");
  if (!manifest_in) {
    std::cerr << "error: missing bundle manifest " << (dir / "model.json").string() << "\n";
    return 1;
  }
  nlohmann::json manifest;
  manifest_in >> manifest;

  std::ifstream tree_in(dir / manifest["tree"].get<std::string>());
  if (!tree_in) {
    std::cerr << "error: missing tree file in bundle\n";
    return 1;
  }
  HierarchicalModel hm;
  hm.tree = tree_from_json(tree_in);

  for (auto it = manifest["subprocesses"].begin(); it != manifest["subprocesses"].end(); ++it) {
    const std::string sp = it.key();
    const auto& entry = it.value();
    std::ifstream log_in(dir / entry["log"].get<std::string>());
    if (!log_in) {
      std::cerr << "error: missing sublog for '" << sp << "'\n";
      return 1;
    }
    hm.log_map[sp] = parse_xes(log_in);
    if (entry.contains("model")) {
      std::ifstream pnml_in(dir / entry["model"].get<std::string>());
      if (!pnml_in) {
        std::cerr << "error: missing model for '" << sp << "'\n";
        return 1;
      }
      hm.model_map[sp] = parse_pnml(pnml_in);
    } else {
      hm.failures[sp] = entry.value("failed", "discovery failed");
    }
  }

  EvaluationConfig config;
  config.k_folds = k_folds;
  config.seed = seed;
  config.budget.time_budget_ms = budget_ms;
  config.jobs = jobs;
  if (!metrics_csv.empty() && metrics_csv != "all") {
    config.with_fitness = metrics_csv.find("fi") != std::string::npos;
    config.with_precision = metrics_csv.find("pr") != std::string::npos;
    config.with_generalization = metrics_csv.find("ge") != std::string::npos;
  }
  MinerConfig miner_config;
  miner_config.name = manifest["miner"]["name"].get<std::string>();
  miner_config.noise_threshold = manifest["miner"]["noise"].get<double>();
  config.fold_miner = make_miner(miner_config);

  log_info("evaluating " + std::to_string(hm.log_map.size()) + " subprocess(es) with " +
           std::to_string(config.jobs) + " job(s)");
  QualityReport report = evaluate_hierarchical(hm, config);

  fs::path out_dir = out_override.empty() ? dir : fs::path(out_override);
  write_file(out_dir / "report.json", report_to_json(report));
  std::ostringstream table;
  render_report(report, table);
  write_file(out_dir / "report.txt", table.str());
  std::cout << table.str();
  std::cout << "wrote " << (out_dir / "report.json").string() << ", "
            << (out_dir / "report.txt").string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hierarchical process discovery from event logs"};
  app.require_subcommand(1);

  CommonOptions common;
  TreeOptions tree_opts;
  MinerOptions miner_opts;
  std::string hide;
  std::string metrics = "all";
  int k_folds = 3;
  std::uint64_t seed = 1;
  std::int64_t budget_ms = 60'000;
  int jobs = static_cast<int>(std::thread::hardware_concurrency());
  if (jobs < 1) jobs = 1;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--input", common.input, "event log file")->required();
    cmd->add_option("--format", common.format, "csv | xes | auto");
    cmd->add_option("--out", common.out, "output directory");
  };
  auto add_tree_opts = [&](CLI::App* cmd) {
    cmd->add_option("--method", tree_opts.method, "labels | random | flat");
    cmd->add_option("--sep", tree_opts.separator, "label separator (labels method)");
    cmd->add_option("--depth", tree_opts.depth, "prefix segments forming the hierarchy");
    cmd->add_option("--max-size", tree_opts.max_size, "max subprocess size (random method)");
    cmd->add_option("--seed", tree_opts.seed, "seed for all randomized steps");
  };

  CLI::App* tree_cmd = app.add_subcommand("tree", "compute and export the activity tree");
  add_common(tree_cmd);
  add_tree_opts(tree_cmd);

  CLI::App* discover_cmd =
      app.add_subcommand("discover", "discover the hierarchical model bundle");
  add_common(discover_cmd);
  add_tree_opts(discover_cmd);
  discover_cmd->add_option("--miner", miner_opts.miner, "inductive | dfg");
  discover_cmd->add_option("--noise", miner_opts.noise, "path-filtering threshold in [0,1]");
  discover_cmd->add_option("--hide", hide,
                           "comma-separated subprocesses to abstract in abstracted.xes");
  discover_cmd->add_option("--jobs", jobs, "parallel subprocess discoveries");

  CLI::App* evaluate_cmd = app.add_subcommand("evaluate", "evaluate a discovered bundle");
  std::string bundle, eval_out;
  evaluate_cmd->add_option("--input", bundle, "bundle directory from `discover`")->required();
  evaluate_cmd->add_option("--out", eval_out, "report directory (default: the bundle)");
  evaluate_cmd->add_option("--metrics", metrics, "comma subset of fi,pr,ge (default all)");
  evaluate_cmd->add_option("--k-folds", k_folds, "folds for generalization");
  evaluate_cmd->add_option("--seed", seed, "seed for fold assignment");
  evaluate_cmd->add_option("--budget-ms", budget_ms, "alignment time budget per model");
  evaluate_cmd->add_option("--jobs", jobs, "parallel subprocess evaluations");

  CLI11_PARSE(app, argc, argv);

  try {
    if (tree_cmd->parsed()) return run_tree(common, tree_opts);
    if (discover_cmd->parsed()) return run_discover(common, tree_opts, miner_opts, hide, jobs);
    if (evaluate_cmd->parsed())
      return run_evaluate(bundle, eval_out, metrics, k_folds, seed, budget_ms, jobs);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
