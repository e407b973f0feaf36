#include "recourse/cli/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "recourse/capacity.hpp"
#include "recourse/cli/io.hpp"
#include "recourse/matching.hpp"
#include "recourse/penalized.hpp"
#include "recourse/recourse_cost.hpp"
#include "recourse/weights.hpp"

namespace recourse::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct CommonOptions {
  std::string matrix;
  std::string kind = "weight";
  std::string config;
  std::optional<double> gamma;
  std::string output_dir;
};

struct Inputs {
  WeightMatrix weights;
  KeyValueConfig config;
  json provenance;
};

fs::path output_dir(const CommonOptions& opts) {
  if (!opts.output_dir.empty()) return opts.output_dir;
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
  return ".";
}

json rounded(const std::vector<double>& values) {
  json arr = json::array();
  for (double v : values) arr.push_back(round9(v));
  return arr;
}

json capacities_json(const std::optional<CapacityVector>& k) {
  return k ? json(k->values()) : json::array();
}

KeyValueConfig load_config(const std::string& path) {
  return path.empty() ? KeyValueConfig{} : KeyValueConfig::read(path);
}

Inputs load_inputs(const CommonOptions& opts, const std::string& command) {
  if (opts.kind != "cost" && opts.kind != "weight") {
    throw ValidationError("--kind must be 'cost' or 'weight'");
  }
  auto config = load_config(opts.config);
  std::optional<double> gamma = opts.gamma ? opts.gamma : config.get_double("gamma");

  const std::string bytes = read_file(opts.matrix);
  const auto csv = parse_labelled_csv(bytes, opts.matrix);

  json prov;
  prov["command"] = command;
  prov["matrix_file"] = fs::path(opts.matrix).filename().string();
  prov["matrix_hash"] = content_hash(bytes);
  prov["kind"] = opts.kind;
  prov["transform"] = "exponential";
  prov["gamma"] = gamma ? json(round9(*gamma)) : json(nullptr);
  prov["config_file"] = opts.config.empty() ? json(nullptr) : json(fs::path(opts.config).filename().string());

  if (opts.kind == "cost") {
    if (!gamma) throw ValidationError("gamma is required for cost matrices (--gamma or config key 'gamma')");
    auto weights = to_weights(to_cost_matrix(csv), *gamma);
    prov["warnings"] = weights.warnings();
    return {std::move(weights), std::move(config), std::move(prov)};
  }
  prov["warnings"] = json::array();
  return {to_weight_matrix(csv, gamma.value_or(1.0)), std::move(config), std::move(prov)};
}

json welfare_json(const WeightMatrix& w, const WelfareReport& r, json config,
                  const std::optional<CapacityVector>& capacities_in) {
  json doc;
  doc["config"] = std::move(config);
  doc["capacities_in"] = capacities_json(capacities_in);
  doc["capacities_out"] = r.capacity_used.values();
  doc["capacity_delta"] = r.capacity_delta;
  json assignments = json::array();
  for (std::size_t i = 0; i < r.matching.n_seekers(); ++i) {
    if (const auto& j = r.matching[i]) {
      assignments.push_back({{"seeker", w.seeker_ids()[i]},
                             {"provider", w.provider_ids()[*j]},
                             {"weight", round9(w(i, *j))}});
    }
  }
  doc["assignments"] = std::move(assignments);
  doc["individual_welfare"] = round9(r.individual_welfare);
  doc["social_welfare"] = round9(r.social_welfare);
  doc["welfare_gap"] = round9(r.welfare_gap);
  doc["penalty"] = round9(r.penalty);
  doc["objective"] = round9(r.objective);
  doc["pct_of_individual"] = round9(r.pct_of_individual());
  doc["matched_count"] = r.matched_count;
  doc["provider_ids"] = w.provider_ids();
  return doc;
}

void emit(std::ostream& out, const fs::path& path, const std::string& contents) {
  write_file(path, contents);
  out << "wrote " << path.string() << '\n';
}

CapacityVector required_capacities(const std::string& flag, const KeyValueConfig& cfg,
                                   const char* what) {
  if (!flag.empty()) return CapacityVector(parse_ints(flag, what));
  if (auto v = cfg.get_ints("initial_capacities")) return CapacityVector(*v);
  throw ValidationError(std::string(what) + " missing (flag or config key 'initial_capacities')");
}

void add_common(CLI::App* sub, CommonOptions& opts) {
  sub->add_option("-m,--matrix", opts.matrix, "Matrix CSV (header of provider ids, leading seeker-id column)")
      ->required();
  sub->add_option("--kind", opts.kind, "Whether the matrix holds costs or weights")
      ->check(CLI::IsMember({"cost", "weight"}));
  sub->add_option("-c,--config", opts.config, "key = value config file");
  sub->add_option("--gamma", opts.gamma, "Exponential transform scale (overrides config)");
  sub->add_option("-o,--output-dir", opts.output_dir, "Report directory");
}

int cmd_match(const CommonOptions& opts, const std::string& caps_flag, std::ostream& out) {
  auto in = load_inputs(opts, "match");
  const auto k = required_capacities(caps_flag, in.config, "capacities");
  in.provenance["capacities"] = k.values();
  auto [matching, report] = solve_matching(in.weights, k);
  const auto doc = welfare_json(in.weights, report, in.provenance, k);
  emit(out, output_dir(opts) / "match.json", dump_json(doc));
  return kExitOk;
}

int cmd_allocate(const CommonOptions& opts, std::optional<long long> total_flag, std::ostream& out) {
  auto in = load_inputs(opts, "allocate");
  const long long total = total_flag ? *total_flag
                                     : in.config.get_int("K_total").value_or(
                                           static_cast<long long>(in.weights.n_seekers()));
  in.provenance["K_total"] = total;
  std::optional<CapacityVector> k_in;
  if (auto v = in.config.get_ints("initial_capacities")) k_in = CapacityVector(*v);
  const auto k = optimal_capacity(in.weights, total);
  auto [matching, report] = solve_matching(in.weights, k);
  if (k_in) {
    if (k_in->size() != k.size()) throw ValidationError("initial_capacities has wrong length");
    for (std::size_t j = 0; j < k.size(); ++j) report.capacity_delta[j] = k[j] - (*k_in)[j];
  }
  const auto doc = welfare_json(in.weights, report, in.provenance, k_in);
  emit(out, output_dir(opts) / "allocate.json", dump_json(doc));
  return kExitOk;
}

struct RedistributeFlags {
  std::string betas;
  std::string initial;
  std::optional<long long> total;
  bool local_search = false;
};

int cmd_redistribute(const CommonOptions& opts, const RedistributeFlags& flags, std::ostream& out) {
  auto in = load_inputs(opts, "redistribute");
  const auto k_hat = required_capacities(flags.initial, in.config, "initial capacities");
  std::vector<double> betas;
  if (!flags.betas.empty()) {
    betas = parse_doubles(flags.betas, "betas");
  } else if (auto v = in.config.get_doubles("betas")) {
    betas = *v;
  } else {
    throw ValidationError("betas missing (--betas or config key 'betas')");
  }
  if (betas.size() == 1) betas.assign(k_hat.size(), betas.front());
  const PenaltyConfig penalty(betas, k_hat);
  const long long total = flags.total ? *flags.total : in.config.get_int("K_total").value_or(k_hat.total());

  in.provenance["betas"] = rounded(betas);
  in.provenance["initial_capacities"] = k_hat.values();
  in.provenance["K_total"] = total;
  in.provenance["method"] = flags.local_search ? "local_search" : "enumeration";

  PenalizedResult result = [&] {
    if (!flags.local_search) return solve_penalized(in.weights, penalty, total);
    const CapacityVector start = k_hat.total() == total ? k_hat : optimal_capacity(in.weights, total);
    in.provenance["start"] = start.values();
    return local_search_penalized(in.weights, penalty, total, start);
  }();
  const auto doc = welfare_json(in.weights, result.report, in.provenance, k_hat);
  emit(out, output_dir(opts) / "redistribute.json", dump_json(doc));
  return kExitOk;
}

int cmd_sweep(const CommonOptions& opts, std::optional<long long> max_flag, std::ostream& out) {
  auto in = load_inputs(opts, "sweep");
  const auto& w = in.weights;
  const long long max_total =
      max_flag ? *max_flag
               : in.config.get_int("K_max").value_or(static_cast<long long>(w.n_seekers() * w.n_providers()));
  in.provenance["K_max"] = max_total;
  const double iw = individual_welfare(w);
  const auto curve = welfare_curve(w, max_total);

  std::string csv = "K,welfare,individual_welfare,gap\n";
  json points = json::array();
  for (const auto& p : curve) {
    csv += std::to_string(p.total_capacity) + "," + format9(p.welfare) + "," + format9(iw) + "," +
           format9(iw - p.welfare) + "\n";
    points.push_back({{"K", p.total_capacity},
                      {"capacity", p.capacity.values()},
                      {"welfare", round9(p.welfare)},
                      {"gap", round9(iw - p.welfare)}});
  }
  json doc;
  doc["config"] = in.provenance;
  doc["individual_welfare"] = round9(iw);
  doc["curve"] = std::move(points);
  doc["provider_ids"] = w.provider_ids();
  const auto dir = output_dir(opts);
  emit(out, dir / "sweep.csv", csv);
  emit(out, dir / "sweep.json", dump_json(doc));
  return kExitOk;
}

struct CostsFlags {
  std::string seekers;
  std::string providers;
  std::string norm;
  std::string config;
  std::string output_dir;
};

// Seekers CSV: corner, feature names...; rows: id, features.
// Providers CSV: corner, "bias", feature names...; rows: id, bias, weights.
int cmd_costs(const CostsFlags& flags, std::ostream& out) {
  const auto cfg = load_config(flags.config);
  const std::string norm_name = !flags.norm.empty() ? flags.norm : cfg.get("norm").value_or("");
  if (norm_name.empty()) throw ValidationError("norm missing (--norm or config key 'norm')");
  const Norm norm = parse_norm(norm_name);

  const std::string seeker_bytes = read_file(flags.seekers);
  const std::string provider_bytes = read_file(flags.providers);
  const auto seekers = parse_labelled_csv(seeker_bytes, flags.seekers);
  const auto providers_csv = parse_labelled_csv(provider_bytes, flags.providers);
  if (providers_csv.column_ids.empty() || providers_csv.column_ids.front() != "bias") {
    throw ValidationError(flags.providers + ": first column after the id must be 'bias'");
  }
  if (providers_csv.column_ids.size() != seekers.column_ids.size() + 1) {
    throw ValidationError("provider weight count does not match seeker feature count");
  }
  std::vector<LinearProvider> providers;
  for (std::size_t j = 0; j < providers_csv.rows.size(); ++j) {
    const auto& row = providers_csv.rows[j];
    providers.emplace_back(std::vector<double>(row.begin() + 1, row.end()), row.front(),
                           providers_csv.row_ids[j]);
  }
  ActionConstraints constraints;
  if (auto v = cfg.get_doubles("lower")) constraints.lower = *v;
  if (auto v = cfg.get_doubles("upper")) constraints.upper = *v;
  if (auto v = cfg.get_ints("mutable")) constraints.mutable_features.assign(v->begin(), v->end());

  const auto costs = build_cost_matrix(seekers.rows, providers, constraints, norm, seekers.row_ids);

  LabelledCsv matrix{"seeker", costs.provider_ids(), costs.seeker_ids(), {}};
  for (std::size_t i = 0; i < costs.n_seekers(); ++i) {
    std::vector<double> row;
    for (std::size_t j = 0; j < costs.n_providers(); ++j) row.push_back(costs(i, j));
    matrix.rows.push_back(std::move(row));
  }

  json config;
  config["command"] = "costs";
  config["norm"] = to_string(norm);
  config["seekers_hash"] = content_hash(seeker_bytes);
  config["providers_hash"] = content_hash(provider_bytes);
  config["margin"] = kFlipMargin;
  config["lower"] = constraints.lower.empty() ? json(nullptr) : rounded(constraints.lower);
  config["upper"] = constraints.upper.empty() ? json(nullptr) : rounded(constraints.upper);
  config["mutable"] = constraints.mutable_features.empty() ? json(nullptr) : json(constraints.mutable_features);
  json doc;
  doc["config"] = std::move(config);
  doc["seeker_ids"] = costs.seeker_ids();
  doc["provider_ids"] = costs.provider_ids();
  json rows = json::array();
  for (const auto& r : matrix.rows) rows.push_back(rounded(r));
  doc["costs"] = std::move(rows);

  fs::path dir = flags.output_dir;
  if (dir.empty()) {
    const char* env = std::getenv(kOutputDirEnv);
    dir = env && *env ? fs::path(env) : fs::path(".");
  }
  emit(out, dir / "costs.csv", format_labelled_csv(matrix));
  emit(out, dir / "costs.json", dump_json(doc));
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Capacitated many-to-many recourse matching"};
  app.name("recourse");
  app.require_subcommand(1);

  CommonOptions common;
  std::string caps_flag;
  std::optional<long long> total;
  RedistributeFlags redistribute;
  CostsFlags costs;

  auto* match = app.add_subcommand("match", "Best matching under fixed capacities");
  add_common(match, common);
  match->add_option("-k,--capacities", caps_flag, "Provider capacities, e.g. 2,4,1,1");

  auto* allocate = app.add_subcommand("allocate", "Capacity distribution for a total budget");
  add_common(allocate, common);
  allocate->add_option("-K,--total", total, "Total capacity (default: config K_total, else seeker count)");

  auto* redis = app.add_subcommand("redistribute", "Penalized capacity redistribution");
  add_common(redis, common);
  redis->add_option("-b,--betas", redistribute.betas, "Penalty per unit change: scalar or per-provider list");
  redis->add_option("-k,--initial-capacities", redistribute.initial, "Starting capacities");
  redis->add_option("-K,--total", redistribute.total, "Total capacity (default: sum of initial capacities)");
  redis->add_flag("--local-search", redistribute.local_search, "Hill-climb instead of exact enumeration");

  auto* sweep = app.add_subcommand("sweep", "Welfare curve over total capacity");
  add_common(sweep, common);
  sweep->add_option("-K,--max-total", total, "Largest total capacity (default: seekers * providers)");

  auto* cost = app.add_subcommand("costs", "Cost matrix for linear providers");
  cost->add_option("--seekers", costs.seekers, "Seeker feature CSV")->required();
  cost->add_option("--providers", costs.providers, "Provider CSV (id, bias, weights...)")->required();
  cost->add_option("--norm", costs.norm, "l1 or linf");
  cost->add_option("-c,--config", costs.config, "key = value config (norm, lower, upper, mutable)");
  cost->add_option("-o,--output-dir", costs.output_dir, "Report directory");

  std::vector<std::string> argv_rest(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(argv_rest.begin(), argv_rest.end());
  try {
    app.parse(argv_rest);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitValidation;
  }

  try {
    if (*match) return cmd_match(common, caps_flag, out);
    if (*allocate) return cmd_allocate(common, total, out);
    if (*redis) return cmd_redistribute(common, redistribute, out);
    if (*sweep) return cmd_sweep(common, total, out);
    if (*cost) return cmd_costs(costs, out);
  } catch (const SizeLimitError& e) {
    err << "error: " << e.what() << '\n';
    return kExitSizeGuard;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace recourse::cli
