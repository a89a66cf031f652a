// Copyright 2026 The rolemine Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// rolemine command line: gen, mine, compare, oracle.
//
// Exit codes: 0 success, 1 input/data error, 2 usage error.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rolemine/rolemine.hpp"

namespace {

using namespace rolemine;

constexpr int kExitData = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write output file '" + path + "'");
  out << content;
  if (!out) throw DataError("write failed for '" + path + "'");
}

Rational parse_rational(const std::string& s) {
  try {
    if (const auto slash = s.find('/'); slash != std::string::npos) {
      const Rational num(boost::multiprecision::cpp_int(s.substr(0, slash)));
      const Rational den(boost::multiprecision::cpp_int(s.substr(slash + 1)));
      if (den == 0) throw UsageError("zero denominator in '" + s + "'");
      return num / den;
    }
    if (const auto dot = s.find('.'); dot != std::string::npos) {
      const std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      boost::multiprecision::cpp_int scale = 1;
      for (std::size_t i = dot + 1; i < s.size(); ++i) scale *= 10;
      return Rational(boost::multiprecision::cpp_int(digits.empty() ? "0" : digits), scale);
    }
    return Rational(boost::multiprecision::cpp_int(s));
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
    throw UsageError("invalid number '" + s + "'");
  }
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

WscWeights parse_weights(const std::string& s) {
  const auto parts = split_commas(s);
  if (parts.size() != 3) throw UsageError("--weights expects three values w_r,w_u,w_p");
  WscWeights w{parse_rational(parts[0]), parse_rational(parts[1]), parse_rational(parts[2])};
  if (w.role < 0 || w.user_assignment < 0 || w.permission_assignment < 0) {
    throw UsageError("wsc weights must be nonnegative");
  }
  return w;
}

struct LoadedMatrix {
  AccessMatrix upa;
  std::optional<SparseMatrixFile> sparse;
};

LoadedMatrix load_matrix(const std::string& path, const std::string& format) {
  const std::string text = read_file(path);
  try {
    if (format == "dense") return {parse_dense(text), std::nullopt};
    auto f = parse_sparse(text);
    AccessMatrix upa = f.upa;
    return {std::move(upa), std::move(f)};
  } catch (const ParseError& e) {
    throw DataError(path + ": " + e.what());
  }
}

std::vector<PermSet> load_truth(const std::string& path) {
  try {
    const auto d = parse_decomposition(read_file(path));
    auto perms = role_perms(d);
    if (perms.empty()) throw DataError(path + ": truth file has no roles");
    return perms;
  } catch (const ParseError& e) {
    throw DataError(path + ": " + e.what());
  }
}

std::string dataset_label(const std::string& path) { return std::filesystem::path(path).stem().string(); }

// Shared mining flags.
struct MineFlags {
  std::string algo = "constrained";
  std::size_t k = 0;
  std::string input;
  std::string format = "sparse";
  std::string output;
  std::string metrics;
  std::string truth;
  std::string names;
  std::string weights = "1,1,1";
  bool no_lattice = false;
  bool no_timing = false;
  std::uint64_t seed = 0;
};

MiningConfig make_config(std::size_t k, const std::string& weights, bool no_lattice, std::uint64_t seed) {
  if (k < 1) throw UsageError("k must be >= 1");
  MiningConfig cfg;
  cfg.max_perms_per_role = k;
  cfg.wsc_weights = parse_weights(weights);
  cfg.lattice_reduction = !no_lattice;
  cfg.seed = seed;
  return cfg;
}

int cmd_mine(const MineFlags& f) {
  const auto algo = parse_algorithm(f.algo);
  if (!algo) throw UsageError("unknown algorithm '" + f.algo + "' (expected constrained or crm)");
  const MiningConfig cfg = make_config(f.k, f.weights, f.no_lattice, f.seed);

  const LoadedMatrix m = load_matrix(f.input, f.format);
  std::optional<std::vector<PermSet>> truth;
  if (!f.truth.empty()) truth = load_truth(f.truth);

  const MiningRun run = run_miner(*algo, m.upa, cfg);
  MetricsReport report = measure(m.upa, run.decomposition, cfg, truth);
  if (!f.no_timing) report.elapsed = run.elapsed;
  report.algorithm = algorithm_name(*algo);
  report.dataset = dataset_label(f.input);

  write_file(f.output, serialize_decomposition(run.decomposition));
  if (m.sparse && m.sparse->has_names()) {
    write_file(f.names.empty() ? f.output + ".names.json" : f.names, names_json(*m.sparse).dump(2) + "\n");
  }
  const std::string json = to_json(report).dump(2) + "\n";
  if (!f.metrics.empty()) {
    write_file(f.metrics, json);
  } else {
    std::cout << json;
  }
  return 0;
}

struct GenFlags {
  GeneratorParams params;
  std::string out_upa;
  std::string out_truth;
  std::string format = "sparse";
};

int cmd_gen(const GenFlags& f) {
  GeneratedInstance inst;
  try {
    inst = generate(f.params);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  write_file(f.out_upa, f.format == "dense" ? write_dense(inst.upa) : write_sparse(inst.upa));
  if (!f.out_truth.empty()) write_file(f.out_truth, serialize_decomposition(inst.truth));
  return 0;
}

struct CompareFlags {
  std::string input;
  std::string format = "sparse";
  std::string truth;
  std::string gen_spec;
  std::string k_list;
  std::string algos = "constrained,crm";
  std::string out;
  std::string weights = "1,1,1";
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  bool no_lattice = false;
  bool no_timing = false;
};

struct Dataset {
  std::string name;
  AccessMatrix upa;
  std::optional<std::vector<PermSet>> truth;
};

// "users=100,perms=50,roles=10,roles_per_user=3,perms_per_role=5,count=4".
// Instance i is generated with seed + i.
std::vector<Dataset> datasets_from_spec(const std::string& spec, std::uint64_t seed) {
  GeneratorParams base;
  std::size_t count = 1;
  for (const auto& item : split_commas(spec)) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("--gen-spec entries must be key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    std::size_t value = 0;
    try {
      value = std::stoull(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw UsageError("--gen-spec value for '" + key + "' is not an integer");
    }
    if (key == "users") base.n_users = value;
    else if (key == "perms") base.n_perms = value;
    else if (key == "roles") base.n_roles = value;
    else if (key == "roles_per_user") base.max_roles_per_user = value;
    else if (key == "perms_per_role") base.max_perms_per_role = value;
    else if (key == "count") count = value;
    else throw UsageError("unknown --gen-spec key '" + key + "'");
  }
  std::vector<Dataset> out;
  for (std::size_t i = 0; i < count; ++i) {
    GeneratorParams p = base;
    p.seed = seed + i;
    GeneratedInstance inst;
    try {
      inst = generate(p);
    } catch (const ConfigError& e) {
      throw UsageError(e.what());
    }
    out.push_back(Dataset{"gen-" + std::to_string(p.seed), std::move(inst.upa), role_perms(inst.truth)});
  }
  return out;
}

// Entries are integers or "max/<d>": the largest row size divided by d,
// at least 1.
std::vector<std::size_t> resolve_k_list(const std::vector<std::string>& entries, const AccessMatrix& upa) {
  std::vector<std::size_t> ks;
  for (const auto& e : entries) {
    std::size_t k = 0;
    try {
      if (e.rfind("max/", 0) == 0) {
        const std::size_t d = std::stoull(e.substr(4));
        if (d == 0) throw UsageError("division by zero in k entry '" + e + "'");
        k = std::max<std::size_t>(1, upa.max_row_size() / d);
      } else {
        std::size_t pos = 0;
        const long long v = std::stoll(e, &pos);
        if (pos != e.size()) throw std::invalid_argument(e);
        k = v < 1 ? 0 : static_cast<std::size_t>(v);
      }
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception&) {
      throw UsageError("invalid k entry '" + e + "'");
    }
    if (k < 1) throw UsageError("k must be >= 1");
    ks.push_back(k);
  }
  return ks;
}

int cmd_compare(const CompareFlags& f) {
  if (f.input.empty() == f.gen_spec.empty()) throw UsageError("compare needs exactly one of --input or --gen-spec");
  if (f.jobs < 1) throw UsageError("--jobs must be >= 1");
  std::vector<Algorithm> algos;
  for (const auto& name : split_commas(f.algos)) {
    const auto a = parse_algorithm(name);
    if (!a) throw UsageError("unknown algorithm '" + name + "' (expected constrained or crm)");
    algos.push_back(*a);
  }
  if (algos.empty()) throw UsageError("--algos is empty");
  const auto k_entries = split_commas(f.k_list);
  if (k_entries.empty()) throw UsageError("--k-list is empty");
  const WscWeights weights = parse_weights(f.weights);

  std::vector<Dataset> datasets;
  if (!f.input.empty()) {
    Dataset d{dataset_label(f.input), load_matrix(f.input, f.format).upa, std::nullopt};
    if (!f.truth.empty()) d.truth = load_truth(f.truth);
    datasets.push_back(std::move(d));
  } else {
    datasets = datasets_from_spec(f.gen_spec, f.seed);
  }

  struct Cell {
    const Dataset* dataset;
    Algorithm algo;
    std::size_t k;
  };
  std::vector<Cell> cells;
  for (const auto& d : datasets) {
    for (std::size_t k : resolve_k_list(k_entries, d.upa))
      for (Algorithm a : algos) cells.push_back(Cell{&d, a, k});
  }

  std::vector<std::string> rows(cells.size());
  std::vector<std::string> errors(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        const Cell& c = cells[i];
        MiningConfig cfg;
        cfg.max_perms_per_role = c.k;
        cfg.wsc_weights = weights;
        cfg.lattice_reduction = !f.no_lattice;
        cfg.seed = f.seed;
        const MiningRun run = run_miner(c.algo, c.dataset->upa, cfg);
        MetricsReport report = measure(c.dataset->upa, run.decomposition, cfg, c.dataset->truth);
        if (!f.no_timing) report.elapsed = run.elapsed;
        report.algorithm = algorithm_name(c.algo);
        report.dataset = c.dataset->name;
        rows[i] = to_csv_row(report);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < std::min(f.jobs, cells.size()); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (!e.empty()) throw DataError(e);

  std::string csv = std::string(kCsvHeader) + "\n";
  for (const auto& r : rows) csv += r + "\n";
  if (f.out.empty()) {
    std::cout << csv;
  } else {
    write_file(f.out, csv);
  }
  return 0;
}

struct OracleFlags {
  std::string input;
  std::string format = "sparse";
  std::size_t k = 0;
};

int cmd_oracle(const OracleFlags& f) {
  if (f.k < 1) throw UsageError("k must be >= 1");
  const LoadedMatrix m = load_matrix(f.input, f.format);
  OracleResult res;
  try {
    res = optimal_role_count(m.upa, f.k);
  } catch (const SizeError& e) {
    throw DataError(e.what());
  }
  nlohmann::ordered_json j;
  j["optimal_role_count"] = res.role_count;
  j["k"] = f.k;
  j["witness"] = serialize_decomposition(res.witness);
  std::cout << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cardinality-constrained RBAC role mining"};
  app.require_subcommand(1);

  MineFlags mine;
  auto* mine_cmd = app.add_subcommand("mine", "Mine roles from an access matrix");
  mine_cmd->add_option("--algo", mine.algo, "constrained | crm");
  mine_cmd->add_option("--k", mine.k, "Maximum permissions per role")->required();
  mine_cmd->add_option("--input", mine.input, "Access matrix file")->required();
  mine_cmd->add_option("--format", mine.format, "sparse | dense")->check(CLI::IsMember({"sparse", "dense"}));
  mine_cmd->add_option("--output", mine.output, "Decomposition output file")->required();
  mine_cmd->add_option("--metrics", mine.metrics, "Metrics JSON output file (stdout if omitted)");
  mine_cmd->add_option("--truth", mine.truth, "Ground-truth role file for accuracy/distance");
  mine_cmd->add_option("--names", mine.names, "Name map output (default <output>.names.json)");
  mine_cmd->add_option("--weights", mine.weights, "WSC weights w_r,w_u,w_p");
  mine_cmd->add_flag("--no-lattice", mine.no_lattice, "Skip lattice reduction");
  mine_cmd->add_flag("--no-timing", mine.no_timing, "Write elapsed_ms as null");
  mine_cmd->add_option("--seed", mine.seed, "Seed recorded in the report");

  GenFlags gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic access matrix with known roles");
  gen_cmd->add_option("--n-users", gen.params.n_users);
  gen_cmd->add_option("--n-perms", gen.params.n_perms);
  gen_cmd->add_option("--n-roles", gen.params.n_roles);
  gen_cmd->add_option("--max-roles-per-user", gen.params.max_roles_per_user);
  gen_cmd->add_option("--max-perms-per-role", gen.params.max_perms_per_role);
  gen_cmd->add_option("--seed", gen.params.seed);
  gen_cmd->add_option("--format", gen.format, "sparse | dense")->check(CLI::IsMember({"sparse", "dense"}));
  gen_cmd->add_option("--out-upa", gen.out_upa, "Access matrix output file")->required();
  gen_cmd->add_option("--out-truth", gen.out_truth, "Ground-truth decomposition output file");

  CompareFlags cmp;
  auto* cmp_cmd = app.add_subcommand("compare", "Tabulate metrics for algorithms x k values");
  cmp_cmd->add_option("--input", cmp.input, "Access matrix file");
  cmp_cmd->add_option("--format", cmp.format, "sparse | dense")->check(CLI::IsMember({"sparse", "dense"}));
  cmp_cmd->add_option("--truth", cmp.truth, "Ground-truth role file");
  cmp_cmd->add_option("--gen-spec", cmp.gen_spec,
                      "users=..,perms=..,roles=..,roles_per_user=..,perms_per_role=..,count=..");
  cmp_cmd->add_option("--k-list", cmp.k_list, "Comma-separated k values; max/<d> is relative to the largest row")
      ->required();
  cmp_cmd->add_option("--algos", cmp.algos, "Comma-separated algorithms");
  cmp_cmd->add_option("--out", cmp.out, "CSV output file (stdout if omitted)");
  cmp_cmd->add_option("--weights", cmp.weights, "WSC weights w_r,w_u,w_p");
  cmp_cmd->add_option("--seed", cmp.seed);
  cmp_cmd->add_option("--jobs", cmp.jobs, "Worker threads");
  cmp_cmd->add_flag("--no-lattice", cmp.no_lattice);
  cmp_cmd->add_flag("--no-timing", cmp.no_timing, "Leave elapsed_ms empty");

  OracleFlags orc;
  auto* orc_cmd = app.add_subcommand("oracle", "Exact minimum role count for a tiny instance");
  orc_cmd->add_option("--input", orc.input)->required();
  orc_cmd->add_option("--format", orc.format)->check(CLI::IsMember({"sparse", "dense"}));
  orc_cmd->add_option("--k", orc.k)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*mine_cmd) return cmd_mine(mine);
    if (*gen_cmd) return cmd_gen(gen);
    if (*cmp_cmd) return cmd_compare(cmp);
    if (*orc_cmd) return cmd_oracle(orc);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
