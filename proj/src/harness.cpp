// Copyright 2026 The dpadmm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "consensus.hpp"
#include "csv.hpp"
#include "dvp.hpp"
#include "error.hpp"
#include "metrics.hpp"
#include "rng.hpp"
#include "topology.hpp"

namespace dpadmm {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    fail(ErrorCode::kConfigError, key + ": not a number: '" + value + "'");
  }
}

int to_int(const std::string& key, const std::string& value) {
  double v = to_double(key, value);
  if (v != std::floor(v)) {
    fail(ErrorCode::kConfigError, key + ": not an integer: '" + value + "'");
  }
  return static_cast<int>(v);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : value) {
    if (ch == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(trim(cur));
  return out;
}

// Seed lists accept "a,b,c" and the inclusive range form "a..b".
std::vector<uint64_t> parse_seeds(const std::string& value) {
  std::vector<uint64_t> seeds;
  size_t dots = value.find("..");
  if (dots != std::string::npos) {
    uint64_t lo = static_cast<uint64_t>(to_int("seeds", trim(value.substr(0, dots))));
    uint64_t hi = static_cast<uint64_t>(to_int("seeds", trim(value.substr(dots + 2))));
    if (hi < lo) fail(ErrorCode::kConfigError, "seeds: empty range");
    for (uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    return seeds;
  }
  for (const auto& item : split_list(value)) {
    seeds.push_back(static_cast<uint64_t>(to_int("seeds", item)));
  }
  return seeds;
}

}  // namespace

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  if (key == "dataset") {
    if (value == "synthetic") source = Source::kSynthetic;
    else if (value == "nslkdd") source = Source::kNslkdd;
    else if (value == "matrix") source = Source::kMatrix;
    else fail(ErrorCode::kConfigError, "dataset: unknown source '" + value + "'");
  } else if (key == "synthetic.train_n") {
    synth_train_n = to_int(key, value);
  } else if (key == "synthetic.test_n") {
    synth_test_n = to_int(key, value);
  } else if (key == "synthetic.dim") {
    synth_dim = to_int(key, value);
  } else if (key == "synthetic.separation") {
    synth_separation = to_double(key, value);
  } else if (key == "nslkdd.train_path") {
    nslkdd_train_path = value;
  } else if (key == "nslkdd.test_path") {
    nslkdd_test_path = value;
  } else if (key == "nslkdd.subsample") {
    nslkdd_subsample = to_int(key, value);
  } else if (key == "matrix.train_path") {
    matrix_train_path = value;
  } else if (key == "matrix.test_path") {
    matrix_test_path = value;
  } else if (key == "preprocess.features") {
    preprocess_features.clear();
    for (const auto& item : split_list(value)) {
      preprocess_features.push_back(to_int(key, item));
    }
  } else if (key == "test_fraction") {
    test_fraction = to_double(key, value);
  } else if (key == "partition") {
    if (value == "iid") label_skew_partition = false;
    else if (value == "label_skew") label_skew_partition = true;
    else fail(ErrorCode::kConfigError, "partition: unknown scheme '" + value + "'");
  } else if (key == "nodes") {
    nodes = to_int(key, value);
  } else if (key == "topology") {
    if (value == "random") topology = TopoKind::kRandom;
    else if (value == "path") topology = TopoKind::kPath;
    else if (value == "ring") topology = TopoKind::kRing;
    else if (value == "star") topology = TopoKind::kStar;
    else if (value == "complete") topology = TopoKind::kComplete;
    else fail(ErrorCode::kConfigError, "topology: unknown kind '" + value + "'");
  } else if (key == "topology.avg_degree") {
    avg_degree = to_double(key, value);
  } else if (key == "schedule.k") {
    schedule_k.clear();
    for (const auto& item : split_list(value)) {
      schedule_k.push_back(to_int(key, item));
    }
  } else if (key == "schedule.p") {
    schedule_p.clear();
    for (const auto& item : split_list(value)) {
      schedule_p.push_back(to_int(key, item));
    }
  } else if (key == "mode") {
    if (value == "non-private") mode = Mode::kNonPrivate;
    else if (value == "dvp") mode = Mode::kDvp;
    else fail(ErrorCode::kConfigError, "mode: unknown mode '" + value + "'");
  } else if (key == "alpha") {
    alpha.clear();
    for (const auto& item : split_list(value)) {
      alpha.push_back(to_double(key, item));
    }
  } else if (key == "iterations") {
    iterations = to_int(key, value);
  } else if (key == "hyper.c1") {
    hyper.c1 = to_double(key, value);
  } else if (key == "hyper.rho") {
    hyper.rho = to_double(key, value);
  } else if (key == "hyper.eta") {
    hyper.eta = to_double(key, value);
  } else if (key == "hyper.c2") {
    hyper.c2 = to_double(key, value);
  } else if (key == "solver.tol") {
    solver.tol = to_double(key, value);
  } else if (key == "solver.max_iters") {
    solver.max_iters = to_int(key, value);
  } else if (key == "seeds") {
    seeds = parse_seeds(value);
    seeds_explicit = true;
  } else if (key == "out_dir") {
    out_dir = value;
  } else {
    fail(ErrorCode::kConfigError, "unknown config key '" + key + "'");
  }
}

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
  ExperimentConfig cfg;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      fail(ErrorCode::kConfigError,
           "line " + std::to_string(line_no) + ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second) {
      fail(ErrorCode::kConfigError,
           "line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    cfg.set(key, value);
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIoError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

int ExperimentConfig::max_nodes() const {
  if (schedule_p.empty()) return nodes;
  return *std::max_element(schedule_p.begin(), schedule_p.end());
}

void ExperimentConfig::validate() const {
  if (iterations < 1) fail(ErrorCode::kConfigError, "iterations must be >= 1");
  if (nodes < 1) fail(ErrorCode::kConfigError, "nodes must be >= 1");
  if (!(hyper.c1 > 0.0)) fail(ErrorCode::kConfigError, "hyper.c1 must be > 0");
  if (!(hyper.rho > 0.0)) fail(ErrorCode::kConfigError, "hyper.rho must be > 0");
  if (!(hyper.eta > 0.0)) fail(ErrorCode::kConfigError, "hyper.eta must be > 0");
  if (!(hyper.c2 > 0.0)) fail(ErrorCode::kConfigError, "hyper.c2 must be > 0");
  if (!(solver.tol > 0.0)) fail(ErrorCode::kConfigError, "solver.tol must be > 0");
  if (solver.max_iters < 1) {
    fail(ErrorCode::kConfigError, "solver.max_iters must be >= 1");
  }
  if (seeds.empty()) fail(ErrorCode::kConfigError, "seeds must be nonempty");

  if (source == Source::kNslkdd && nslkdd_train_path.empty()) {
    fail(ErrorCode::kConfigError, "nslkdd.train_path is required");
  }
  if (source == Source::kMatrix && matrix_train_path.empty()) {
    fail(ErrorCode::kConfigError, "matrix.train_path is required");
  }
  if (source == Source::kSynthetic) {
    if (synth_train_n < 2 || synth_dim < 1) {
      fail(ErrorCode::kConfigError, "synthetic data needs n >= 2 and dim >= 1");
    }
    if (synth_test_n < 2) {
      fail(ErrorCode::kConfigError,
           "synthetic.test_n must cover both classes (>= 2)");
    }
  }
  bool needs_holdout =
      (source == Source::kNslkdd && nslkdd_test_path.empty()) ||
      (source == Source::kMatrix && matrix_test_path.empty());
  if (needs_holdout && !(test_fraction > 0.0 && test_fraction < 1.0)) {
    fail(ErrorCode::kConfigError, "test_fraction must be in (0, 1)");
  }

  if (!schedule_k.empty()) {
    int total = 0;
    for (int k : schedule_k) {
      if (k < 1) fail(ErrorCode::kConfigError, "schedule.k entries must be >= 1");
      total += k;
    }
    if (total != iterations) {
      fail(ErrorCode::kConfigError,
           "schedule durations sum to " + std::to_string(total) +
               " but iterations = " + std::to_string(iterations));
    }
    if (!schedule_p.empty() && schedule_p.size() != schedule_k.size()) {
      fail(ErrorCode::kConfigError,
           "schedule.p and schedule.k must have equal length");
    }
    for (int p : schedule_p) {
      if (p < 1) fail(ErrorCode::kConfigError, "schedule.p entries must be >= 1");
    }
  } else if (!schedule_p.empty()) {
    fail(ErrorCode::kConfigError, "schedule.p requires schedule.k");
  }

  if (mode == Mode::kDvp) {
    if (alpha.empty()) {
      fail(ErrorCode::kConfigError, "mode = dvp requires alpha");
    }
    if (alpha.size() != 1 &&
        alpha.size() != static_cast<size_t>(max_nodes())) {
      fail(ErrorCode::kConfigError,
           "alpha must be a scalar or give one value per node");
    }
    for (double a : alpha) {
      if (!(a > 0.0)) fail(ErrorCode::kConfigError, "alpha must be > 0");
    }
  }

  // The c1 <= n_v side condition can be checked up front for synthetic
  // sources; file-backed sources are checked once the data is loaded.
  if (source == Source::kSynthetic) {
    int min_nv = synth_train_n / max_nodes();
    if (hyper.c1 > static_cast<double>(min_nv)) {
      fail(ErrorCode::kConfigError,
           "hyper.c1 = " + std::to_string(hyper.c1) +
               " exceeds the per-node sample count " + std::to_string(min_nv));
    }
  }
}

namespace {

Topology make_topology(ExperimentConfig::TopoKind kind, int p,
                       double avg_degree, uint64_t seed) {
  switch (kind) {
    case ExperimentConfig::TopoKind::kPath:
      return Topology::path(p);
    case ExperimentConfig::TopoKind::kRing:
      return Topology::ring(p);
    case ExperimentConfig::TopoKind::kStar:
      return Topology::star(p);
    case ExperimentConfig::TopoKind::kComplete:
      return Topology::complete(p);
    case ExperimentConfig::TopoKind::kRandom:
    default:
      // Clamp the requested degree into the feasible band for small phases.
      if (p == 1) return Topology::complete(1);
      double lo = 2.0 * (p - 1) / p;
      double hi = static_cast<double>(p - 1);
      return Topology::random_connected(p, std::clamp(avg_degree, lo, hi),
                                        seed);
  }
}

TopologySchedule build_schedule(const ExperimentConfig& cfg, uint64_t seed) {
  std::vector<TopologyPhase> phases;
  if (cfg.schedule_k.empty()) {
    phases.push_back({make_topology(cfg.topology, cfg.nodes, cfg.avg_degree,
                                    derive_seed(seed, StreamKind::kTopology, 0)),
                      cfg.iterations});
  } else {
    for (size_t i = 0; i < cfg.schedule_k.size(); ++i) {
      int p = cfg.schedule_p.empty() ? cfg.nodes : cfg.schedule_p[i];
      phases.push_back(
          {make_topology(cfg.topology, p, cfg.avg_degree,
                         derive_seed(seed, StreamKind::kTopology, i + 1)),
           cfg.schedule_k[i]});
    }
  }
  return TopologySchedule(std::move(phases));
}

struct SeedData {
  std::vector<Sample> train;
  std::vector<Sample> test;
};

// Splits `all` into holdout test and train by a seeded shuffle.
SeedData holdout_split(const std::vector<Sample>& all, double test_fraction,
                       uint64_t seed) {
  std::vector<int> order(all.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(derive_seed(seed, StreamKind::kShuffle, 98));
  rng.shuffle(order);
  size_t n_test = static_cast<size_t>(
      std::llround(test_fraction * static_cast<double>(all.size())));
  n_test = std::clamp<size_t>(n_test, 1, all.size() - 1);
  SeedData out;
  for (size_t i = 0; i < order.size(); ++i) {
    (i < n_test ? out.test : out.train).push_back(all[order[i]]);
  }
  return out;
}

SeedData build_data(const ExperimentConfig& cfg, uint64_t seed,
                    const std::vector<RawRecord>* kdd_train,
                    const std::vector<RawRecord>* kdd_test,
                    const std::vector<Sample>* matrix_train,
                    const std::vector<Sample>* matrix_test) {
  SeedData out;
  switch (cfg.source) {
    case ExperimentConfig::Source::kSynthetic: {
      out.train = synthesize(cfg.synth_train_n, cfg.synth_dim,
                             cfg.synth_separation,
                             derive_seed(seed, StreamKind::kData, 1));
      out.test = synthesize(cfg.synth_test_n, cfg.synth_dim,
                            cfg.synth_separation,
                            derive_seed(seed, StreamKind::kData, 2));
      return out;
    }
    case ExperimentConfig::Source::kNslkdd: {
      std::vector<int> order(kdd_train->size());
      std::iota(order.begin(), order.end(), 0);
      Rng rng(derive_seed(seed, StreamKind::kShuffle, 99));
      rng.shuffle(order);
      size_t take = cfg.nslkdd_subsample > 0
                        ? std::min<size_t>(cfg.nslkdd_subsample, order.size())
                        : order.size();
      std::vector<RawRecord> subsample;
      subsample.reserve(take);
      for (size_t i = 0; i < take; ++i) {
        subsample.push_back((*kdd_train)[order[i]]);
      }

      const std::vector<int>* restrict_to =
          cfg.preprocess_features.empty() ? nullptr : &cfg.preprocess_features;
      if (kdd_test) {
        PreprocessSpec spec = fit_preprocess(subsample, restrict_to);
        out.train = apply_preprocess(spec, subsample);
        out.test = apply_preprocess(spec, *kdd_test);
      } else {
        size_t n_test = static_cast<size_t>(std::llround(
            cfg.test_fraction * static_cast<double>(subsample.size())));
        n_test = std::clamp<size_t>(n_test, 1, subsample.size() - 1);
        std::vector<RawRecord> test_records(subsample.begin(),
                                            subsample.begin() + n_test);
        std::vector<RawRecord> train_records(subsample.begin() + n_test,
                                             subsample.end());
        PreprocessSpec spec = fit_preprocess(train_records, restrict_to);
        out.train = apply_preprocess(spec, train_records);
        out.test = apply_preprocess(spec, test_records);
      }
      return out;
    }
    case ExperimentConfig::Source::kMatrix:
    default: {
      if (matrix_test) {
        out.train = *matrix_train;
        out.test = *matrix_test;
        return out;
      }
      return holdout_split(*matrix_train, cfg.test_fraction, seed);
    }
  }
}

double sample_std(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

void write_metrics_csv(const std::string& path, const Trajectory& traj,
                       const TopologySchedule& sched,
                       const std::map<int, const NodeDataset*>& data_by_id,
                       double c1, bool dvp) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kIoError, "cannot write " + path);
  out << "iter,node,empirical_risk,consensus_residual";
  if (dvp) out << ",alpha,phi,zeta,noise_norm";
  out << "\n";
  const int total = static_cast<int>(traj.snapshots.size()) - 1;
  for (int t = 0; t <= total; ++t) {
    const auto& snap = traj.snapshots[t];
    const Topology& topo = sched.topology_at(std::max(0, t - 1));
    std::map<int, Eigen::VectorXd> fs;
    for (const auto& [v, s] : snap) fs[v] = s.f;
    double residual = consensus_residual(fs, topo);
    for (const auto& [v, s] : snap) {
      out << t << "," << v << ","
          << format_double(empirical_risk(s.f, *data_by_id.at(v), c1)) << ","
          << format_double(residual);
      if (dvp) {
        if (t == 0) {
          out << ",,,,";
        } else {
          const auto& rec = traj.privacy[t - 1].at(v);
          out << "," << format_double(rec.alpha) << ","
              << format_double(rec.phi) << "," << format_double(rec.zeta)
              << "," << format_double(rec.noise_norm);
        }
      }
      out << "\n";
    }
  }
}

}  // namespace

std::string RunSummary::to_json() const {
  nlohmann::json j;
  j["mode"] = mode;
  j["per_seed"] = nlohmann::json::array();
  for (const auto& r : per_seed) {
    j["per_seed"].push_back({{"seed", r.seed},
                             {"final_er", r.final_er},
                             {"auc", r.auc},
                             {"fpr", r.fpr},
                             {"fnr", r.fnr},
                             {"wall_time_s", r.wall_time_s}});
  }
  j["aggregate"] = {{"mean_final_er", mean_final_er},
                    {"std_final_er", std_final_er},
                    {"mean_auc", mean_auc},
                    {"std_auc", std_auc},
                    {"mean_fpr", mean_fpr},
                    {"mean_fnr", mean_fnr}};
  return j.dump(2);
}

RunSummary run_experiment(const ExperimentConfig& cfg,
                          const std::string& out_dir_override) {
  cfg.validate();
  const std::string out_dir =
      out_dir_override.empty() ? cfg.out_dir : out_dir_override;
  std::filesystem::create_directories(out_dir);
  auto path_in = [&](const std::string& name) {
    return (std::filesystem::path(out_dir) / name).string();
  };

  // File-backed sources load once, outside the seed loop.
  std::vector<RawRecord> kdd_train, kdd_test;
  std::vector<Sample> matrix_train, matrix_test;
  if (cfg.source == ExperimentConfig::Source::kNslkdd) {
    kdd_train = load_nslkdd(cfg.nslkdd_train_path);
    if (!cfg.nslkdd_test_path.empty()) {
      kdd_test = load_nslkdd(cfg.nslkdd_test_path);
    }
  } else if (cfg.source == ExperimentConfig::Source::kMatrix) {
    matrix_train = read_matrix(cfg.matrix_train_path);
    if (!cfg.matrix_test_path.empty()) {
      matrix_test = read_matrix(cfg.matrix_test_path);
    }
  }

  RunSummary summary;
  summary.mode = cfg.mode == ExperimentConfig::Mode::kDvp ? "dvp" : "non-private";

  for (uint64_t seed : cfg.seeds) {
    auto t0 = std::chrono::steady_clock::now();
    SeedData data = build_data(
        cfg, seed,
        cfg.source == ExperimentConfig::Source::kNslkdd ? &kdd_train : nullptr,
        !kdd_test.empty() ? &kdd_test : nullptr,
        cfg.source == ExperimentConfig::Source::kMatrix ? &matrix_train
                                                        : nullptr,
        !matrix_test.empty() ? &matrix_test : nullptr);

    const int parts = cfg.max_nodes();
    std::vector<NodeDataset> node_data =
        cfg.label_skew_partition ? partition_label_skew(data.train, parts, seed)
                                 : partition(data.train, parts, seed);
    for (const auto& d : node_data) {
      if (cfg.hyper.c1 > static_cast<double>(d.size())) {
        fail(ErrorCode::kConfigError,
             "hyper.c1 = " + std::to_string(cfg.hyper.c1) +
                 " exceeds n_v = " + std::to_string(d.size()) + " at node " +
                 std::to_string(d.owner));
      }
    }

    TopologySchedule sched = build_schedule(cfg, seed);

    Trajectory traj;
    if (cfg.mode == ExperimentConfig::Mode::kDvp) {
      AlphaSchedule alpha =
          cfg.alpha.size() == 1
              ? AlphaSchedule::constant(cfg.alpha[0])
              : AlphaSchedule::from_fn([values = cfg.alpha](int node, int) {
                  return values[static_cast<size_t>(node)];
                });
      traj = run_private(sched, node_data, cfg.hyper, alpha, cfg.iterations,
                         seed, cfg.solver);
    } else {
      traj = run(sched, node_data, cfg.hyper, cfg.iterations, seed, cfg.solver);
    }
    double wall = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();

    std::map<int, const NodeDataset*> data_by_id;
    for (const auto& d : node_data) data_by_id[d.owner] = &d;

    const std::string tag = "seed" + std::to_string(seed);
    write_metrics_csv(path_in("metrics_" + tag + ".csv"), traj, sched,
                      data_by_id, cfg.hyper.c1,
                      cfg.mode == ExperimentConfig::Mode::kDvp);

    // Consensus classifier: the average of the final per-node classifiers.
    const auto& last = traj.snapshots.back();
    Eigen::VectorXd f_bar = Eigen::VectorXd::Zero(data.train[0].features.size());
    for (const auto& [v, s] : last) f_bar += s.f;
    f_bar /= static_cast<double>(last.size());

    double final_er = 0.0;
    for (const auto& [v, s] : last) {
      final_er += empirical_risk(s.f, *data_by_id.at(v), cfg.hyper.c1);
    }
    final_er /= static_cast<double>(last.size());

    std::vector<std::pair<double, int>> scores;
    scores.reserve(data.test.size());
    for (const auto& s : data.test) {
      scores.emplace_back(f_bar.dot(s.features), s.label);
    }
    {
      std::ofstream sf(path_in("scores_" + tag + ".csv"));
      if (!sf) fail(ErrorCode::kIoError, "cannot write scores file");
      sf << "score,label\n";
      for (const auto& [score, label] : scores) {
        sf << format_double(score) << "," << label << "\n";
      }
    }
    RocCurve curve = roc(scores);
    {
      std::ofstream rf(path_in("roc_" + tag + ".csv"));
      if (!rf) fail(ErrorCode::kIoError, "cannot write roc file");
      rf << "fpr,tpr\n";
      for (const auto& [x, y] : curve.points) {
        rf << format_double(x) << "," << format_double(y) << "\n";
      }
    }
    NodeDataset test_set{data.test, -1};
    auto [fpr, fnr] = confusion_at_zero(f_bar, test_set);

    summary.per_seed.push_back(
        {seed, final_er, curve.auc, fpr, fnr, wall});
  }

  std::vector<double> ers, aucs, fprs, fnrs;
  for (const auto& r : summary.per_seed) {
    ers.push_back(r.final_er);
    aucs.push_back(r.auc);
    fprs.push_back(r.fpr);
    fnrs.push_back(r.fnr);
  }
  auto mean = [](const std::vector<double>& xs) {
    return std::accumulate(xs.begin(), xs.end(), 0.0) /
           static_cast<double>(xs.size());
  };
  summary.mean_final_er = mean(ers);
  summary.std_final_er = sample_std(ers, summary.mean_final_er);
  summary.mean_auc = mean(aucs);
  summary.std_auc = sample_std(aucs, summary.mean_auc);
  summary.mean_fpr = mean(fprs);
  summary.mean_fnr = mean(fnrs);

  std::ofstream sj(path_in("summary.json"));
  if (!sj) fail(ErrorCode::kIoError, "cannot write summary.json");
  sj << summary.to_json() << "\n";
  return summary;
}

std::vector<SweepRow> sweep_alpha(const ExperimentConfig& cfg,
                                  const std::vector<double>& alphas,
                                  const std::string& out_dir) {
  if (alphas.empty()) fail(ErrorCode::kConfigError, "sweep needs >= 1 alpha");
  std::filesystem::create_directories(out_dir);

  std::vector<SweepRow> rows;
  for (double a : alphas) {
    ExperimentConfig sub = cfg;
    sub.mode = ExperimentConfig::Mode::kDvp;
    sub.alpha = {a};
    if (!sub.seeds_explicit) {
      // Tradeoff aggregates default to twenty seeds; single-curve trends
      // are too noisy to fit.
      sub.seeds.clear();
      for (uint64_t s = 0; s < 20; ++s) sub.seeds.push_back(s);
    }
    std::string sub_dir =
        (std::filesystem::path(out_dir) / ("alpha_" + format_double(a)))
            .string();
    RunSummary s = run_experiment(sub, sub_dir);
    rows.push_back({a, s.mean_final_er, s.std_final_er, s.mean_auc, s.std_auc});
  }

  std::ofstream out(
      (std::filesystem::path(out_dir) / "sweep.csv").string());
  if (!out) fail(ErrorCode::kIoError, "cannot write sweep.csv");
  out << "alpha,mean_final_er,std_final_er,mean_auc,std_auc\n";
  for (const auto& r : rows) {
    out << format_double(r.alpha) << "," << format_double(r.mean_final_er)
        << "," << format_double(r.std_final_er) << ","
        << format_double(r.mean_auc) << "," << format_double(r.std_auc)
        << "\n";
  }
  return rows;
}

}  // namespace dpadmm
