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

#include "dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "error.hpp"
#include "rng.hpp"

namespace dpadmm {
namespace {

bool is_symbolic_column(int col) {
  for (int c : kNslkddSymbolicColumns) {
    if (c == col) return true;
  }
  return false;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, int line_no, int col) {
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(ErrorCode::kParseError,
         "line " + std::to_string(line_no) + ": column " +
             std::to_string(col) + " is not numeric: '" + s + "'");
  }
}

}  // namespace

std::vector<RawRecord> load_nslkdd(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIoError, "cannot open " + path);

  std::vector<RawRecord> records;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != kNslkddAttributes + 1 &&
        fields.size() != kNslkddAttributes + 2) {
      fail(ErrorCode::kSchemaError,
           "line " + std::to_string(line_no) + ": expected " +
               std::to_string(kNslkddAttributes + 1) + " or " +
               std::to_string(kNslkddAttributes + 2) + " fields, got " +
               std::to_string(fields.size()));
    }
    RawRecord rec;
    rec.fields.assign(fields.begin(), fields.begin() + kNslkddAttributes);
    for (int c = 0; c < kNslkddAttributes; ++c) {
      if (!is_symbolic_column(c)) parse_double(rec.fields[c], line_no, c);
    }
    rec.label_text = fields[kNslkddAttributes];
    // KDD'99-style labels carry a trailing period.
    if (!rec.label_text.empty() && rec.label_text.back() == '.') {
      rec.label_text.pop_back();
    }
    rec.label = (rec.label_text == "normal") ? -1 : +1;
    records.push_back(std::move(rec));
  }
  if (records.empty()) fail(ErrorCode::kSchemaError, "empty file: " + path);
  return records;
}

int PreprocessSpec::output_dim() const {
  int d = static_cast<int>(continuous_columns.size());
  for (const auto& [col, values] : vocab) d += static_cast<int>(values.size());
  return d;
}

std::string PreprocessSpec::to_json() const {
  nlohmann::json j;
  for (const auto& [col, values] : vocab) j["vocab"][std::to_string(col)] = values;
  j["continuous_columns"] = continuous_columns;
  for (const auto& [col, mm] : min_max) {
    j["min_max"][std::to_string(col)] = {mm.first, mm.second};
  }
  return j.dump(2);
}

PreprocessSpec PreprocessSpec::from_json(const std::string& text) {
  PreprocessSpec spec;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    if (j.contains("vocab")) {
      for (auto& [key, values] : j["vocab"].items()) {
        auto v = values.get<std::vector<std::string>>();
        std::sort(v.begin(), v.end());  // lookups binary-search the vocabulary
        spec.vocab[std::stoi(key)] = std::move(v);
      }
    }
    spec.continuous_columns = j.at("continuous_columns").get<std::vector<int>>();
    for (auto& [key, mm] : j.at("min_max").items()) {
      spec.min_max[std::stoi(key)] = {mm[0].get<double>(), mm[1].get<double>()};
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParseError, std::string("bad preprocess spec: ") + e.what());
  }
  return spec;
}

void PreprocessSpec::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kIoError, "cannot write " + path);
  out << to_json() << "\n";
}

PreprocessSpec PreprocessSpec::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIoError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

PreprocessSpec fit_preprocess(const std::vector<RawRecord>& records,
                              const std::vector<int>* restrict_to) {
  if (records.empty()) fail(ErrorCode::kEmptyInput, "no records to fit on");

  std::set<int> allowed;
  if (restrict_to) allowed.insert(restrict_to->begin(), restrict_to->end());
  auto column_allowed = [&](int c) { return !restrict_to || allowed.count(c); };

  PreprocessSpec spec;
  for (int c = 0; c < kNslkddAttributes; ++c) {
    if (!column_allowed(c)) continue;
    if (is_symbolic_column(c)) {
      std::set<std::string> values;
      for (const auto& r : records) values.insert(r.fields[c]);
      // A single-category column is constant after encoding; drop it.
      if (values.size() > 1) {
        spec.vocab[c] = std::vector<std::string>(values.begin(), values.end());
      }
    } else {
      double lo = std::numeric_limits<double>::infinity();
      double hi = -std::numeric_limits<double>::infinity();
      int row = 0;
      for (const auto& r : records) {
        double v = parse_double(r.fields[c], ++row, c);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      if (lo < hi) {
        spec.continuous_columns.push_back(c);
        spec.min_max[c] = {lo, hi};
      }
    }
  }
  if (spec.output_dim() == 0) {
    fail(ErrorCode::kEmptyInput, "no usable columns after fitting");
  }
  return spec;
}

std::vector<Sample> apply_preprocess(const PreprocessSpec& spec,
                                     const std::vector<RawRecord>& records,
                                     long* unknown_categories) {
  const int d = spec.output_dim();
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));
  long unknown = 0;

  std::vector<Sample> samples;
  samples.reserve(records.size());
  for (const auto& r : records) {
    if (static_cast<int>(r.fields.size()) != kNslkddAttributes) {
      fail(ErrorCode::kSchemaError, "record has wrong number of fields");
    }
    Eigen::VectorXd x(d);
    int k = 0;
    for (int c = 0; c < kNslkddAttributes; ++c) {
      auto vit = spec.vocab.find(c);
      if (vit != spec.vocab.end()) {
        const auto& values = vit->second;
        auto pos = std::lower_bound(values.begin(), values.end(), r.fields[c]);
        for (size_t i = 0; i < values.size(); ++i) x[k + static_cast<int>(i)] = 0.0;
        if (pos != values.end() && *pos == r.fields[c]) {
          x[k + static_cast<int>(pos - values.begin())] = 1.0;
        } else {
          ++unknown;
        }
        k += static_cast<int>(values.size());
      } else {
        auto mit = spec.min_max.find(c);
        if (mit == spec.min_max.end()) continue;  // dropped column
        double v = parse_double(r.fields[c], static_cast<int>(&r - records.data()) + 1, c);
        double scaled = (v - mit->second.first) /
                        (mit->second.second - mit->second.first);
        x[k++] = std::clamp(scaled, 0.0, 1.0);
      }
    }
    x *= inv_sqrt_d;
    samples.push_back(Sample{std::move(x), r.label});
  }
  if (unknown_categories) *unknown_categories = unknown;
  return samples;
}

namespace {

std::vector<NodeDataset> contiguous_split(const std::vector<Sample>& data,
                                          const std::vector<int>& order,
                                          int parts) {
  const int n = static_cast<int>(data.size());
  const int base = n / parts;
  const int remainder = n % parts;
  std::vector<NodeDataset> out(parts);
  int at = 0;
  for (int p = 0; p < parts; ++p) {
    int take = base + (p < remainder ? 1 : 0);
    out[p].owner = p;
    out[p].samples.reserve(take);
    for (int i = 0; i < take; ++i) out[p].samples.push_back(data[order[at++]]);
  }
  return out;
}

void check_partition_args(const std::vector<Sample>& data, int parts) {
  if (parts < 1) fail(ErrorCode::kTooFewSamples, "parts must be >= 1");
  if (static_cast<int>(data.size()) < parts) {
    fail(ErrorCode::kTooFewSamples,
         std::to_string(data.size()) + " samples cannot cover " +
             std::to_string(parts) + " nodes");
  }
}

}  // namespace

std::vector<NodeDataset> partition(const std::vector<Sample>& data, int parts,
                                   uint64_t seed) {
  check_partition_args(data, parts);
  std::vector<int> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(derive_seed(seed, StreamKind::kShuffle));
  rng.shuffle(order);
  return contiguous_split(data, order, parts);
}

std::vector<NodeDataset> partition_label_skew(const std::vector<Sample>& data,
                                              int parts, uint64_t seed) {
  check_partition_args(data, parts);
  std::vector<int> attacks, normals;
  for (size_t i = 0; i < data.size(); ++i) {
    (data[i].label == 1 ? attacks : normals).push_back(static_cast<int>(i));
  }
  Rng rng(derive_seed(seed, StreamKind::kShuffle, 1));
  rng.shuffle(attacks);
  rng.shuffle(normals);
  std::vector<int> order = std::move(attacks);
  order.insert(order.end(), normals.begin(), normals.end());
  return contiguous_split(data, order, parts);
}

std::pair<NodeDataset, NodeDataset> split_by_label(const NodeDataset& d) {
  NodeDataset attack{{}, d.owner}, normal{{}, d.owner};
  for (const auto& s : d.samples) {
    (s.label == 1 ? attack : normal).samples.push_back(s);
  }
  return {attack, normal};
}

std::vector<Sample> synthesize(int n, int dim, double separation,
                               uint64_t seed) {
  Rng rng(derive_seed(seed, StreamKind::kData));
  std::vector<Sample> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    int label = (i % 2 == 0) ? +1 : -1;
    Eigen::VectorXd x(dim);
    for (int k = 0; k < dim; ++k) x[k] = rng.normal();
    x[0] += label * separation / 2.0;
    double norm = x.norm();
    if (norm > 1.0) x /= norm;
    out.push_back(Sample{std::move(x), label});
  }
  return out;
}

}  // namespace dpadmm
