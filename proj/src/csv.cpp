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

#include "csv.hpp"

#include <cstdio>
#include <fstream>

#include "error.hpp"

namespace dpadmm {

namespace {

std::vector<std::string> split_line(const std::string& line) {
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

bool parse_number(const std::string& s, double& out) {
  try {
    size_t pos = 0;
    out = std::stod(s, &pos);
    return pos == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

double require_number(const std::string& s, int line_no) {
  double v;
  if (!parse_number(s, v)) {
    fail(ErrorCode::kParseError,
         "line " + std::to_string(line_no) + ": not a number: '" + s + "'");
  }
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string format_double_exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIoError, "cannot open " + path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    rows.push_back(split_line(line));
  }
  return rows;
}

std::vector<std::pair<double, double>> read_alpha_risk_csv(
    const std::string& path) {
  auto rows = read_csv(path);
  if (rows.empty()) fail(ErrorCode::kEmptyInput, "empty sweep table " + path);

  size_t alpha_col = 0, risk_col = 1;
  size_t first_data = 0;
  double ignored;
  if (!parse_number(rows[0][0], ignored)) {
    first_data = 1;
    for (size_t c = 0; c < rows[0].size(); ++c) {
      if (rows[0][c] == "alpha") alpha_col = c;
      if (rows[0][c] == "mean_final_er") risk_col = c;
    }
  }
  std::vector<std::pair<double, double>> out;
  for (size_t i = first_data; i < rows.size(); ++i) {
    if (rows[i].size() <= std::max(alpha_col, risk_col)) {
      fail(ErrorCode::kSchemaError,
           "line " + std::to_string(i + 1) + ": too few columns");
    }
    out.emplace_back(require_number(rows[i][alpha_col], static_cast<int>(i + 1)),
                     require_number(rows[i][risk_col], static_cast<int>(i + 1)));
  }
  if (out.empty()) fail(ErrorCode::kEmptyInput, "no data rows in " + path);
  return out;
}

std::vector<std::pair<double, int>> read_scores_csv(const std::string& path) {
  auto rows = read_csv(path);
  if (rows.empty()) fail(ErrorCode::kEmptyInput, "empty scores file " + path);
  std::vector<std::pair<double, int>> out;
  double ignored;
  size_t first_data = parse_number(rows[0][0], ignored) ? 0 : 1;
  for (size_t i = first_data; i < rows.size(); ++i) {
    if (rows[i].size() < 2) {
      fail(ErrorCode::kSchemaError,
           "line " + std::to_string(i + 1) + ": expected score,label");
    }
    double score = require_number(rows[i][0], static_cast<int>(i + 1));
    double label = require_number(rows[i][1], static_cast<int>(i + 1));
    if (label != 1.0 && label != -1.0) {
      fail(ErrorCode::kParseError,
           "line " + std::to_string(i + 1) + ": label must be -1 or 1");
    }
    out.emplace_back(score, static_cast<int>(label));
  }
  if (out.empty()) fail(ErrorCode::kEmptyInput, "no data rows in " + path);
  return out;
}

void write_matrix(const std::string& path, const std::vector<Sample>& samples) {
  if (samples.empty()) fail(ErrorCode::kEmptyInput, "nothing to write");
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kIoError, "cannot write " + path);
  const int d = static_cast<int>(samples[0].features.size());
  for (int k = 0; k < d; ++k) out << "f" << k << ",";
  out << "label\n";
  for (const auto& s : samples) {
    for (int k = 0; k < d; ++k) out << format_double_exact(s.features[k]) << ",";
    out << s.label << "\n";
  }
}

std::vector<Sample> read_matrix(const std::string& path) {
  auto rows = read_csv(path);
  if (rows.size() < 2) {
    fail(ErrorCode::kSchemaError, "matrix file needs a header and data rows");
  }
  const size_t cols = rows[0].size();
  if (cols < 2) fail(ErrorCode::kSchemaError, "matrix file needs >= 2 columns");
  std::vector<Sample> samples;
  samples.reserve(rows.size() - 1);
  for (size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      fail(ErrorCode::kSchemaError,
           "line " + std::to_string(i + 1) + ": expected " +
               std::to_string(cols) + " columns, got " +
               std::to_string(rows[i].size()));
    }
    Sample s;
    s.features.resize(static_cast<int>(cols - 1));
    for (size_t c = 0; c + 1 < cols; ++c) {
      s.features[static_cast<int>(c)] =
          require_number(rows[i][c], static_cast<int>(i + 1));
    }
    double label = require_number(rows[i][cols - 1], static_cast<int>(i + 1));
    if (label != 1.0 && label != -1.0) {
      fail(ErrorCode::kParseError,
           "line " + std::to_string(i + 1) + ": label must be -1 or 1");
    }
    s.label = static_cast<int>(label);
    double norm = s.features.norm();
    if (norm > 1.0) s.features /= norm;
    samples.push_back(std::move(s));
  }
  return samples;
}

}  // namespace dpadmm
