// Copyright 2026 The racos Authors.
//
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


#include "racos/matrix_io.hpp"

#include "racos/error.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace racos {
namespace {

struct RawTable {
  Index rows = 0;
  Index cols = 0;
  std::vector<double> values;  // row-major
};

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string where(const std::filesystem::path& path, Index row, Index col) {
  std::ostringstream os;
  os << path.string() << ": row " << row + 1 << ", column " << col + 1;
  return os.str();
}

RawTable parse_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
  RawTable t;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    Index col = 0;
    while (std::getline(ss, cell, ',')) {
      const std::string tok = trim(cell);
      double v = 0.0;
      if (tok == "NaN" || tok == "nan" || tok == "NAN") {
        v = std::nan("");
      } else {
        if (tok.empty()) fail(ErrorKind::Io, where(path, t.rows, col) + ": empty cell");
        char* end = nullptr;
        errno = 0;
        v = std::strtod(tok.c_str(), &end);
        if (end != tok.c_str() + tok.size() || errno == ERANGE || !std::isfinite(v))
          fail(ErrorKind::Io, where(path, t.rows, col) + ": cannot parse '" + tok + "'");
      }
      t.values.push_back(v);
      ++col;
    }
    if (!line.empty() && trim(line).back() == ',')
      fail(ErrorKind::Io, where(path, t.rows, col) + ": empty cell");
    if (t.rows == 0) {
      t.cols = col;
    } else if (col != t.cols) {
      std::ostringstream os;
      os << path.string() << ": row " << t.rows + 1 << " has " << col << " columns, expected "
         << t.cols;
      fail(ErrorKind::Io, os.str());
    }
    ++t.rows;
  }
  if (t.rows == 0 || t.cols == 0) fail(ErrorKind::Io, path.string() + ": no data");
  return t;
}

void write_cells(const std::filesystem::path& path, const Matrix& m, const ObservationMask* mask) {
  std::FILE* f = std::fopen(path.string().c_str(), "w");
  if (!f) fail(ErrorKind::Io, "cannot write " + path.string());
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) std::fputc(',', f);
      if (mask && !mask->cells()(i, j)) {
        std::fputs("NaN", f);
      } else {
        std::fprintf(f, "%.17g", m(i, j));
      }
    }
    std::fputc('\n', f);
  }
  if (std::fclose(f) != 0) fail(ErrorKind::Io, "error closing " + path.string());
}

}  // namespace

Matrix read_matrix_csv(const std::filesystem::path& path) {
  const RawTable t = parse_table(path);
  Matrix m(t.rows, t.cols);
  for (Index i = 0; i < t.rows; ++i) {
    for (Index j = 0; j < t.cols; ++j) {
      const double v = t.values[static_cast<std::size_t>(i * t.cols + j)];
      if (std::isnan(v)) fail(ErrorKind::Io, where(path, i, j) + ": unobserved cell in a complete matrix");
      m(i, j) = v;
    }
  }
  return m;
}

MaskedMatrix read_masked_csv(const std::filesystem::path& path) {
  const RawTable t = parse_table(path);
  Matrix values = Matrix::Zero(t.rows, t.cols);
  ObservationMask mask(t.rows, t.cols, false);
  for (Index i = 0; i < t.rows; ++i) {
    for (Index j = 0; j < t.cols; ++j) {
      const double v = t.values[static_cast<std::size_t>(i * t.cols + j)];
      if (!std::isnan(v)) {
        values(i, j) = v;
        mask.set(i, j, true);
      }
    }
  }
  return MaskedMatrix{std::move(values), std::move(mask)};
}

void write_matrix_csv(const std::filesystem::path& path, const Matrix& m) {
  write_cells(path, m, nullptr);
}

void write_masked_csv(const std::filesystem::path& path, const MaskedMatrix& m) {
  write_cells(path, m.values, &m.mask);
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Io, path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Io, "cannot write " + path.string());
  out << doc.dump(2) << '\n';
  if (!out) fail(ErrorKind::Io, "error writing " + path.string());
}

nlohmann::json to_json(const ProblemMeta& meta) {
  nlohmann::json j;
  j["r"] = meta.r;
  j["k"] = meta.k;
  j["n_l"] = meta.n_l;
  j["mu_v"] = meta.mu_v;
  j["mu_u"] = meta.mu_u;
  j["sigma_r_l"] = meta.sigma_r_l;
  j["eta_n"] = meta.eta_n;
  j["noise_kind"] = meta.noise_kind;
  j["noise_level"] = meta.noise_level;
  j["p"] = meta.p ? nlohmann::json(*meta.p) : nlohmann::json(nullptr);
  j["seed"] = {{"base", meta.seed.base}, {"stream", meta.seed.stream}};
  return j;
}

std::filesystem::path meta_sidecar(const std::filesystem::path& matrix_path) {
  std::filesystem::path out = matrix_path;
  out.replace_extension(".meta.json");
  return out;
}

}  // namespace racos
