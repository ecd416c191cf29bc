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


#pragma once

// Plain-text matrix files. One row per line, comma separated, no header.
// The token NaN marks an unobserved cell in masked files.

#include "racos/linalg.hpp"
#include "racos/synth.hpp"

#include <json.hpp>

#include <filesystem>

namespace racos {

/// Fully observed matrix. NaN cells are rejected with their coordinates.
Matrix read_matrix_csv(const std::filesystem::path& path);

/// Matrix with NaN marking unobserved cells.
MaskedMatrix read_masked_csv(const std::filesystem::path& path);

void write_matrix_csv(const std::filesystem::path& path, const Matrix& m);
void write_masked_csv(const std::filesystem::path& path, const MaskedMatrix& m);

nlohmann::json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

nlohmann::json to_json(const ProblemMeta& meta);

/// Sidecar name for a matrix file: M.csv -> M.meta.json.
std::filesystem::path meta_sidecar(const std::filesystem::path& matrix_path);

}  // namespace racos
