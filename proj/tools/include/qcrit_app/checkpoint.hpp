// Copyright 2026 The qcrit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "qcrit/gibbs_vqa.hpp"

namespace qcrit::app {

inline constexpr int kCheckpointFormatVersion = 1;

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Hex FNV-1a of (N, J, p). Lambda and T are per cell, so one checkpoint
/// covers a whole grid.
std::string model_fingerprint(int n_sites, double coupling_j, int blocks_p);

class Checkpoint {
 public:
  Checkpoint(int n_sites, double coupling_j, int blocks_p);

  int n_sites() const { return n_sites_; }
  double coupling_j() const { return coupling_j_; }
  int blocks_p() const { return blocks_p_; }
  std::string fingerprint() const { return model_fingerprint(n_sites_, coupling_j_, blocks_p_); }

  /// Replaces any cell with the same (lambda, T).
  void put(const ThermalSolution& solution);
  std::optional<ThermalSolution> find(double lambda, double temperature) const;
  std::size_t size() const { return cells_.size(); }
  const std::map<std::pair<double, double>, ThermalSolution>& cells() const { return cells_; }

  std::string to_json() const;
  static Checkpoint from_json(const std::string& text);

  void save(const std::filesystem::path& path) const;
  static Checkpoint load(const std::filesystem::path& path);

 private:
  int n_sites_;
  double coupling_j_;
  int blocks_p_;
  std::map<std::pair<double, double>, ThermalSolution> cells_;
};

}  // namespace qcrit::app
