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

#include "qcrit_app/checkpoint.hpp"

#include <bit>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qcrit::app {
namespace {

using nlohmann::json;

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

json matrix_rows(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd read_rows(const json& rows, Eigen::Index n_rows, Eigen::Index n_cols,
                          const std::string& what) {
  if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != n_rows) {
    throw CheckpointError("checkpoint: " + what + " must have " + std::to_string(n_rows) + " rows");
  }
  Eigen::MatrixXd m(n_rows, n_cols);
  for (Eigen::Index r = 0; r < n_rows; ++r) {
    const json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n_cols) {
      throw CheckpointError("checkpoint: " + what + " rows must have " + std::to_string(n_cols) +
                            " entries");
    }
    for (Eigen::Index c = 0; c < n_cols; ++c) m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
  }
  return m;
}

}  // namespace

std::string model_fingerprint(int n_sites, double coupling_j, int blocks_p) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "N=%d;J=%016llx;p=%d", n_sites,
                static_cast<unsigned long long>(std::bit_cast<std::uint64_t>(coupling_j)), blocks_p);
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a(buf)));
  return hex;
}

Checkpoint::Checkpoint(int n_sites, double coupling_j, int blocks_p)
    : n_sites_(n_sites), coupling_j_(coupling_j), blocks_p_(blocks_p) {}

void Checkpoint::put(const ThermalSolution& solution) {
  if (solution.model.n_sites != n_sites_ || solution.blocks_p != blocks_p_ ||
      solution.model.coupling_j != coupling_j_) {
    throw CheckpointError("checkpoint: solution does not match the checkpoint's (N, J, p)");
  }
  ThermalSolution stored = solution;
  stored.trace.clear();
  cells_.insert_or_assign({solution.model.field_lambda, solution.temperature}, std::move(stored));
}

std::optional<ThermalSolution> Checkpoint::find(double lambda, double temperature) const {
  const auto it = cells_.find({lambda, temperature});
  if (it == cells_.end()) return std::nullopt;
  return it->second;
}

std::string Checkpoint::to_json() const {
  json doc;
  doc["format_version"] = kCheckpointFormatVersion;
  doc["fingerprint"] = fingerprint();
  doc["model"] = {{"n_sites", n_sites_}, {"coupling_j", coupling_j_}};
  doc["blocks_p"] = blocks_p_;
  json cells = json::array();
  for (const auto& [key, s] : cells_) {
    json params;
    params["theta"] = std::vector<double>(s.params.theta().begin(), s.params.theta().end());
    params["alpha"] = matrix_rows(s.params.alpha());
    params["eta"] = matrix_rows(s.params.eta());
    cells.push_back({{"lambda", key.first},
                     {"temperature", key.second},
                     {"seed", s.seed},
                     {"warm_started", s.warm_started},
                     {"params", std::move(params)},
                     {"free_energy", s.free_energy},
                     {"energy", s.energy},
                     {"entropy", s.entropy},
                     {"grad_norm", s.grad_norm},
                     {"iterations", s.iterations},
                     {"evaluations", s.evaluations},
                     {"converged", s.converged},
                     {"stop_reason", s.stop_reason}});
  }
  doc["cells"] = std::move(cells);
  return doc.dump(1);
}

Checkpoint Checkpoint::from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw CheckpointError(std::string("checkpoint: ") + e.what());
  }
  try {
    const int version = doc.at("format_version").get<int>();
    if (version != kCheckpointFormatVersion) {
      throw CheckpointError("checkpoint: unsupported format_version " + std::to_string(version));
    }
    Checkpoint ck(doc.at("model").at("n_sites").get<int>(), doc.at("model").at("coupling_j").get<double>(),
                  doc.at("blocks_p").get<int>());
    if (doc.at("fingerprint").get<std::string>() != ck.fingerprint()) {
      throw CheckpointError("checkpoint: fingerprint does not match its model block");
    }
    const int n = ck.n_sites_;
    const int p = ck.blocks_p_;
    for (const json& cell : doc.at("cells")) {
      ThermalSolution s;
      s.model = ModelParams{n, ck.coupling_j_, cell.at("lambda").get<double>()};
      s.temperature = cell.at("temperature").get<double>();
      s.blocks_p = p;
      s.seed = cell.at("seed").get<std::uint64_t>();
      s.warm_started = cell.at("warm_started").get<bool>();
      const json& params = cell.at("params");
      const auto theta = params.at("theta").get<std::vector<double>>();
      if (static_cast<int>(theta.size()) != n) {
        throw CheckpointError("checkpoint: theta must have " + std::to_string(n) + " entries");
      }
      s.params = AnsatzParams(Eigen::Map<const RealVector>(theta.data(), n),
                              read_rows(params.at("alpha"), p, n, "alpha"),
                              read_rows(params.at("eta"), p, n, "eta"));
      s.free_energy = cell.at("free_energy").get<double>();
      s.energy = cell.at("energy").get<double>();
      s.entropy = cell.at("entropy").get<double>();
      s.grad_norm = cell.at("grad_norm").get<double>();
      s.iterations = cell.at("iterations").get<int>();
      s.evaluations = cell.at("evaluations").get<int>();
      s.converged = cell.at("converged").get<bool>();
      s.stop_reason = cell.at("stop_reason").get<std::string>();
      ck.put(s);
    }
    return ck;
  } catch (const json::exception& e) {
    throw CheckpointError(std::string("checkpoint: ") + e.what());
  }
}

void Checkpoint::save(const std::filesystem::path& path) const {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CheckpointError("checkpoint: cannot write " + tmp.string());
    out << to_json() << '\n';
  }
  std::filesystem::rename(tmp, path);
}

Checkpoint Checkpoint::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("checkpoint: cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return from_json(text.str());
}

}  // namespace qcrit::app
