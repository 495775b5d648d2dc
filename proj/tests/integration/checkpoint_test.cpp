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

#include <gtest/gtest.h>

#include <filesystem>

#include "json.hpp"

namespace qcrit::app {
namespace {

namespace fs = std::filesystem;

std::vector<ThermalSolution> sample_chain() {
  SolverOptions options;
  options.blocks_p = 2;
  const std::vector<double> temps{1.0, 0.5};
  return anneal_schedule({3, 1.0, 0.9}, temps, 77, options);
}

TEST(Checkpoint, RoundTripReproducesFreeEnergy) {
  Checkpoint cp(3, 1.0, 2);
  for (const ThermalSolution& s : sample_chain()) cp.put(s);
  const fs::path path = fs::temp_directory_path() / "qcrit_checkpoint_roundtrip.json";
  cp.save(path);
  const Checkpoint loaded = Checkpoint::load(path);
  fs::remove(path);
  ASSERT_EQ(loaded.size(), 2u);
  for (const auto& [key, s] : loaded.cells()) {
    const FreeEnergyValue v = free_energy(s.params, build_kitaev_ring(s.model), s.temperature);
    EXPECT_NEAR(v.free_energy, s.free_energy, 1e-10);
    const std::optional<ThermalSolution> orig = cp.find(key.first, key.second);
    ASSERT_TRUE(orig.has_value());
    EXPECT_EQ(orig->params.flatten(), s.params.flatten());
    EXPECT_EQ(orig->converged, s.converged);
    EXPECT_EQ(orig->iterations, s.iterations);
  }
}

TEST(Checkpoint, DocumentIsSelfDescribing) {
  Checkpoint cp(3, 1.0, 2);
  const nlohmann::json doc = nlohmann::json::parse(cp.to_json());
  EXPECT_EQ(doc.at("format_version").get<int>(), kCheckpointFormatVersion);
  EXPECT_EQ(doc.at("fingerprint").get<std::string>(), model_fingerprint(3, 1.0, 2));
}

TEST(Checkpoint, RejectsTamperedOrForeignDocuments) {
  Checkpoint cp(3, 1.0, 2);
  nlohmann::json doc = nlohmann::json::parse(cp.to_json());
  doc["format_version"] = 99;
  EXPECT_THROW(Checkpoint::from_json(doc.dump()), CheckpointError);
  doc = nlohmann::json::parse(cp.to_json());
  doc["fingerprint"] = "0000";
  EXPECT_THROW(Checkpoint::from_json(doc.dump()), CheckpointError);
  EXPECT_THROW(Checkpoint::from_json("{not json"), CheckpointError);
  EXPECT_THROW(Checkpoint::load("/nonexistent/qcrit.json"), CheckpointError);
}

TEST(Checkpoint, PutRejectsOtherModels) {
  Checkpoint cp(4, 1.0, 2);
  EXPECT_THROW(cp.put(sample_chain().front()), CheckpointError);
}

TEST(Checkpoint, FingerprintSeparatesModels) {
  EXPECT_NE(model_fingerprint(3, 1.0, 2), model_fingerprint(3, 1.0, 3));
  EXPECT_NE(model_fingerprint(3, 1.0, 2), model_fingerprint(4, 1.0, 2));
  EXPECT_NE(model_fingerprint(3, 1.0, 2), model_fingerprint(3, 0.5, 2));
}

}  // namespace
}  // namespace qcrit::app
