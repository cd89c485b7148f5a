#pragma once

#include <string>
#include <vector>

#include "grad_engine.hpp"
#include "pipeline.hpp"
#include "sat_pool.hpp"
#include "unsat_cubes.hpp"

namespace galoissat {

inline constexpr const char* kTrainArtifactFormat = "galoissat-train/1";

/// JSON document with theta_sel, per-batch losses and the config used.
std::string train_artifact_json(const TrainResult& result, const TrainConfig& cfg);

/// Inverse of train_artifact_json; only the fields needed downstream are
/// restored. Throws std::runtime_error on schema violations.
TrainResult parse_train_artifact(const std::string& text, TrainConfig* cfg = nullptr);

struct PoolFile {
  std::size_t candidate;  // 1-based
  std::string file;
  std::vector<Literal> units;
  std::vector<double> confidence;
};

std::string pool_manifest_json(const std::string& source, std::size_t selection_size,
                               const std::vector<PoolFile>& files);

struct CubeFile {
  std::uint32_t alpha;
  std::string file;
  std::vector<Literal> assumptions;
};

std::string cube_manifest_json(const std::string& source, std::span<const Var> vars,
                               const std::vector<CubeFile>& files);

/// Per-job log of a pipeline run.
std::string run_log_json(const PipelineResult& result, const std::string& instance);

}  // namespace galoissat
