#include "artifacts.hpp"

#include <json.hpp>

namespace galoissat {

using nlohmann::ordered_json;

namespace {

ordered_json literals_json(std::span<const Literal> lits) {
  auto a = ordered_json::array();
  for (Literal l : lits) a.push_back(l.to_dimacs());
  return a;
}

}  // namespace

std::string train_artifact_json(const TrainResult& r, const TrainConfig& cfg) {
  ordered_json j;
  j["format"] = kTrainArtifactFormat;
  j["original_vars"] = r.original_vars;
  j["total_vars"] = r.total_vars;
  j["selected_batch"] = r.selected_batch;
  j["epochs_run"] = r.epochs_run;
  ordered_json c;
  c["batch"] = cfg.batch_size;
  c["epochs"] = cfg.epochs;
  c["lr"] = cfg.learning_rate;
  c["tau"] = cfg.temperature;
  c["k"] = cfg.clause_width;
  c["seed"] = cfg.seed;
  c["batch_select"] = cfg.batch_select == BatchSelect::MinLoss ? "min_loss" : "max_loss";
  c["adam_beta1"] = cfg.adam_beta1;
  c["adam_beta2"] = cfg.adam_beta2;
  c["adam_eps"] = cfg.adam_eps;
  j["config"] = c;
  auto theta = ordered_json::array();
  for (const auto& row : r.theta_sel) theta.push_back({row[0], row[1]});
  j["theta_sel"] = std::move(theta);
  j["per_batch_losses"] = r.per_batch_losses;
  return j.dump(2) + "\n";
}

TrainResult parse_train_artifact(const std::string& text, TrainConfig* cfg) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("train artifact is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != kTrainArtifactFormat)
      throw std::runtime_error("unsupported train artifact format");
    TrainResult r;
    r.original_vars = j.at("original_vars").get<Var>();
    r.total_vars = j.at("total_vars").get<Var>();
    r.selected_batch = j.at("selected_batch").get<std::size_t>();
    r.epochs_run = j.value("epochs_run", 0u);
    for (const auto& row : j.at("theta_sel")) {
      if (row.size() != 2) throw std::runtime_error("theta_sel rows must have two entries");
      r.theta_sel.push_back({row[0].get<double>(), row[1].get<double>()});
    }
    r.per_batch_losses = j.at("per_batch_losses").get<std::vector<double>>();
    if (r.theta_sel.size() != r.total_vars || r.original_vars > r.total_vars)
      throw std::runtime_error("theta_sel shape does not match declared variable counts");
    if (cfg) {
      const auto& c = j.at("config");
      cfg->batch_size = c.at("batch").get<std::size_t>();
      cfg->epochs = c.at("epochs").get<unsigned>();
      cfg->learning_rate = c.at("lr").get<double>();
      cfg->temperature = c.at("tau").get<double>();
      cfg->clause_width = c.at("k").get<unsigned>();
      cfg->seed = c.at("seed").get<std::uint64_t>();
      cfg->batch_select =
          c.at("batch_select").get<std::string>() == "max_loss" ? BatchSelect::MaxLoss
                                                                : BatchSelect::MinLoss;
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed train artifact: ") + e.what());
  }
}

std::string pool_manifest_json(const std::string& source, std::size_t selection_size,
                               const std::vector<PoolFile>& files) {
  ordered_json j;
  j["source"] = source;
  j["anchor"] = source;
  j["selection_size"] = selection_size;
  auto cands = ordered_json::array();
  for (const auto& f : files) {
    ordered_json c;
    c["candidate"] = f.candidate;
    c["file"] = f.file;
    c["literals"] = literals_json(f.units);
    c["confidences"] = f.confidence;
    cands.push_back(std::move(c));
  }
  j["candidates"] = std::move(cands);
  return j.dump(2) + "\n";
}

std::string cube_manifest_json(const std::string& source, std::span<const Var> vars,
                               const std::vector<CubeFile>& files) {
  ordered_json j;
  j["source"] = source;
  j["variables"] = std::vector<Var>(vars.begin(), vars.end());
  j["alpha_convention"] = "bit r of alpha is the polarity of variables[r]; 1 = positive";
  auto cubes = ordered_json::array();
  for (const auto& f : files) {
    ordered_json c;
    c["alpha"] = f.alpha;
    c["file"] = f.file;
    c["assumptions"] = literals_json(f.assumptions);
    cubes.push_back(std::move(c));
  }
  j["cubes"] = std::move(cubes);
  return j.dump(2) + "\n";
}

std::string run_log_json(const PipelineResult& r, const std::string& instance) {
  ordered_json j;
  j["instance"] = instance;
  j["outcome"] = outcome_tag(r.outcome.kind);
  j["total_time_s"] = r.total_s;
  j["train_time_s"] = r.train_s;
  j["work"] = r.work;
  if (!r.note.empty()) j["note"] = r.note;
  if (!r.branch_vars.empty()) j["branch_vars"] = r.branch_vars;
  if (r.training) j["selected_batch"] = r.training->selected_batch;
  auto jobs = ordered_json::array();
  if (r.run) {
    if (r.run->decided_by) {
      j["decided_by"] = job_mode_name(*r.run->decided_by);
      j["decided_job"] = *r.run->decided_job;
    }
    for (const auto& e : r.run->log) {
      ordered_json je;
      je["mode"] = job_mode_name(e.mode);
      je["job"] = e.job;
      je[e.mode == JobMode::SatPool ? "candidate" : "alpha"] = e.meta.index;
      je["units"] = literals_json(e.meta.units);
      je["outcome"] = outcome_tag(e.outcome);
      je["start_s"] = e.start_s;
      je["wall_time_s"] = e.wall_s;
      je["work"] = e.work;
      if (!e.note.empty()) je["note"] = e.note;
      jobs.push_back(std::move(je));
    }
  }
  j["jobs"] = std::move(jobs);
  return j.dump(2) + "\n";
}

}  // namespace galoissat
