#include "bench.hpp"

#include <algorithm>
#include <exception>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include <json.hpp>

#include "parallel.hpp"

namespace galoissat {

namespace fs = std::filesystem;

void PoolBreakdown::add(OutcomeKind k) {
  ++total;
  switch (k) {
    case OutcomeKind::Sat: ++sat; break;
    case OutcomeKind::Unsat: ++unsat; break;
    case OutcomeKind::Timeout: ++timeout; break;
    case OutcomeKind::Unknown: ++unknown; break;
  }
}

double PoolBreakdown::fraction(OutcomeKind k) const {
  if (total == 0) return 0.0;
  std::size_t c = k == OutcomeKind::Sat     ? sat
                  : k == OutcomeKind::Unsat ? unsat
                  : k == OutcomeKind::Timeout ? timeout
                                              : unknown;
  return static_cast<double>(c) / static_cast<double>(total);
}

double par2_score(OutcomeKind outcome, double wall_time, double timeout_s) {
  bool solved = outcome == OutcomeKind::Sat || outcome == OutcomeKind::Unsat;
  return solved && wall_time <= timeout_s ? wall_time : 2.0 * timeout_s;
}

double compute_par2(std::span<const Par2Record> records) {
  if (records.empty()) throw std::invalid_argument("PAR-2 of an empty record set");
  double sum = 0.0;
  for (const auto& r : records) sum += r.par2;
  return sum / static_cast<double>(records.size());
}

std::vector<std::pair<double, std::size_t>> cumulative_curve(std::span<const Par2Record> records,
                                                             double timeout_s) {
  std::vector<double> times;
  for (const auto& r : records)
    if (r.par2 < 2.0 * timeout_s) times.push_back(r.par2);
  std::sort(times.begin(), times.end());
  std::vector<std::pair<double, std::size_t>> curve;
  for (std::size_t i = 0; i < times.size(); ++i) curve.emplace_back(times[i], i + 1);
  curve.emplace_back(2.0 * timeout_s, times.size());
  return curve;
}

PoolBreakdown pool_breakdown(const RunResult& run) {
  PoolBreakdown b;
  for (const auto& e : run.log)
    if (e.mode == JobMode::SatPool && e.job != 0) b.add(e.outcome);
  return b;
}

std::vector<std::pair<std::string, bool>> read_labels(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open labels file " + path);
  std::vector<std::pair<std::string, bool>> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string name;
    std::string label;
    if (!(ls >> name) || name.front() == '#') continue;
    if (!(ls >> label) || (label != "sat" && label != "unsat"))
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": expected '<file> <sat|unsat>'");
    out.emplace_back(name, label == "sat");
  }
  return out;
}

std::vector<std::string> list_instances(const std::string& dir) {
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    auto ext = entry.path().extension().string();
    if (ext == ".cnf" || ext == ".dimacs") files.push_back(entry.path().filename().string());
  }
  std::sort(files.begin(), files.end());
  return files;
}

BenchReport assemble_report(std::vector<Par2Record> records, double timeout_s) {
  BenchReport rep;
  rep.timeout_s = timeout_s;
  rep.records = std::move(records);
  if (!rep.records.empty()) rep.avg_par2 = compute_par2(rep.records);
  for (const auto& r : rep.records) {
    if (r.par2 < 2.0 * timeout_s) ++rep.solved_count;
    rep.pool_breakdown.total += r.pool.total;
    rep.pool_breakdown.sat += r.pool.sat;
    rep.pool_breakdown.unsat += r.pool.unsat;
    rep.pool_breakdown.timeout += r.pool.timeout;
    rep.pool_breakdown.unknown += r.pool.unknown;
  }
  rep.cumulative_curve = cumulative_curve(rep.records, timeout_s);
  return rep;
}

namespace {

std::string fmt_seconds(double s) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", s);
  return buf;
}

nlohmann::ordered_json breakdown_json(const PoolBreakdown& b) {
  nlohmann::ordered_json j;
  j["total"] = b.total;
  nlohmann::ordered_json fr;
  for (OutcomeKind k : {OutcomeKind::Sat, OutcomeKind::Timeout, OutcomeKind::Unsat,
                        OutcomeKind::Unknown})
    fr[std::string(category_name(k))] = b.fraction(k);
  j["fractions"] = fr;
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) return;
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << text;
  }
  fs::rename(tmp, path);
}

}  // namespace

std::string report_csv(const BenchReport& report) {
  std::string out = "instance,outcome,wall_time_s,par2_s\n";
  for (const auto& r : report.records)
    out += r.instance + "," + std::string(outcome_tag(r.outcome)) + "," +
           fmt_seconds(r.wall_time) + "," + fmt_seconds(r.par2) + "\n";
  return out;
}

std::string report_json(const BenchReport& report) {
  nlohmann::ordered_json j;
  j["timeout_s"] = report.timeout_s;
  j["avg_par2"] = report.avg_par2;
  j["solved_count"] = report.solved_count;
  j["instances"] = report.records.size();
  j["wall_time_comparable"] = report.wall_time_comparable;
  auto records = nlohmann::ordered_json::array();
  for (const auto& r : report.records) {
    nlohmann::ordered_json jr;
    jr["instance"] = r.instance;
    jr["outcome"] = outcome_tag(r.outcome);
    jr["wall_time_s"] = r.wall_time;
    jr["solve_time_s"] = r.solve_time;
    jr["par2_s"] = r.par2;
    jr["pool_breakdown"] = breakdown_json(r.pool);
    if (!r.note.empty()) jr["note"] = r.note;
    records.push_back(std::move(jr));
  }
  j["records"] = std::move(records);
  auto curve = nlohmann::ordered_json::array();
  for (const auto& [t, n] : report.cumulative_curve) curve.push_back({t, n});
  j["cumulative_curve"] = std::move(curve);
  j["pool_breakdown"] = breakdown_json(report.pool_breakdown);
  return j.dump(2) + "\n";
}

BenchReport run_bench(const std::string& dir, const BenchConfig& cfg, Backend& backend) {
  const double T = cfg.pipeline.timeout_s;
  std::map<std::string, bool> labels;
  if (!cfg.labels_path.empty())
    for (auto& [name, sat] : read_labels(cfg.labels_path)) labels[name] = sat;

  std::vector<std::string> files = list_instances(dir);
  std::vector<std::optional<Par2Record>> slots(files.size());
  std::vector<std::string> mismatches;
  std::mutex mu;
  std::exception_ptr hard_failure;

  auto flush = [&] {
    std::vector<Par2Record> done;
    for (const auto& s : slots)
      if (s) done.push_back(*s);
    BenchReport rep = assemble_report(std::move(done), T);
    rep.wall_time_comparable = cfg.instance_jobs <= 1;
    write_text(cfg.csv_out, report_csv(rep));
    write_text(cfg.json_out, report_json(rep));
    return rep;
  };

  auto run_one = [&](std::size_t i) {
    Par2Record rec;
    rec.instance = files[i];
    const std::string path = (fs::path(dir) / files[i]).string();
    auto t0 = Clock::now();
    try {
      Cnf cnf = read_dimacs_file(path).cnf;
      PipelineResult pr = run_pipeline(cnf, cfg.pipeline, backend);
      rec.outcome = pr.outcome.kind;
      rec.note = pr.note;
      if (pr.run) rec.pool = pool_breakdown(*pr.run);
      if (cfg.time_source == TimeSource::Work) {
        rec.wall_time = static_cast<double>(pr.work) * kWorkUnitSeconds;
        rec.solve_time =
            static_cast<double>(pr.run ? pr.run->work : 0) * kWorkUnitSeconds;
      } else {
        rec.wall_time = std::chrono::duration<double>(Clock::now() - t0).count();
        rec.solve_time = rec.wall_time - pr.train_s;
      }
      if (cfg.pool_eval && pr.run && cfg.pipeline.mode != RunMode::Unsat) {
        PipelineConfig pc = cfg.pipeline;
        pc.mode = RunMode::Sat;
        pc.exhaustive = true;
        PipelineResult full = run_pipeline(cnf, pc, backend);
        if (full.run) rec.pool = pool_breakdown(*full.run);
      }
    } catch (const ModelVerificationError&) {
      std::lock_guard lk(mu);
      if (!hard_failure) hard_failure = std::current_exception();
      return;
    } catch (const std::exception& e) {
      rec.outcome = OutcomeKind::Unknown;
      rec.wall_time = std::chrono::duration<double>(Clock::now() - t0).count();
      rec.note = e.what();
    }
    double scored = cfg.cpu_only_par2 ? rec.solve_time : rec.wall_time;
    rec.par2 = par2_score(rec.outcome, scored, T);

    std::lock_guard lk(mu);
    if (auto it = labels.find(files[i]); it != labels.end()) {
      bool decisive = rec.outcome == OutcomeKind::Sat || rec.outcome == OutcomeKind::Unsat;
      if (decisive && (rec.outcome == OutcomeKind::Sat) != it->second)
        mismatches.push_back(files[i] + ": labelled " + (it->second ? "sat" : "unsat") +
                             ", solved " + std::string(outcome_tag(rec.outcome)));
    }
    slots[i] = std::move(rec);
    flush();
  };

  parallel_for(files.size(), std::max(1u, cfg.instance_jobs), run_one);
  BenchReport rep = flush();
  if (hard_failure) std::rethrow_exception(hard_failure);
  if (!mismatches.empty()) {
    std::string msg = "outcome contradicts label:";
    for (const auto& m : mismatches) msg += "\n  " + m;
    throw LabelMismatch(msg, std::move(rep));
  }
  return rep;
}

}  // namespace galoissat
