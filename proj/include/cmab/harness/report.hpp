#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "cmab/harness/experiment.hpp"

namespace cmab {

/// "155.4 ± 14.1": one decimal each.
std::string format_mean_std(double mean, double std);

/// Summary record: final mean ± std, fingerprints, seeds and the canonical config.
nlohmann::json summary_json(const RunResult& result);

/// Writes into `dir` (created on demand):
///   per_round.csv   round,mean_cum_regret,std_cum_regret
///   per_run.csv     run,seed,final_cum_regret,budget_warnings
///   curves.csv      round,run_0,...,run_{n-1}   (only when runs were stored)
///   summary.json
///   timing.json     wall clock; the only file that differs between reruns
/// Throws std::runtime_error naming the path on I/O failure.
void emit_report(const RunResult& result, const std::filesystem::path& dir);

/// Reads every summary.json under `dir` (recursively) and renders one line
/// per experiment. Throws std::runtime_error when none is found.
std::string render_report(const std::filesystem::path& dir);

}  // namespace cmab
