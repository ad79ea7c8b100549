/* -*- Mode:C++; c-file-style:"gnu"; indent-tabs-mode:nil; -*- */
/*
 * This program is free software; you can redistribute it and/or modify
 * it under the terms of the GNU General Public License version 2 as
 * published by the Free Software Foundation;
 *
 * This program is distributed in the hope that it will be useful,
 * but WITHOUT ANY WARRANTY; without even the implied warranty of
 * MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
 * GNU General Public License for more details.
 *
 * You should have received a copy of the GNU General Public License
 * along with this program; if not, write to the Free Software
 * Foundation, Inc., 59 Temple Place, Suite 330, Boston, MA  02111-1307  USA
 */

#ifndef VEXSIM_SCENARIO_RUNNER_H
#define VEXSIM_SCENARIO_RUNNER_H

#include "vexsim/scenario/simulation.h"

#include <json.hpp>

#include <array>
#include <filesystem>
#include <optional>
#include <ostream>

namespace vexsim {

struct RunnerOptions
{
  /// Per-run files go to <outDir>/<mac>/seed-<n>/ when set.
  std::optional<std::filesystem::path> outDir;
  bool trace = false;             // write trace.log next to each run (needs outDir)
  std::ostream *progress = nullptr;
};

struct RunReport
{
  Scenario scenario;
  std::vector<RunResult> runs; // one per seed, in seed-list order
  nlohmann::json aggregate;
};

/// Fields averaged across replications.
inline constexpr std::array<const char *, 10> kAggregateFields = {
    "generated",   "received",    "dropped",     "in_flight",   "pdr", "transmitted_fraction",
    "delay_min_s", "delay_max_s", "delay_avg_s", "residual_energy_j"};

/// Per-run summary document: metrics, drop reasons, alert decisions and
/// channel/MAC/routing counters.
nlohmann::json RunSummaryJson (const RunResult &run);

/// Mean and sample standard deviation of every aggregate field over the
/// runs where it is defined; null when undefined everywhere (mean) or
/// fewer than two values exist (std).
nlohmann::json AggregateJson (const Scenario &scenario, const std::vector<RunResult> &runs);

void WriteEnergyCsv (std::ostream &os, const RunResult &run);
void WriteTrajectoryCsv (std::ostream &os, const RunResult &run);
void WriteStationsCsv (std::ostream &os, const RunResult &run);

/// One simulation per seed; writes files when an output directory is set.
RunReport RunScenario (const Scenario &scenario, const RunnerOptions &options = {});

/// Deterministic serialization used for every JSON file.
std::string DumpJson (const nlohmann::json &j);

} // namespace vexsim

#endif // VEXSIM_SCENARIO_RUNNER_H
