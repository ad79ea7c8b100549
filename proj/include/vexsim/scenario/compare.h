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

#ifndef VEXSIM_SCENARIO_COMPARE_H
#define VEXSIM_SCENARIO_COMPARE_H

#include "vexsim/scenario/runner.h"

#include <optional>
#include <string>
#include <vector>

namespace vexsim {

/// Throws ConfigError unless the scenarios differ in MAC name only and
/// no MAC appears twice.
void CheckComparable (const std::vector<Scenario> &scenarios);

struct ComparisonColumn
{
  std::string mac;
  std::optional<double> pdr;
  std::optional<double> delayMin;
  std::optional<double> delayMax;
  std::optional<double> delayAvg;
  std::optional<double> transmittedFraction;
  std::optional<double> residualEnergyJ;
  std::size_t runs = 0;
  /// Runs whose largest delay exceeds twice their own mean delay.
  std::size_t spikeRuns = 0;
};

struct Verdict
{
  std::string name;
  bool holds;
  std::string detail;
};

struct Comparison
{
  std::vector<ComparisonColumn> columns;
  std::vector<Verdict> verdicts; // empty for a single column

  const ComparisonColumn *Find (const std::string &mac) const;
};

ComparisonColumn SummarizeReport (const RunReport &report);

/// Columns in input order; verdicts only cover MACs that are present.
Comparison Compare (const std::vector<RunReport> &reports);

std::string FormatComparison (const Comparison &comparison);
nlohmann::json ComparisonJson (const Comparison &comparison);

} // namespace vexsim

#endif // VEXSIM_SCENARIO_COMPARE_H
