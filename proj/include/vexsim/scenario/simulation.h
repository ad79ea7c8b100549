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

#ifndef VEXSIM_SCENARIO_SIMULATION_H
#define VEXSIM_SCENARIO_SIMULATION_H

#include "vexsim/app/alerting.h"
#include "vexsim/app/metrics.h"
#include "vexsim/scenario/scenario.h"

#include <ostream>
#include <vector>

namespace vexsim {

struct RunOptions
{
  std::ostream *trace = nullptr; // per-event log when set
  double trajectoryPeriod = 1.0; // seconds between recorded vehicle positions
};

struct TrajectoryPoint
{
  SimTime time;
  NodeId vehicle;
  Position position;
  Heading heading;
};

struct VehicleEnergy
{
  NodeId node = 0;
  EnergyLedger ledger;
  std::vector<EnergySample> series;
  std::optional<SimTime> depletedAt;
  std::size_t intervals = 0;
  double intervalJoules = 0.0; // sum over the recorded mode intervals
};

struct RunResult
{
  std::string mac;
  std::uint64_t seed = 0;
  NodeId server = 0;
  std::vector<Position> stations;
  MetricsSummary summary;
  std::vector<PacketRecord> packets;
  std::vector<VehicleEnergy> vehicles;
  std::vector<AlertDecision> alerts;
  std::vector<TrajectoryPoint> trajectory;
  std::uint64_t collisions = 0;
  std::uint64_t transmissions = 0;
  std::uint64_t events = 0;
  MacCounters macCounters;
  AodvCounters aodvCounters;
};

/**
 * One replication. Node ids 0 .. stations-1 are the base stations in
 * lattice order, followed by the vehicles. Every random choice derives
 * from `seed`, so equal inputs give equal results.
 */
RunResult RunSimulation (const Scenario &scenario, std::uint64_t seed,
                         const RunOptions &options = {});

} // namespace vexsim

#endif // VEXSIM_SCENARIO_SIMULATION_H
