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

#include "vexsim/scenario/runner.h"

#include <cmath>
#include <fstream>
#include <iomanip>

namespace vexsim {

std::string
DumpJson (const nlohmann::json &j)
{
  return j.dump (2) + "\n";
}

nlohmann::json
RunSummaryJson (const RunResult &run)
{
  nlohmann::json j = ToJson (run.summary);
  j["mac"] = run.mac;
  j["seed"] = run.seed;
  j["server"] = run.server;

  nlohmann::json alerts = nlohmann::json::array ();
  for (const auto &a : run.alerts)
    {
      nlohmann::json gases = nlohmann::json::array ();
      for (Gas g : a.gases)
        {
          gases.push_back (ToString (g));
        }
      alerts.push_back ({{"vehicle", a.vehicleId},
                         {"time_s", a.time},
                         {"reading_time_s", a.reported},
                         {"level", ToString (a.level)},
                         {"gases", gases}});
    }
  j["alert_decisions"] = alerts;

  nlohmann::json vehicles = nlohmann::json::array ();
  for (const auto &v : run.vehicles)
    {
      nlohmann::json modes = nlohmann::json::object ();
      for (RadioMode m : {RadioMode::Tx, RadioMode::Rx, RadioMode::Idle, RadioMode::Sleep})
        {
          modes[ToString (m)] = {{"seconds", v.ledger.ModeSeconds (m)},
                                 {"joules", v.ledger.ModeJoules (m)}};
        }
      vehicles.push_back ({{"node", v.node},
                           {"residual_j", v.ledger.Residual ()},
                           {"consumed_j", v.ledger.Consumed ()},
                           {"depleted_at_s", v.depletedAt ? nlohmann::json (*v.depletedAt)
                                                          : nlohmann::json (nullptr)},
                           {"modes", modes}});
    }
  j["vehicles"] = vehicles;

  j["channel"] = {{"transmissions", run.transmissions}, {"collisions", run.collisions}};
  const MacCounters &m = run.macCounters;
  j["mac_counters"] = {{"frames_sent", m.framesSent},       {"acks_sent", m.acksSent},
                       {"retransmissions", m.retransmissions}, {"retry_drops", m.retryDrops},
                       {"access_failures", m.accessFailures}, {"ifq_drops", m.ifqDrops},
                       {"duplicates", m.duplicates}};
  const AodvCounters &a = run.aodvCounters;
  j["routing_counters"] = {{"rreq_originated", a.rreqOriginated},
                           {"rreq_forwarded", a.rreqForwarded},
                           {"rrep_originated", a.rrepOriginated},
                           {"rrep_forwarded", a.rrepForwarded},
                           {"rerr_sent", a.rerrSent},
                           {"discoveries", a.discoveries},
                           {"discovery_failures", a.discoveryFailures},
                           {"link_breaks", a.linkBreaks}};
  j["events"] = run.events;
  return j;
}

nlohmann::json
AggregateJson (const Scenario &scenario, const std::vector<RunResult> &runs)
{
  nlohmann::json j;
  j["mac"] = scenario.mac;
  j["runs"] = runs.size ();
  j["seeds"] = scenario.seeds;

  nlohmann::json perRun = nlohmann::json::array ();
  for (const auto &r : runs)
    {
      nlohmann::json row = ToJson (r.summary);
      row["seed"] = r.seed;
      perRun.push_back (row);
    }

  nlohmann::json mean = nlohmann::json::object ();
  nlohmann::json stddev = nlohmann::json::object ();
  nlohmann::json defined = nlohmann::json::object ();
  auto reduce = [&] (const std::string &key, const std::vector<double> &values) {
    defined[key] = values.size ();
    if (values.empty ())
      {
        mean[key] = nullptr;
        stddev[key] = nullptr;
        return;
      }
    double sum = 0.0;
    for (double v : values)
      {
        sum += v;
      }
    const double m = sum / static_cast<double> (values.size ());
    mean[key] = m;
    if (values.size () < 2)
      {
        stddev[key] = nullptr;
        return;
      }
    double ss = 0.0;
    for (double v : values)
      {
        ss += (v - m) * (v - m);
      }
    stddev[key] = std::sqrt (ss / static_cast<double> (values.size () - 1));
  };

  for (const char *field : kAggregateFields)
    {
      std::vector<double> values;
      for (const auto &row : perRun)
        {
          if (!row[field].is_null ())
            {
              values.push_back (row[field].get<double> ());
            }
        }
      reduce (field, values);
    }
  for (DropReason reason : kAllDropReasons)
    {
      const std::string key = std::string ("drops.") + std::string (ToString (reason));
      std::vector<double> values;
      for (const auto &r : runs)
        {
          values.push_back (static_cast<double> (r.summary.drops.at (reason)));
        }
      reduce (key, values);
    }
  j["mean"] = mean;
  j["std"] = stddev;
  j["defined_runs"] = defined;
  j["per_run"] = perRun;
  return j;
}

void
WriteEnergyCsv (std::ostream &os, const RunResult &run)
{
  os << "node,time_s,residual_j\n" << std::setprecision (12);
  for (const auto &v : run.vehicles)
    {
      for (const auto &s : v.series)
        {
          os << v.node << ',' << s.time << ',' << s.residualJ << '\n';
        }
    }
}

void
WriteTrajectoryCsv (std::ostream &os, const RunResult &run)
{
  os << "time_s,node,x_m,y_m,heading\n" << std::setprecision (10);
  for (const auto &p : run.trajectory)
    {
      os << p.time << ',' << p.vehicle << ',' << p.position.x << ',' << p.position.y << ','
         << ToString (p.heading) << '\n';
    }
}

void
WriteStationsCsv (std::ostream &os, const RunResult &run)
{
  os << "node,x_m,y_m,server\n" << std::setprecision (10);
  for (std::size_t i = 0; i < run.stations.size (); ++i)
    {
      os << i << ',' << run.stations[i].x << ',' << run.stations[i].y << ','
         << (i == run.server ? 1 : 0) << '\n';
    }
}

namespace {

std::ofstream
OpenOut (const std::filesystem::path &path)
{
  std::ofstream out (path, std::ios::binary);
  if (!out)
    {
      throw std::runtime_error ("cannot write '" + path.string () + "'");
    }
  return out;
}

} // namespace

RunReport
RunScenario (const Scenario &scenario, const RunnerOptions &options)
{
  scenario.Validate ();
  RunReport report;
  report.scenario = scenario;

  std::filesystem::path macDir;
  if (options.outDir)
    {
      macDir = *options.outDir / scenario.mac;
      std::filesystem::create_directories (macDir);
      OpenOut (macDir / "scenario.yaml") << DumpScenario (scenario);
    }

  for (std::uint64_t seed : scenario.seeds)
    {
      std::filesystem::path runDir;
      std::ofstream trace;
      RunOptions ro;
      if (options.outDir)
        {
          runDir = macDir / ("seed-" + std::to_string (seed));
          std::filesystem::create_directories (runDir);
          if (options.trace)
            {
              trace = OpenOut (runDir / "trace.log");
              ro.trace = &trace;
            }
        }
      RunResult r = RunSimulation (scenario, seed, ro);
      if (options.progress)
        {
          *options.progress << scenario.mac << " seed " << seed << ": received "
                            << r.summary.received << ", dropped " << r.summary.dropped
                            << ", residual " << std::fixed << std::setprecision (3)
                            << r.summary.residualEnergyJ << " J" << std::defaultfloat << '\n';
        }
      if (options.outDir)
        {
          auto packets = OpenOut (runDir / "packets.csv");
          WritePacketsCsv (packets, r.packets);
          auto energy = OpenOut (runDir / "energy.csv");
          WriteEnergyCsv (energy, r);
          auto traj = OpenOut (runDir / "trajectory.csv");
          WriteTrajectoryCsv (traj, r);
          OpenOut (runDir / "summary.json") << DumpJson (RunSummaryJson (r));
          if (report.runs.empty ())
            {
              auto st = OpenOut (macDir / "stations.csv");
              WriteStationsCsv (st, r);
            }
        }
      report.runs.push_back (std::move (r));
    }

  report.aggregate = AggregateJson (scenario, report.runs);
  if (options.outDir)
    {
      OpenOut (macDir / "aggregate.json") << DumpJson (report.aggregate);
    }
  return report;
}

} // namespace vexsim
