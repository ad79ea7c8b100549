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

// Acceptance suite: runs the reference scenario under every MAC and prints
// one PASS/FAIL line per criterion. Exit status is non-zero on any FAIL.

#include "support/test-network.h"

#include "vexsim/app/metrics.h"
#include "vexsim/energy/energy-model.h"
#include "vexsim/mobility/manhattan-mobility.h"
#include "vexsim/phy/two-ray-ground.h"
#include "vexsim/scenario/compare.h"
#include "vexsim/scenario/runner.h"
#include "vexsim/scenario/simulation.h"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

using namespace vexsim;

namespace {

struct Check
{
  bool pass = true;
  std::string detail;

  void
  Require (bool ok, const std::string &what)
  {
    if (!ok)
      {
        pass = false;
        detail += (detail.empty () ? "" : "; ") + what;
      }
  }
};

std::string
Num (double v, int precision = 4)
{
  std::ostringstream os;
  os << std::fixed << std::setprecision (precision) << v;
  return os.str ();
}

void
Report (int n, const std::string &name, const Check &o, const std::string &summary)
{
  std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << n << ": " << name << " ("
            << (o.pass ? summary : o.detail) << ")\n";
}

struct MacRuns
{
  RunReport report;
  double slowestRunS = 0.0;
};

MacRuns
RunMac (const std::string &mac)
{
  MacRuns m;
  m.report.scenario = Scenario{};
  m.report.scenario.mac = mac;
  for (std::uint64_t seed : m.report.scenario.seeds)
    {
      const auto t0 = std::chrono::steady_clock::now ();
      m.report.runs.push_back (RunSimulation (m.report.scenario, seed));
      const std::chrono::duration<double> dt = std::chrono::steady_clock::now () - t0;
      m.slowestRunS = std::max (m.slowestRunS, dt.count ());
    }
  m.report.aggregate = AggregateJson (m.report.scenario, m.report.runs);
  return m;
}

Check
OfferedLoad (const std::map<std::string, MacRuns> &all, std::string &summary)
{
  Check o;
  double slowest = 0.0;
  for (const auto &[mac, m] : all)
    {
      for (const auto &r : m.report.runs)
        {
          o.Require (r.summary.generated == 5900 && r.packets.size () == 5900,
                     mac + " seed " + std::to_string (r.seed) + " generated "
                         + std::to_string (r.summary.generated));
        }
      slowest = std::max (slowest, m.slowestRunS);
    }
  o.Require (slowest < 60.0, "slowest run took " + Num (slowest, 2) + " s");
  summary = "5900 packets in all 40 runs, slowest run " + Num (slowest, 2) + " s";
  return o;
}

Check
FormulaFidelity (std::string &summary)
{
  struct Row
  {
    const char *mac;
    std::uint64_t received;
    std::uint64_t dropped;
    double pdrPoints;
    double sentPoints;
  };
  const Row rows[] = {{"802.11", 2964, 89, 97.08, 51.74},
                      {"802.15.4", 3019, 237, 92.72, 55.19},
                      {"smac", 15, 34, 30.61, 0.83},
                      {"tdma", 318, 21, 93.80, 5.74}};
  Check o;
  for (const auto &r : rows)
    {
      const auto pdr = Pdr (r.received, r.dropped);
      const double tf = TransmittedFraction (r.received + r.dropped, 5900);
      o.Require (pdr && std::abs (*pdr * 100.0 - r.pdrPoints) <= 0.01,
                 std::string (r.mac) + " pdr " + Num (pdr.value_or (-1) * 100.0, 4));
      o.Require (std::abs (tf * 100.0 - r.sentPoints) <= 0.01,
                 std::string (r.mac) + " transmitted " + Num (tf * 100.0, 4));
    }
  summary = "4 delivery ratios and 4 transmitted fractions within 0.01 points";
  return o;
}

Check
DelayOrdering (const Comparison &c, std::string &summary)
{
  Check o;
  const char *order[] = {"802.15.4", "802.11", "tdma", "smac"};
  std::vector<double> d;
  for (const char *mac : order)
    {
      const auto *col = c.Find (mac);
      d.push_back (col && col->delayAvg ? *col->delayAvg : std::nan (""));
    }
  o.Require (d[0] < d[1] && d[1] < d[2] && d[2] < d[3], "order violated");
  o.Require (d[3] > 1.0, "smac mean delay " + Num (d[3]) + " s not above 1 s");
  o.Require (d[1] < 0.1, "802.11 mean delay " + Num (d[1]) + " s");
  o.Require (d[0] < 0.1, "802.15.4 mean delay " + Num (d[0]) + " s");
  summary = "802.15.4 " + Num (d[0]) + " < 802.11 " + Num (d[1]) + " < tdma " + Num (d[2])
            + " < smac " + Num (d[3]) + " s";
  return o;
}

Check
DeliveryOrdering (const Comparison &c, std::string &summary)
{
  Check o;
  auto pdr = [&c] (const char *mac) {
    const auto *col = c.Find (mac);
    return col && col->pdr ? *col->pdr : std::nan ("");
  };
  const double a = pdr ("802.11");
  const double b = pdr ("802.15.4");
  const double t = pdr ("tdma");
  const double s = pdr ("smac");
  o.Require (a >= 0.90, "802.11 " + Num (a));
  o.Require (b >= 0.85, "802.15.4 " + Num (b));
  o.Require (t >= 0.85, "tdma " + Num (t));
  o.Require (s <= 0.50, "smac " + Num (s));
  summary = "802.11 " + Num (a) + ", 802.15.4 " + Num (b) + ", tdma " + Num (t) + ", smac "
            + Num (s);
  return o;
}

Check
EnergyOrdering (const Comparison &c, std::string &summary)
{
  Check o;
  std::map<std::string, double> e;
  for (const auto &col : c.columns)
    {
      e[col.mac] = col.residualEnergyJ.value_or (std::nan (""));
    }
  for (const auto &[mac, j] : e)
    {
      if (mac != "tdma")
        {
          o.Require (e["tdma"] > j, "tdma " + Num (e["tdma"], 3) + " not above " + mac + " "
                                        + Num (j, 3));
        }
    }
  o.Require (e["smac"] < e["tdma"] && e["smac"] < e["802.15.4"], "smac not below tdma and 802.15.4");
  summary.clear ();
  for (const auto &[mac, j] : e)
    {
      summary += (summary.empty () ? "" : ", ") + mac + " " + Num (j, 3) + " J";
    }
  return o;
}

Check
SmacSpikes (const MacRuns &smac, std::string &summary)
{
  Check o;
  std::size_t spikes = 0;
  for (const auto &r : smac.report.runs)
    {
      if (r.summary.delay && r.summary.delay->max > 2.0 * r.summary.delay->mean)
        {
          ++spikes;
        }
    }
  const std::size_t runs = smac.report.runs.size ();
  o.Require (runs == 10 && spikes >= 8, std::to_string (spikes) + " of " + std::to_string (runs));
  summary = std::to_string (spikes) + " of " + std::to_string (runs) + " runs";
  return o;
}

Check
Lifetime (std::string &summary)
{
  Scheduler s;
  Tracer tr;
  EnergyMeter meter (s, 0, EnergyParams{}, tr);
  meter.Start (RadioMode::Sleep);
  for (double t = 0.0; t < 600.0; t += 300.0)
    {
      s.Schedule (t, 0, EventKind::Timer, [&meter] () { meter.OnModeChange (RadioMode::Tx); });
      s.Schedule (t + 0.005, 0, EventKind::Timer,
                  [&meter] () { meter.OnModeChange (RadioMode::Sleep); });
    }
  s.RunUntil (600.0);
  meter.Flush ();
  const double life = ProjectLifetime (meter.Ledger (), 600.0);
  Check o;
  o.Require (life > 3.15e7, "projected " + Num (life, 0) + " s");
  summary = "projected " + Num (life / 31536000.0, 2) + " years";
  return o;
}

Check
Properties (const std::map<std::string, MacRuns> &all, std::string &summary)
{
  Check o;

  // energy conservation and one outcome per packet, every run
  for (const auto &[mac, m] : all)
    {
      for (const auto &r : m.report.runs)
        {
          const std::string tag = mac + "/" + std::to_string (r.seed);
          for (const auto &v : r.vehicles)
            {
              double joules = 0.0;
              for (RadioMode mode : {RadioMode::Tx, RadioMode::Rx, RadioMode::Idle, RadioMode::Sleep})
                {
                  joules += v.ledger.ModeJoules (mode);
                }
              o.Require (std::abs (joules - v.ledger.Consumed ()) < 1e-9
                             && std::abs (v.intervalJoules - v.ledger.Consumed ()) < 1e-9,
                         tag + " energy not conserved");
            }
          std::set<std::uint64_t> ids;
          bool single = true;
          for (const auto &p : r.packets)
            {
              single &= ids.insert (p.id).second;
              single &= (p.outcome == vexsim::Outcome::Received) == p.received.has_value ();
              single &= (p.outcome == vexsim::Outcome::Dropped) == p.reason.has_value ();
            }
          single &= r.summary.received + r.summary.dropped + r.summary.inFlight
                    == r.summary.generated;
          o.Require (single, tag + " packet outcomes inconsistent");
        }
    }

  // replay one seed per MAC and compare summary and trace bytes
  for (const auto &[mac, m] : all)
    {
      std::ostringstream ta;
      std::ostringstream tb;
      RunOptions oa;
      oa.trace = &ta;
      RunOptions ob;
      ob.trace = &tb;
      const RunResult a = RunSimulation (m.report.scenario, 1, oa);
      const RunResult b = RunSimulation (m.report.scenario, 1, ob);
      o.Require (ta.str () == tb.str (), mac + " trace differs on replay");
      const std::string ref = DumpJson (RunSummaryJson (m.report.runs.front ()));
      o.Require (DumpJson (RunSummaryJson (a)) == ref && DumpJson (RunSummaryJson (b)) == ref,
                 mac + " summary differs on replay");
    }

  // hop counts against breadth-first search
  RngStream rng (2024, "acceptance/subgraphs");
  int graphs = 0;
  int mismatches = 0;
  AodvConfig cfg;
  cfg.activeRouteTimeout = 1e6;
  cfg.rreqWait = 1e3;
  cfg.broadcastJitter = 0.0;
  while (graphs < 50)
    {
      const test::Graph g = test::RandomLatticeSubgraph (5, 0.7, rng);
      const auto dist = g.Bfs (12);
      std::vector<NodeId> reachable;
      for (NodeId n = 0; n < g.Size (); ++n)
        {
          if (n != 12 && dist[n])
            {
              reachable.push_back (n);
            }
        }
      if (reachable.size () < 3)
        {
          continue;
        }
      ++graphs;
      test::IdealLinkNetwork net (g, cfg, 1e-3, graphs);
      const NodeId src = reachable[rng.UniformInt (0, reachable.size () - 1)];
      net.Send (src, 12, 1);
      net.Sim ().RunUntil (1e4);
      const auto route = net.Agent (src).Lookup (12);
      if (!route || route->hopCount != *dist[src])
        {
          ++mismatches;
        }
    }
  o.Require (mismatches == 0, std::to_string (mismatches) + " of 50 routes longer than BFS");

  // tdma runs are collision-free
  std::uint64_t tdmaCollisions = 0;
  for (const auto &r : all.at ("tdma").report.runs)
    {
      tdmaCollisions += r.collisions;
    }
  o.Require (tdmaCollisions == 0, std::to_string (tdmaCollisions) + " tdma collisions");

  // free space meets two-ray at the crossover
  ChannelParams p;
  const double dc = CrossoverDistance (p);
  const double tworay
      = p.txPowerW * p.gainTx * p.gainRx * std::pow (p.heightTx * p.heightRx, 2) / (std::pow (dc, 4) * p.systemLoss);
  const double rel = std::abs (RxPowerFriis (p, dc) - tworay) / tworay;
  o.Require (rel < 1e-12, "crossover relative error " + std::to_string (rel));

  // turn frequencies
  GridSpec grid;
  RngStream placement (1, "placement/v0");
  RngStream mob (1, "mobility/v0");
  VehicleMotion v = PlaceVehicle (grid, 10.0, placement);
  std::vector<TurnRecord> log;
  double counts[3] = {0, 0, 0};
  std::size_t interior = 0;
  while (interior < 100000)
    {
      log.clear ();
      v = ManhattanStep (v, 100.0, mob, grid, {}, &log);
      for (const auto &t : log)
        {
          if (t.interior && interior < 100000)
            {
              counts[static_cast<int> (t.turn)] += 1.0;
              ++interior;
            }
        }
    }
  const double f[3] = {counts[0] / 1e5, counts[1] / 1e5, counts[2] / 1e5};
  o.Require (std::abs (f[0] - 0.5) < 0.01 && std::abs (f[1] - 0.25) < 0.01
                 && std::abs (f[2] - 0.25) < 0.01,
             "turn frequencies " + Num (f[0]) + "/" + Num (f[1]) + "/" + Num (f[2]));

  summary = "energy, replay, outcomes over 40 runs; 50 BFS routes; 0 tdma collisions; "
            "crossover error "
            + [rel] () {
                std::ostringstream os;
                os << std::scientific << std::setprecision (1) << rel;
                return os.str ();
              }()
            + "; turns " + Num (f[0], 3) + "/" + Num (f[1], 3) + "/" + Num (f[2], 3);
  return o;
}

} // namespace

int
main ()
{
  std::map<std::string, MacRuns> all;
  std::vector<RunReport> reports;
  for (const char *mac : kMacNames)
    {
      all.emplace (mac, RunMac (mac));
      reports.push_back (all.at (mac).report);
    }
  const Comparison cmp = Compare (reports);
  std::cout << FormatComparison (cmp) << '\n';

  bool ok = true;
  std::string s;
  auto emit = [&] (int n, const char *name, const Check &o) {
    Report (n, name, o, s);
    ok &= o.pass;
  };
  {
    const Check o = OfferedLoad (all, s);
    emit (1, "offered load", o);
  }
  {
    const Check o = FormulaFidelity (s);
    emit (2, "delivery formulas", o);
  }
  {
    const Check o = DelayOrdering (cmp, s);
    emit (3, "delay ordering", o);
  }
  {
    const Check o = DeliveryOrdering (cmp, s);
    emit (4, "delivery ordering", o);
  }
  {
    const Check o = EnergyOrdering (cmp, s);
    emit (5, "energy ordering", o);
  }
  {
    const Check o = SmacSpikes (all.at ("smac"), s);
    emit (6, "smac delay spikes", o);
  }
  {
    const Check o = Lifetime (s);
    emit (7, "duty-cycled lifetime", o);
  }
  {
    const Check o = Properties (all, s);
    emit (8, "property suite", o);
  }
  return ok ? 0 : 1;
}
