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

#include "vexsim/scenario/compare.h"
#include "vexsim/scenario/runner.h"
#include "vexsim/scenario/scenario.h"
#include "vexsim/scenario/simulation.h"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace vexsim;

namespace {

Scenario
Short (const std::string &mac, double horizon = 60.0)
{
  Scenario s;
  s.mac = mac;
  s.horizon = horizon;
  s.seeds = {1};
  return s;
}

std::string
ErrorOf (const std::string &text)
{
  try
    {
      ParseScenario (text);
    }
  catch (const ConfigError &e)
    {
      return e.what ();
    }
  return "";
}

} // namespace

TEST_SUITE ("scenario-cli")
{
  TEST_CASE ("empty configuration gives the reference defaults")
  {
    const Scenario s = ParseScenario ("");
    CHECK (s.stations == 25);
    CHECK (s.grid.width == 1000.0);
    CHECK (s.grid.height == 1000.0);
    CHECK (s.channel.txPowerW == 2.0);
    CHECK (s.energy.initialJ == 4700.0);
    CHECK (s.cbr.interval == 0.1);
    CHECK (s.cbr.payloadBytes == 512);
    CHECK (s.cbr.start == 10.0);
    CHECK (s.horizon == 600.0);
    CHECK (s.seeds.size () == 10);
    CHECK (s.ifqLength == 50);
    CHECK (s.mac == "802.11");
    CHECK (DumpScenario (s) == DumpScenario (Scenario{}));
  }

  TEST_CASE ("unknown MAC names the valid ones")
  {
    const std::string err = ErrorOf ("mac: csma-foo\n");
    CHECK (err.find ("mac.name") != std::string::npos);
    for (const char *m : kMacNames)
      {
        CHECK (err.find (m) != std::string::npos);
      }
    CHECK (CanonicalMacName ("SMAC") == "smac");
    CHECK (CanonicalMacName ("Tdma") == "tdma");
  }

  TEST_CASE ("bad values name their key")
  {
    CHECK (ErrorOf ("topology:\n  base_stations: 24\n").find ("base_stations") != std::string::npos);
    CHECK (ErrorOf ("simulation:\n  horizon_s: -5\n").find ("horizon_s") != std::string::npos);
    CHECK (ErrorOf ("traffic:\n  cbr_packet_bytes: 900\n").find ("cbr_packet_bytes")
           != std::string::npos);
    CHECK (ErrorOf ("energy:\n  initial_j: abc\n").find ("initial_j") != std::string::npos);
    CHECK (ErrorOf ("routing:\n  colour: red\n").find ("colour") != std::string::npos);
    CHECK (ErrorOf ("mac:\n  name: smac\n  smac:\n    duty_cycle: 1.5\n").find ("duty_cycle")
           != std::string::npos);
    CHECK_FALSE (ErrorOf ("simulation: [1, 2\n").empty ());
    CHECK_THROWS_AS (LoadScenario ("/nonexistent/scenario.yaml"), ConfigError);
  }

  TEST_CASE ("nested MAC parameters are read")
  {
    const Scenario s = ParseScenario ("mac:\n  name: smac\n  smac:\n    sync_every: 4\n"
                                      "    discovery_every: 30\n    duty_cycle: 0.2\n");
    CHECK (s.mac == "smac");
    CHECK (s.smac.syncEvery == 4);
    CHECK (s.smac.discoveryEvery == 30);
    CHECK (s.smac.dutyCycle == 0.2);
  }

  TEST_CASE ("dump and parse round trip")
  {
    Scenario s;
    s.mac = "tdma";
    s.horizon = 123.5;
    s.seeds = {7, 3};
    s.energy.idleW = 0.75;
    s.mobility.turns = {0.6, 0.2, 0.2};
    s.aodv.destinationOnly = false;
    const std::string text = DumpScenario (s);
    CHECK (DumpScenario (ParseScenario (text)) == text);
  }

  TEST_CASE ("seed handling")
  {
    CHECK_THROWS_AS (ParseScenario ("simulation:\n  seeds: [1, 1]\n"), ConfigError);
    const Scenario s = ParseScenario ("simulation:\n  runs: 3\n");
    CHECK (s.seeds == std::vector<std::uint64_t>{1, 2, 3});
  }

  TEST_CASE ("every packet ends in exactly one state")
  {
    for (const char *mac : kMacNames)
      {
        const RunResult r = RunSimulation (Short (mac), 2);
        CHECK (r.summary.generated == CbrPacketCount (CbrConfig{}, 60.0));
        std::set<std::uint64_t> ids;
        for (const auto &p : r.packets)
          {
            CHECK (ids.insert (p.id).second);
            switch (p.outcome)
              {
              case Outcome::Received:
                CHECK (p.received.has_value ());
                CHECK_FALSE (p.reason.has_value ());
                CHECK (*p.received >= p.sent);
                break;
              case Outcome::Dropped:
                CHECK (p.reason.has_value ());
                CHECK_FALSE (p.received.has_value ());
                break;
              case Outcome::InFlight:
                CHECK_FALSE (p.reason.has_value ());
                CHECK_FALSE (p.received.has_value ());
                break;
              }
          }
        CHECK (r.summary.received + r.summary.dropped + r.summary.inFlight
               == r.summary.generated);
      }
  }

  TEST_CASE ("vehicle energy is conserved")
  {
    for (const char *mac : kMacNames)
      {
        const RunResult r = RunSimulation (Short (mac, 120.0), 3);
        REQUIRE (r.vehicles.size () == 1);
        const auto &v = r.vehicles[0];
        const EnergyLedger &l = v.ledger;
        double joules = 0.0;
        double seconds = 0.0;
        for (RadioMode m : {RadioMode::Tx, RadioMode::Rx, RadioMode::Idle, RadioMode::Sleep})
          {
            joules += l.ModeJoules (m);
            seconds += l.ModeSeconds (m);
          }
        CHECK (std::abs (joules - (l.Params ().initialJ - l.Residual ())) < 1e-9);
        CHECK (std::abs (v.intervalJoules - l.Consumed ()) < 1e-9);
        CHECK (seconds == doctest::Approx (120.0).epsilon (1e-12));
        CHECK (r.summary.residualEnergyJ == l.Residual ());
      }
  }

  TEST_CASE ("replay is byte-identical")
  {
    for (const char *mac : kMacNames)
      {
        std::ostringstream ta;
        std::ostringstream tb;
        RunOptions oa;
        oa.trace = &ta;
        RunOptions ob;
        ob.trace = &tb;
        const RunResult a = RunSimulation (Short (mac), 5, oa);
        const RunResult b = RunSimulation (Short (mac), 5, ob);
        CHECK (ta.str () == tb.str ());
        CHECK (!ta.str ().empty ());
        CHECK (DumpJson (RunSummaryJson (a)) == DumpJson (RunSummaryJson (b)));
        std::ostringstream pa;
        std::ostringstream pb;
        WritePacketsCsv (pa, a.packets);
        WritePacketsCsv (pb, b.packets);
        CHECK (pa.str () == pb.str ());
      }
  }

  TEST_CASE ("mobility does not depend on the MAC")
  {
    std::vector<std::vector<TrajectoryPoint>> tracks;
    for (const char *mac : kMacNames)
      {
        tracks.push_back (RunSimulation (Short (mac), 4).trajectory);
      }
    for (std::size_t i = 1; i < tracks.size (); ++i)
      {
        REQUIRE (tracks[i].size () == tracks[0].size ());
        for (std::size_t k = 0; k < tracks[0].size (); ++k)
          {
            CHECK (tracks[i][k].position == tracks[0][k].position);
          }
      }
  }

  TEST_CASE ("delays are never shorter than the payload airtime")
  {
    for (const char *mac : kMacNames)
      {
        Scenario s = Short (mac);
        const RunResult r = RunSimulation (s, 6);
        const double air = Airtime (s.cbr.payloadBytes, s.channel.bitrate);
        for (const auto &p : r.packets)
          {
            if (auto d = p.Delay ())
              {
                CHECK (*d >= air);
              }
          }
      }
  }

  TEST_CASE ("synchronised tdma never collides")
  {
    for (std::uint64_t seed = 1; seed <= 3; ++seed)
      {
        const RunResult r = RunSimulation (Short ("tdma", 200.0), seed);
        CHECK (r.collisions == 0);
        CHECK (r.transmissions > 0);
      }
  }

  TEST_CASE ("runner aggregates")
  {
    Scenario s = Short ("802.15.4");
    const RunReport one = RunScenario (s);
    REQUIRE (one.runs.size () == 1);
    CHECK (one.aggregate.at ("std").at ("pdr").is_null ());
    CHECK_FALSE (one.aggregate.at ("mean").at ("pdr").is_null ());

    s.seeds = {1, 2, 3};
    const RunReport three = RunScenario (s);
    CHECK (three.runs.size () == 3);
    CHECK_FALSE (three.aggregate.at ("std").at ("pdr").is_null ());
    const RunReport again = RunScenario (s);
    CHECK (DumpJson (three.aggregate) == DumpJson (again.aggregate));
  }

  TEST_CASE ("runner writes its files")
  {
    const auto dir = std::filesystem::temp_directory_path () / "vexsim-runner-test";
    std::filesystem::remove_all (dir);
    Scenario s = Short ("smac");
    s.seeds = {1, 2};
    RunnerOptions o;
    o.outDir = dir;
    o.trace = true;
    RunScenario (s, o);
    for (const char *f : {"scenario.yaml", "stations.csv", "aggregate.json"})
      {
        CHECK (std::filesystem::exists (dir / "smac" / f));
      }
    for (const char *f : {"packets.csv", "energy.csv", "trajectory.csv", "summary.json", "trace.log"})
      {
        CHECK (std::filesystem::exists (dir / "smac" / "seed-2" / f));
      }
    CHECK (LoadScenario (dir / "smac" / "scenario.yaml").horizon == 60.0);
    std::filesystem::remove_all (dir);
  }

  TEST_CASE ("comparison rules")
  {
    CHECK_THROWS_AS (CheckComparable ({Short ("smac"), Short ("smac")}), ConfigError);
    Scenario longer = Short ("tdma");
    longer.horizon = 61.0;
    try
      {
        CheckComparable ({Short ("smac"), longer});
        FAIL ("differing scenarios accepted");
      }
    catch (const ConfigError &e)
      {
        CHECK (std::string (e.what ()).find ("horizon_s") != std::string::npos);
      }

    const Comparison single = Compare ({RunScenario (Short ("802.11"))});
    CHECK (single.columns.size () == 1);
    CHECK (single.verdicts.empty ());

    std::vector<RunReport> reports;
    for (const char *mac : kMacNames)
      {
        reports.push_back (RunScenario (Short (mac)));
      }
    const Comparison four = Compare (reports);
    CHECK (four.columns.size () == 4);
    CHECK_FALSE (four.verdicts.empty ());
    const std::string table = FormatComparison (four);
    for (const char *mac : kMacNames)
      {
        CHECK (table.find (mac) != std::string::npos);
      }
    const auto j = ComparisonJson (four);
    CHECK (j.at ("columns").size () == 4);
  }
}
