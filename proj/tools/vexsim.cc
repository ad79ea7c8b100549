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

// vexsim: run, compare and validate vehicle-emission network scenarios.

#include "vexsim/scenario/compare.h"
#include "vexsim/scenario/runner.h"
#include "vexsim/scenario/scenario.h"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

using namespace vexsim;

namespace {

enum ExitCode
{
  kOk = 0,
  kUsage = 1,
  kConfig = 2,
  kRuntime = 3,
};

struct Common
{
  std::vector<std::string> scenarios;
  std::vector<std::string> macs;
  std::optional<std::uint64_t> seed;
  std::vector<std::uint64_t> seeds;
  std::string outDir;
  bool trace = false;
  bool quiet = false;
};

Scenario
Load (const std::string &path)
{
  return path.empty () ? Scenario{} : LoadScenario (path);
}

void
ApplySeeds (Scenario &s, const Common &c)
{
  if (c.seed)
    {
      s.seeds = {*c.seed};
    }
  else if (!c.seeds.empty ())
    {
      s.seeds = c.seeds;
    }
  s.Validate ();
}

RunnerOptions
MakeRunnerOptions (const Common &c)
{
  RunnerOptions ro;
  if (!c.outDir.empty ())
    {
      ro.outDir = c.outDir;
    }
  ro.trace = c.trace;
  ro.progress = c.quiet ? nullptr : &std::cerr;
  if (c.trace && !ro.outDir)
    {
      throw ConfigError ("--trace: needs an output directory (--out-dir or VEXSIM_OUT_DIR)");
    }
  return ro;
}

int
DoValidate (const Common &c)
{
  Scenario s = Load (c.scenarios.empty () ? "" : c.scenarios.front ());
  if (!c.macs.empty ())
    {
      s.mac = CanonicalMacName (c.macs.front ());
    }
  ApplySeeds (s, c);
  std::cout << DumpScenario (s);
  std::cerr << "scenario is valid\n";
  return kOk;
}

int
DoRun (const Common &c)
{
  Scenario s = Load (c.scenarios.empty () ? "" : c.scenarios.front ());
  if (!c.macs.empty ())
    {
      s.mac = CanonicalMacName (c.macs.front ());
    }
  ApplySeeds (s, c);
  RunReport report = RunScenario (s, MakeRunnerOptions (c));
  std::cout << FormatComparison (Compare ({report}));
  return kOk;
}

int
DoCompare (const Common &c)
{
  std::vector<Scenario> scenarios;
  if (c.scenarios.size () > 1)
    {
      for (const auto &path : c.scenarios)
        {
          scenarios.push_back (Load (path));
        }
    }
  else
    {
      Scenario base = Load (c.scenarios.empty () ? "" : c.scenarios.front ());
      std::vector<std::string> macs = c.macs;
      if (macs.empty ())
        {
          macs.assign (kMacNames.begin (), kMacNames.end ());
        }
      for (const auto &m : macs)
        {
          Scenario s = base;
          s.mac = CanonicalMacName (m);
          scenarios.push_back (s);
        }
    }
  for (auto &s : scenarios)
    {
      ApplySeeds (s, c);
    }
  CheckComparable (scenarios);

  RunnerOptions ro = MakeRunnerOptions (c);
  std::vector<RunReport> reports;
  for (const auto &s : scenarios)
    {
      reports.push_back (RunScenario (s, ro));
    }
  Comparison cmp = Compare (reports);
  std::cout << FormatComparison (cmp);
  if (ro.outDir)
    {
      std::ofstream out (*ro.outDir / "comparison.json", std::ios::binary);
      if (!out)
        {
          throw std::runtime_error ("cannot write comparison.json");
        }
      out << DumpJson (ComparisonJson (cmp));
    }
  return kOk;
}

} // namespace

int
main (int argc, char **argv)
{
  CLI::App app{"Vehicle emission monitoring network simulator"};
  app.require_subcommand (1);

  Common c;
  if (const char *env = std::getenv ("VEXSIM_OUT_DIR"))
    {
      c.outDir = env;
    }

  auto addCommon = [&c] (CLI::App *cmd, bool multiScenario) {
    if (multiScenario)
      {
        cmd->add_option ("--scenario", c.scenarios, "Scenario file (repeat to compare files)");
        cmd->add_option ("--mac", c.macs, "MAC names to compare (802.11, 802.15.4, smac, tdma)");
      }
    else
      {
        cmd->add_option ("--scenario", c.scenarios, "Scenario file (defaults when omitted)")
            ->expected (1);
        cmd->add_option ("--mac", c.macs, "Override the MAC (802.11, 802.15.4, smac, tdma)")
            ->expected (1);
      }
    auto *one = cmd->add_option ("--seed", c.seed, "Run a single seed");
    cmd->add_option ("--seeds", c.seeds, "Seed list, e.g. --seeds 1,2,3")
        ->delimiter (',')
        ->excludes (one);
    cmd->add_option ("--out-dir", c.outDir, "Output directory (default $VEXSIM_OUT_DIR)");
    cmd->add_flag ("--trace", c.trace, "Write a per-event trace log for every run");
    cmd->add_flag ("-q,--quiet", c.quiet, "No per-run progress lines");
  };

  auto *run = app.add_subcommand ("run", "Run every seed of one scenario");
  addCommon (run, false);
  auto *compare = app.add_subcommand ("compare", "Run one scenario per MAC and compare them");
  addCommon (compare, true);
  auto *validate = app.add_subcommand ("validate", "Check a scenario and print it in full");
  addCommon (validate, false);

  try
    {
      app.parse (argc, argv);
    }
  catch (const CLI::ParseError &e)
    {
      const int rc = app.exit (e);
      return rc == 0 ? kOk : kUsage;
    }

  try
    {
      if (*run)
        {
          return DoRun (c);
        }
      if (*compare)
        {
          return DoCompare (c);
        }
      return DoValidate (c);
    }
  catch (const ConfigError &e)
    {
      std::cerr << "configuration error: " << e.what () << '\n';
      return kConfig;
    }
  catch (const std::exception &e)
    {
      std::cerr << "runtime error: " << e.what () << '\n';
      return kRuntime;
    }
}
