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

#include <iomanip>
#include <set>
#include <sstream>

namespace vexsim {

void
CheckComparable (const std::vector<Scenario> &scenarios)
{
  std::set<std::string> macs;
  std::string reference;
  for (std::size_t i = 0; i < scenarios.size (); ++i)
    {
      if (!macs.insert (scenarios[i].mac).second)
        {
          throw ConfigError ("compare: MAC '" + scenarios[i].mac + "' appears more than once");
        }
      Scenario neutral = scenarios[i];
      neutral.mac = kMacNames[0];
      const std::string dump = DumpScenario (neutral);
      if (i == 0)
        {
          reference = dump;
          continue;
        }
      if (dump != reference)
        {
          // report the first line that differs; it carries the key
          std::istringstream a (reference), b (dump);
          std::string la, lb;
          while (std::getline (a, la) && std::getline (b, lb) && la == lb)
            {
            }
          throw ConfigError ("compare: scenarios differ beyond the MAC ('" + la + "' vs '" + lb
                             + "')");
        }
    }
}

const ComparisonColumn *
Comparison::Find (const std::string &mac) const
{
  for (const auto &c : columns)
    {
      if (c.mac == mac)
        {
          return &c;
        }
    }
  return nullptr;
}

ComparisonColumn
SummarizeReport (const RunReport &report)
{
  ComparisonColumn c;
  c.mac = report.scenario.mac;
  c.runs = report.runs.size ();
  const nlohmann::json &mean = report.aggregate.at ("mean");
  auto get = [&mean] (const char *key) -> std::optional<double> {
    if (!mean.contains (key) || mean.at (key).is_null ())
      {
        return std::nullopt;
      }
    return mean.at (key).get<double> ();
  };
  c.pdr = get ("pdr");
  c.delayMin = get ("delay_min_s");
  c.delayMax = get ("delay_max_s");
  c.delayAvg = get ("delay_avg_s");
  c.transmittedFraction = get ("transmitted_fraction");
  c.residualEnergyJ = get ("residual_energy_j");
  for (const auto &r : report.runs)
    {
      if (r.summary.delay && r.summary.delay->max > 2.0 * r.summary.delay->mean)
        {
          ++c.spikeRuns;
        }
    }
  return c;
}

namespace {

std::string
Fmt (std::optional<double> v, int precision = 6)
{
  if (!v)
    {
      return "N/A";
    }
  std::ostringstream os;
  os << std::fixed << std::setprecision (precision) << *v;
  return os.str ();
}

} // namespace

Comparison
Compare (const std::vector<RunReport> &reports)
{
  std::vector<Scenario> scenarios;
  for (const auto &r : reports)
    {
      scenarios.push_back (r.scenario);
    }
  CheckComparable (scenarios);

  Comparison cmp;
  for (const auto &r : reports)
    {
      cmp.columns.push_back (SummarizeReport (r));
    }
  if (cmp.columns.size () < 2)
    {
      return cmp;
    }

  auto add = [&cmp] (std::string name, bool holds, std::string detail) {
    cmp.verdicts.push_back ({std::move (name), holds, std::move (detail)});
  };

  // mean delay ordering over the MACs present
  {
    std::vector<const ComparisonColumn *> chain;
    for (const char *mac : {"802.15.4", "802.11", "tdma", "smac"})
      {
        if (const auto *c = cmp.Find (mac); c && c->delayAvg)
          {
            chain.push_back (c);
          }
      }
    if (chain.size () >= 2)
      {
        bool ok = true;
        std::string name = "mean delay order ";
        std::string detail;
        for (std::size_t i = 0; i < chain.size (); ++i)
          {
            name += (i ? " < " : "") + chain[i]->mac;
            detail += (i ? " / " : "") + Fmt (chain[i]->delayAvg);
            if (i > 0 && !(*chain[i - 1]->delayAvg < *chain[i]->delayAvg))
              {
                ok = false;
              }
          }
        add (name, ok, detail + " s");
      }
  }
  if (const auto *c = cmp.Find ("smac"))
    {
      add ("smac mean delay above 1 s", c->delayAvg && *c->delayAvg > 1.0, Fmt (c->delayAvg) + " s");
    }
  for (const char *mac : {"802.11", "802.15.4"})
    {
      if (const auto *c = cmp.Find (mac))
        {
          add (std::string (mac) + " mean delay below 0.1 s", c->delayAvg && *c->delayAvg < 0.1,
               Fmt (c->delayAvg) + " s");
        }
    }

  const std::pair<const char *, double> floors[] = {{"802.11", 0.90}, {"802.15.4", 0.85}, {"tdma", 0.85}};
  for (const auto &[mac, floor] : floors)
    {
      if (const auto *c = cmp.Find (mac))
        {
          add (std::string (mac) + " delivery ratio at least " + Fmt (floor, 2),
               c->pdr && *c->pdr >= floor, Fmt (c->pdr, 4));
        }
    }
  if (const auto *c = cmp.Find ("smac"))
    {
      add ("smac delivery ratio at most 0.50", c->pdr && *c->pdr <= 0.50, Fmt (c->pdr, 4));
    }

  if (const auto *tdma = cmp.Find ("tdma"); tdma && tdma->residualEnergyJ)
    {
      bool ok = true;
      std::string detail = "tdma " + Fmt (tdma->residualEnergyJ, 3);
      for (const auto &c : cmp.columns)
        {
          if (c.mac == "tdma")
            {
              continue;
            }
          detail += ", " + c.mac + " " + Fmt (c.residualEnergyJ, 3);
          if (!c.residualEnergyJ || !(*tdma->residualEnergyJ > *c.residualEnergyJ))
            {
              ok = false;
            }
        }
      add ("tdma keeps the most vehicle energy", ok, detail + " J");
    }
  if (const auto *smac = cmp.Find ("smac"); smac && smac->residualEnergyJ)
    {
      bool ok = true;
      bool any = false;
      std::string detail = "smac " + Fmt (smac->residualEnergyJ, 3);
      for (const char *mac : {"tdma", "802.15.4"})
        {
          if (const auto *c = cmp.Find (mac))
            {
              any = true;
              detail += ", " + std::string (mac) + " " + Fmt (c->residualEnergyJ, 3);
              if (!c->residualEnergyJ || !(*smac->residualEnergyJ < *c->residualEnergyJ))
                {
                  ok = false;
                }
            }
        }
      if (any)
        {
          add ("smac keeps less energy than tdma and 802.15.4", ok, detail + " J");
        }
    }
  if (const auto *smac = cmp.Find ("smac"); smac && smac->runs > 0)
    {
      add ("smac delay spikes (max > 2x mean) in at least 80% of runs",
           smac->spikeRuns * 10 >= smac->runs * 8,
           std::to_string (smac->spikeRuns) + " of " + std::to_string (smac->runs));
    }
  return cmp;
}

std::string
FormatComparison (const Comparison &cmp)
{
  std::ostringstream os;
  const int w = 14;
  os << std::left << std::setw (24) << "metric";
  for (const auto &c : cmp.columns)
    {
      os << std::right << std::setw (w) << c.mac;
    }
  os << '\n';
  auto row = [&] (const char *label, auto getter, int precision) {
    os << std::left << std::setw (24) << label;
    for (const auto &c : cmp.columns)
      {
        os << std::right << std::setw (w) << Fmt (getter (c), precision);
      }
    os << '\n';
  };
  row ("pdr", [] (const ComparisonColumn &c) { return c.pdr; }, 4);
  row ("delay min (s)", [] (const ComparisonColumn &c) { return c.delayMin; }, 6);
  row ("delay max (s)", [] (const ComparisonColumn &c) { return c.delayMax; }, 6);
  row ("delay avg (s)", [] (const ComparisonColumn &c) { return c.delayAvg; }, 6);
  row ("transmitted fraction", [] (const ComparisonColumn &c) { return c.transmittedFraction; }, 4);
  row ("residual energy (J)", [] (const ComparisonColumn &c) { return c.residualEnergyJ; }, 3);
  if (!cmp.verdicts.empty ())
    {
      os << '\n';
      for (const auto &v : cmp.verdicts)
        {
          os << (v.holds ? "[yes] " : "[no]  ") << v.name << " (" << v.detail << ")\n";
        }
    }
  return os.str ();
}

nlohmann::json
ComparisonJson (const Comparison &cmp)
{
  auto opt = [] (std::optional<double> v) {
    return v ? nlohmann::json (*v) : nlohmann::json (nullptr);
  };
  nlohmann::json j;
  nlohmann::json cols = nlohmann::json::array ();
  for (const auto &c : cmp.columns)
    {
      cols.push_back ({{"mac", c.mac},
                       {"runs", c.runs},
                       {"pdr", opt (c.pdr)},
                       {"delay_min_s", opt (c.delayMin)},
                       {"delay_max_s", opt (c.delayMax)},
                       {"delay_avg_s", opt (c.delayAvg)},
                       {"transmitted_fraction", opt (c.transmittedFraction)},
                       {"residual_energy_j", opt (c.residualEnergyJ)},
                       {"spike_runs", c.spikeRuns}});
    }
  j["columns"] = cols;
  nlohmann::json verdicts = nlohmann::json::array ();
  for (const auto &v : cmp.verdicts)
    {
      verdicts.push_back ({{"name", v.name}, {"holds", v.holds}, {"detail", v.detail}});
    }
  j["verdicts"] = verdicts;
  return j;
}

} // namespace vexsim
