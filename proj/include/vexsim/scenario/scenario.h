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

#ifndef VEXSIM_SCENARIO_SCENARIO_H
#define VEXSIM_SCENARIO_SCENARIO_H

#include "vexsim/app/alerting.h"
#include "vexsim/app/cbr.h"
#include "vexsim/energy/energy-model.h"
#include "vexsim/mac/csma-ca-mac.h"
#include "vexsim/mac/lr-wpan-mac.h"
#include "vexsim/mac/smac-mac.h"
#include "vexsim/mac/tdma-mac.h"
#include "vexsim/mobility/manhattan-mobility.h"
#include "vexsim/phy/two-ray-ground.h"
#include "vexsim/routing/aodv-routing.h"

#include <array>
#include <filesystem>
#include <string>
#include <vector>

namespace vexsim {

inline constexpr std::array<const char *, 4> kMacNames = {"802.11", "802.15.4", "smac", "tdma"};

/// Canonical MAC name, accepting any letter case. Throws ConfigError listing
/// the valid names.
std::string CanonicalMacName (const std::string &name);

struct MobilityConfig
{
  std::size_t vehicles = 1;
  double speed = 10.0; // m/s
  double updateInterval = 0.1;
  TurnProbabilities turns;
};

/// Everything one simulation needs. Defaults reproduce the reference
/// scenario: 25 stations on 1000 x 1000 m, one vehicle, AODV, 2 W radios,
/// 4700 J, 0.1 s / 512 B CBR from 10 s, 600 s, ten replications.
struct Scenario
{
  GridSpec grid;
  std::size_t stations = 25;
  std::string mac = "802.11";
  ChannelParams channel;
  EnergyParams energy;
  MobilityConfig mobility;
  CbrConfig cbr;
  std::size_t ifqLength = 50;
  AodvConfig aodv;
  CsmaConfig csma;
  LrWpanConfig lrwpan;
  TdmaConfig tdma;
  SmacConfig smac;
  AlertPolicy alert;
  bool dirtyVehicle = false;
  double horizon = 600.0;
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};

  /// Throws ConfigError naming the first offending field.
  void Validate () const;
};

/// Parses scenario text. Absent keys keep their defaults; unknown keys and
/// bad values raise ConfigError naming the key.
Scenario ParseScenario (const std::string &text);
/// Reads and parses a file. A missing file raises ConfigError.
Scenario LoadScenario (const std::filesystem::path &path);

/// Fully expanded scenario text; ParseScenario (DumpScenario (s)) == s.
std::string DumpScenario (const Scenario &scenario);

} // namespace vexsim

#endif // VEXSIM_SCENARIO_SCENARIO_H
