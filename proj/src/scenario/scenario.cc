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

#include "vexsim/scenario/scenario.h"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace vexsim {

std::string
CanonicalMacName (const std::string &name)
{
  std::string lower = name;
  std::transform (lower.begin (), lower.end (), lower.begin (),
                  [] (unsigned char c) { return static_cast<char> (std::tolower (c)); });
  for (const char *known : kMacNames)
    {
      if (lower == known)
        {
          return known;
        }
    }
  std::string msg = "mac.name: unknown MAC '" + name + "' (valid: ";
  for (std::size_t i = 0; i < kMacNames.size (); ++i)
    {
      msg += (i ? ", " : "") + std::string (kMacNames[i]);
    }
  throw ConfigError (msg + ")");
}

void
Scenario::Validate () const
{
  grid.Validate ();
  const auto side = static_cast<std::size_t> (std::llround (std::sqrt (static_cast<double> (stations))));
  if (stations == 0 || side * side != stations)
    {
      throw ConfigError ("topology.base_stations: must be a positive perfect square (got "
                         + std::to_string (stations) + ")");
    }
  if (CanonicalMacName (mac) != mac)
    {
      throw ConfigError ("mac.name: '" + mac + "' is not in canonical form");
    }
  ChannelParams ch = channel;
  ch.Finalize ();
  energy.Validate ();
  if (mobility.vehicles == 0)
    {
      throw ConfigError ("vehicles.count: at least one vehicle is required");
    }
  if (!(mobility.speed > 0.0))
    {
      throw ConfigError ("vehicles.speed_mps: must be positive");
    }
  if (!(mobility.updateInterval > 0.0))
    {
      throw ConfigError ("vehicles.update_interval_s: must be positive");
    }
  const TurnProbabilities &t = mobility.turns;
  if (t.straight < 0.0 || t.left < 0.0 || t.right < 0.0
      || std::abs (t.straight + t.left + t.right - 1.0) > 1e-9)
    {
      throw ConfigError ("vehicles.turn_*: probabilities must be non-negative and sum to 1");
    }
  cbr.Validate ();
  if (ifqLength == 0)
    {
      throw ConfigError ("queue.length: must be positive");
    }
  aodv.Validate ();
  csma.Validate ();
  lrwpan.Validate ();
  tdma.Validate ();
  smac.Validate ();
  if (mac == "tdma" && stations + mobility.vehicles > tdma.dataSlots)
    {
      throw ConfigError ("mac.tdma.data_slots: fewer slots than nodes");
    }
  alert.Validate ();
  if (!(horizon > cbr.start))
    {
      throw ConfigError ("simulation.horizon_s: must exceed traffic.start_s");
    }
  if (seeds.empty ())
    {
      throw ConfigError ("simulation.seeds: at least one seed is required");
    }
  if (std::set<std::uint64_t> (seeds.begin (), seeds.end ()).size () != seeds.size ())
    {
      throw ConfigError ("simulation.seeds: duplicate seed");
    }
}

namespace {

bool
Absent (const YAML::Node &n)
{
  return !n.IsDefined () || n.IsNull ();
}

// One mapping of the scenario file. Remembers which keys were read so that
// leftovers can be reported as unknown.
class Section
{
public:
  Section (YAML::Node node, std::string path)
    : m_node (std::move (node)),
      m_path (std::move (path))
  {
    if (!Absent (m_node) && !m_node.IsMap ())
      {
        throw ConfigError (Where ("") + "expected a mapping");
      }
  }

  Section Child (const std::string &key)
  {
    return Section (Take (key), Name (key));
  }

  void Real (const std::string &key, double &out, bool positive = false)
  {
    YAML::Node n = Take (key);
    if (Absent (n))
      {
        return;
      }
    double v;
    try
      {
        v = n.as<double> ();
      }
    catch (const YAML::Exception &)
      {
        throw ConfigError (Where (key) + "expected a number");
      }
    if (!std::isfinite (v) || v < 0.0)
      {
        throw ConfigError (Where (key) + "must be a non-negative number");
      }
    if (positive && v == 0.0)
      {
        throw ConfigError (Where (key) + "must be positive");
      }
    out = v;
  }

  template <typename T>
  void Count (const std::string &key, T &out)
  {
    YAML::Node n = Take (key);
    if (Absent (n))
      {
        return;
      }
    out = static_cast<T> (AsCount (n, key));
  }

  void Flag (const std::string &key, bool &out)
  {
    YAML::Node n = Take (key);
    if (Absent (n))
      {
        return;
      }
    try
      {
        out = n.as<bool> ();
      }
    catch (const YAML::Exception &)
      {
        throw ConfigError (Where (key) + "expected true or false");
      }
  }

  std::optional<std::string> Text (const std::string &key)
  {
    YAML::Node n = Take (key);
    if (Absent (n))
      {
        return std::nullopt;
      }
    if (!n.IsScalar ())
      {
        throw ConfigError (Where (key) + "expected a scalar");
      }
    return n.Scalar ();
  }

  /// Accepts only `expected` (the model this simulator implements).
  void Fixed (const std::string &key, const std::string &expected)
  {
    if (auto v = Text (key); v && *v != expected)
      {
        throw ConfigError (Where (key) + "only '" + expected + "' is supported (got '" + *v + "')");
      }
  }

  YAML::Node Raw (const std::string &key) { return Take (key); }

  std::uint64_t AsCount (const YAML::Node &n, const std::string &key) const
  {
    long long v;
    try
      {
        v = n.as<long long> ();
      }
    catch (const YAML::Exception &)
      {
        throw ConfigError (Where (key) + "expected a whole number");
      }
    if (v < 0)
      {
        throw ConfigError (Where (key) + "must be non-negative");
      }
    return static_cast<std::uint64_t> (v);
  }

  void Finish () const
  {
    if (Absent (m_node))
      {
        return;
      }
    for (const auto &kv : m_node)
      {
        const std::string key = kv.first.as<std::string> ();
        if (!m_used.count (key))
          {
            throw ConfigError (Name (key) + ": unknown key");
          }
      }
  }

  std::string Name (const std::string &key) const
  {
    return m_path.empty () ? key : m_path + "." + key;
  }

  std::string Where (const std::string &key) const { return Name (key) + ": "; }

private:
  YAML::Node Take (const std::string &key)
  {
    m_used.insert (key);
    if (Absent (m_node))
      {
        return YAML::Node ();
      }
    const YAML::Node &lookup = m_node; // const access never inserts
    YAML::Node n = lookup[key];
    if (!n.IsDefined () || n.IsNull ())
      {
        return YAML::Node ();
      }
    return n;
  }

  YAML::Node m_node;
  std::string m_path;
  std::set<std::string> m_used;
};

void
ReadMacParams (Section &mac, Scenario &s)
{
  Section csma = mac.Child ("csma");
  csma.Count ("cw_min", s.csma.cwMin);
  csma.Count ("cw_max", s.csma.cwMax);
  csma.Real ("slot_s", s.csma.slot, true);
  csma.Real ("sifs_s", s.csma.sifs, true);
  csma.Real ("difs_s", s.csma.difs, true);
  csma.Count ("retry_limit", s.csma.retryLimit);
  csma.Real ("plcp_overhead_s", s.csma.plcpOverhead);
  csma.Count ("header_bytes", s.csma.headerBytes);
  csma.Count ("ack_bytes", s.csma.ackBytes);
  csma.Finish ();

  Section lr = mac.Child ("lrwpan");
  lr.Count ("min_be", s.lrwpan.minBe);
  lr.Count ("max_be", s.lrwpan.maxBe);
  lr.Count ("max_csma_backoffs", s.lrwpan.maxCsmaBackoffs);
  lr.Count ("max_frame_retries", s.lrwpan.maxFrameRetries);
  lr.Count ("unit_backoff_symbols", s.lrwpan.unitBackoffSymbols);
  lr.Count ("cca_symbols", s.lrwpan.ccaSymbols);
  lr.Count ("turnaround_symbols", s.lrwpan.turnaroundSymbols);
  lr.Count ("ack_wait_symbols", s.lrwpan.ackWaitSymbols);
  lr.Count ("bits_per_symbol", s.lrwpan.bitsPerSymbol);
  lr.Count ("header_bytes", s.lrwpan.headerBytes);
  lr.Count ("ack_bytes", s.lrwpan.ackBytes);
  lr.Count ("phy_header_bytes", s.lrwpan.phyHeaderBytes);
  lr.Finish ();

  Section tdma = mac.Child ("tdma");
  tdma.Real ("slot_s", s.tdma.slotDuration, true);
  tdma.Count ("preamble_slots", s.tdma.preambleSlots);
  tdma.Count ("data_slots", s.tdma.dataSlots);
  tdma.Count ("header_bytes", s.tdma.headerBytes);
  tdma.Finish ();

  Section smac = mac.Child ("smac");
  smac.Real ("period_s", s.smac.period, true);
  smac.Real ("duty_cycle", s.smac.dutyCycle, true);
  smac.Real ("slot_s", s.smac.slot, true);
  smac.Real ("difs_s", s.smac.difs, true);
  smac.Count ("contention_window", s.smac.contentionWindow);
  smac.Count ("header_bytes", s.smac.headerBytes);
  smac.Count ("sync_bytes", s.smac.syncBytes);
  smac.Count ("sync_every", s.smac.syncEvery);
  smac.Count ("discovery_every", s.smac.discoveryEvery);
  smac.Real ("neighbour_timeout_s", s.smac.neighbourTimeout, true);
  smac.Finish ();
}

std::string
Num (double v)
{
  char buf[64];
  auto res = std::to_chars (buf, buf + sizeof buf, v);
  return std::string (buf, res.ptr);
}

} // namespace

Scenario
ParseScenario (const std::string &text)
{
  YAML::Node root;
  try
    {
      root = YAML::Load (text);
    }
  catch (const YAML::Exception &e)
    {
      throw ConfigError (std::string ("scenario: malformed file: ") + e.what ());
    }

  Scenario s;
  Section top (root, "");

  Section sim = top.Child ("simulation");
  sim.Real ("horizon_s", s.horizon, true);
  std::optional<std::uint64_t> runs;
  if (YAML::Node n = sim.Raw ("runs"); !Absent (n))
    {
      runs = sim.AsCount (n, "runs");
      if (*runs == 0)
        {
          throw ConfigError ("simulation.runs: must be positive");
        }
      s.seeds.clear ();
      for (std::uint64_t k = 1; k <= *runs; ++k)
        {
          s.seeds.push_back (k);
        }
    }
  if (YAML::Node n = sim.Raw ("seeds"); !Absent (n))
    {
      if (!n.IsSequence ())
        {
          throw ConfigError ("simulation.seeds: expected a list of whole numbers");
        }
      s.seeds.clear ();
      for (const auto &item : n)
        {
          s.seeds.push_back (sim.AsCount (item, "seeds"));
        }
      if (runs && *runs != s.seeds.size ())
        {
          throw ConfigError ("simulation.runs: disagrees with the length of simulation.seeds");
        }
    }
  sim.Finish ();

  Section topo = top.Child ("topology");
  topo.Real ("width_m", s.grid.width, true);
  topo.Real ("height_m", s.grid.height, true);
  topo.Real ("street_spacing_m", s.grid.streetSpacing, true);
  topo.Count ("base_stations", s.stations);
  topo.Finish ();

  Section veh = top.Child ("vehicles");
  veh.Count ("count", s.mobility.vehicles);
  veh.Fixed ("mobility", "manhattan");
  veh.Real ("speed_mps", s.mobility.speed, true);
  veh.Real ("update_interval_s", s.mobility.updateInterval, true);
  veh.Real ("turn_straight", s.mobility.turns.straight);
  veh.Real ("turn_left", s.mobility.turns.left);
  veh.Real ("turn_right", s.mobility.turns.right);
  veh.Flag ("dirty_profile", s.dirtyVehicle);
  veh.Finish ();

  // `mac` is either a bare name or a mapping with a name and tuning blocks.
  if (YAML::Node macNode = top.Raw ("mac"); !Absent (macNode))
    {
      if (macNode.IsScalar ())
        {
          s.mac = CanonicalMacName (macNode.Scalar ());
        }
      else
        {
          Section mac (macNode, "mac");
          if (auto name = mac.Text ("name"))
            {
              s.mac = CanonicalMacName (*name);
            }
          ReadMacParams (mac, s);
          mac.Finish ();
        }
    }

  Section rtg = top.Child ("routing");
  rtg.Fixed ("protocol", "aodv");
  rtg.Real ("active_route_timeout_s", s.aodv.activeRouteTimeout, true);
  rtg.Real ("rreq_wait_s", s.aodv.rreqWait, true);
  rtg.Count ("rreq_attempts", s.aodv.rreqAttempts);
  rtg.Real ("broadcast_jitter_s", s.aodv.broadcastJitter);
  rtg.Count ("buffer_packets", s.aodv.bufferCapacity);
  rtg.Flag ("destination_only", s.aodv.destinationOnly);
  rtg.Finish ();

  Section queue = top.Child ("queue");
  queue.Fixed ("type", "DropTail/PriQueue");
  queue.Count ("length", s.ifqLength);
  queue.Finish ();

  Section ch = top.Child ("channel");
  ch.Fixed ("propagation", "two-ray-ground");
  ch.Fixed ("antenna", "omni");
  ch.Real ("tx_power_w", s.channel.txPowerW, true);
  ch.Real ("frequency_hz", s.channel.frequencyHz, true);
  ch.Real ("antenna_height_m", s.channel.heightTx, true);
  s.channel.heightRx = s.channel.heightTx;
  ch.Real ("antenna_gain", s.channel.gainTx, true);
  s.channel.gainRx = s.channel.gainTx;
  ch.Real ("system_loss", s.channel.systemLoss, true);
  ch.Real ("rx_range_m", s.channel.rxRangeM, true);
  ch.Real ("cs_range_m", s.channel.csRangeM, true);
  ch.Real ("bitrate_bps", s.channel.bitrate, true);
  ch.Finish ();

  Section en = top.Child ("energy");
  en.Real ("initial_j", s.energy.initialJ);
  en.Real ("tx_w", s.energy.txW);
  en.Real ("rx_w", s.energy.rxW);
  en.Real ("idle_w", s.energy.idleW);
  en.Real ("sleep_w", s.energy.sleepW);
  en.Finish ();

  Section tr = top.Child ("traffic");
  tr.Fixed ("generator", "cbr");
  tr.Real ("cbr_interval_s", s.cbr.interval, true);
  tr.Count ("cbr_packet_bytes", s.cbr.payloadBytes);
  tr.Real ("start_s", s.cbr.start);
  tr.Finish ();

  Section al = top.Child ("alert");
  al.Real ("co_ppm", s.alert.coPpm, true);
  al.Real ("hc_ppm", s.alert.hcPpm, true);
  al.Real ("nox_ppm", s.alert.noxPpm, true);
  al.Count ("window", s.alert.window);
  al.Finish ();

  top.Finish ();
  s.Validate ();
  return s;
}

Scenario
LoadScenario (const std::filesystem::path &path)
{
  std::ifstream in (path);
  if (!in)
    {
      throw ConfigError ("scenario: cannot open '" + path.string () + "'");
    }
  std::ostringstream text;
  text << in.rdbuf ();
  return ParseScenario (text.str ());
}

std::string
DumpScenario (const Scenario &s)
{
  YAML::Emitter out;
  auto kv = [&out] (const char *key, const std::string &value) {
    out << YAML::Key << key << YAML::Value << value;
  };
  auto num = [&kv] (const char *key, double v) { kv (key, Num (v)); };
  auto cnt = [&kv] (const char *key, std::uint64_t v) { kv (key, std::to_string (v)); };

  out << YAML::BeginMap;

  out << YAML::Key << "simulation" << YAML::Value << YAML::BeginMap;
  num ("horizon_s", s.horizon);
  out << YAML::Key << "seeds" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (auto seed : s.seeds)
    {
      out << seed;
    }
  out << YAML::EndSeq << YAML::EndMap;

  out << YAML::Key << "topology" << YAML::Value << YAML::BeginMap;
  num ("width_m", s.grid.width);
  num ("height_m", s.grid.height);
  num ("street_spacing_m", s.grid.streetSpacing);
  cnt ("base_stations", s.stations);
  out << YAML::EndMap;

  out << YAML::Key << "vehicles" << YAML::Value << YAML::BeginMap;
  cnt ("count", s.mobility.vehicles);
  kv ("mobility", "manhattan");
  num ("speed_mps", s.mobility.speed);
  num ("update_interval_s", s.mobility.updateInterval);
  num ("turn_straight", s.mobility.turns.straight);
  num ("turn_left", s.mobility.turns.left);
  num ("turn_right", s.mobility.turns.right);
  kv ("dirty_profile", s.dirtyVehicle ? "true" : "false");
  out << YAML::EndMap;

  out << YAML::Key << "mac" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "name" << YAML::Value << YAML::DoubleQuoted << s.mac;
  out << YAML::Key << "csma" << YAML::Value << YAML::BeginMap;
  cnt ("cw_min", s.csma.cwMin);
  cnt ("cw_max", s.csma.cwMax);
  num ("slot_s", s.csma.slot);
  num ("sifs_s", s.csma.sifs);
  num ("difs_s", s.csma.difs);
  cnt ("retry_limit", s.csma.retryLimit);
  num ("plcp_overhead_s", s.csma.plcpOverhead);
  cnt ("header_bytes", s.csma.headerBytes);
  cnt ("ack_bytes", s.csma.ackBytes);
  out << YAML::EndMap;
  out << YAML::Key << "lrwpan" << YAML::Value << YAML::BeginMap;
  cnt ("min_be", s.lrwpan.minBe);
  cnt ("max_be", s.lrwpan.maxBe);
  cnt ("max_csma_backoffs", s.lrwpan.maxCsmaBackoffs);
  cnt ("max_frame_retries", s.lrwpan.maxFrameRetries);
  cnt ("unit_backoff_symbols", s.lrwpan.unitBackoffSymbols);
  cnt ("cca_symbols", s.lrwpan.ccaSymbols);
  cnt ("turnaround_symbols", s.lrwpan.turnaroundSymbols);
  cnt ("ack_wait_symbols", s.lrwpan.ackWaitSymbols);
  cnt ("bits_per_symbol", s.lrwpan.bitsPerSymbol);
  cnt ("header_bytes", s.lrwpan.headerBytes);
  cnt ("ack_bytes", s.lrwpan.ackBytes);
  cnt ("phy_header_bytes", s.lrwpan.phyHeaderBytes);
  out << YAML::EndMap;
  out << YAML::Key << "tdma" << YAML::Value << YAML::BeginMap;
  num ("slot_s", s.tdma.slotDuration);
  cnt ("preamble_slots", s.tdma.preambleSlots);
  cnt ("data_slots", s.tdma.dataSlots);
  cnt ("header_bytes", s.tdma.headerBytes);
  out << YAML::EndMap;
  out << YAML::Key << "smac" << YAML::Value << YAML::BeginMap;
  num ("period_s", s.smac.period);
  num ("duty_cycle", s.smac.dutyCycle);
  num ("slot_s", s.smac.slot);
  num ("difs_s", s.smac.difs);
  cnt ("contention_window", s.smac.contentionWindow);
  cnt ("header_bytes", s.smac.headerBytes);
  cnt ("sync_bytes", s.smac.syncBytes);
  cnt ("sync_every", s.smac.syncEvery);
  cnt ("discovery_every", s.smac.discoveryEvery);
  num ("neighbour_timeout_s", s.smac.neighbourTimeout);
  out << YAML::EndMap;
  out << YAML::EndMap;

  out << YAML::Key << "routing" << YAML::Value << YAML::BeginMap;
  kv ("protocol", "aodv");
  num ("active_route_timeout_s", s.aodv.activeRouteTimeout);
  num ("rreq_wait_s", s.aodv.rreqWait);
  cnt ("rreq_attempts", s.aodv.rreqAttempts);
  num ("broadcast_jitter_s", s.aodv.broadcastJitter);
  cnt ("buffer_packets", s.aodv.bufferCapacity);
  kv ("destination_only", s.aodv.destinationOnly ? "true" : "false");
  out << YAML::EndMap;

  out << YAML::Key << "queue" << YAML::Value << YAML::BeginMap;
  kv ("type", "DropTail/PriQueue");
  cnt ("length", s.ifqLength);
  out << YAML::EndMap;

  out << YAML::Key << "channel" << YAML::Value << YAML::BeginMap;
  kv ("propagation", "two-ray-ground");
  kv ("antenna", "omni");
  num ("tx_power_w", s.channel.txPowerW);
  num ("frequency_hz", s.channel.frequencyHz);
  num ("antenna_height_m", s.channel.heightTx);
  num ("antenna_gain", s.channel.gainTx);
  num ("system_loss", s.channel.systemLoss);
  num ("rx_range_m", s.channel.rxRangeM);
  num ("cs_range_m", s.channel.csRangeM);
  num ("bitrate_bps", s.channel.bitrate);
  out << YAML::EndMap;

  out << YAML::Key << "energy" << YAML::Value << YAML::BeginMap;
  num ("initial_j", s.energy.initialJ);
  num ("tx_w", s.energy.txW);
  num ("rx_w", s.energy.rxW);
  num ("idle_w", s.energy.idleW);
  num ("sleep_w", s.energy.sleepW);
  out << YAML::EndMap;

  out << YAML::Key << "traffic" << YAML::Value << YAML::BeginMap;
  kv ("generator", "cbr");
  num ("cbr_interval_s", s.cbr.interval);
  cnt ("cbr_packet_bytes", s.cbr.payloadBytes);
  num ("start_s", s.cbr.start);
  out << YAML::EndMap;

  out << YAML::Key << "alert" << YAML::Value << YAML::BeginMap;
  num ("co_ppm", s.alert.coPpm);
  num ("hc_ppm", s.alert.hcPpm);
  num ("nox_ppm", s.alert.noxPpm);
  cnt ("window", s.alert.window);
  out << YAML::EndMap;

  out << YAML::EndMap;
  return std::string (out.c_str ()) + "\n";
}

} // namespace vexsim
