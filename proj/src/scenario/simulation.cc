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

#include "vexsim/scenario/simulation.h"

#include "vexsim/app/emission.h"
#include "vexsim/phy/wireless-channel.h"

#include <cmath>
#include <memory>
#include <string>

namespace vexsim {

namespace {

class World;

// One station or vehicle: a MAC and a routing agent glued together.
class Node : public AodvHost, public MacUpper
{
public:
  Node (World &world, NodeId id) : m_world (world), m_id (id) {}

  bool SendFrame (FrameKind kind, NodeId nextHop, const Packet &packet) override;
  std::vector<Packet> ReclaimQueued (NodeId nextHop) override;
  void SetReceiverWanted (bool wanted) override { mac->SetReceiverWanted (wanted); }
  void DeliverData (const Packet &packet) override;
  void DataDropped (const Packet &packet, DropReason reason) override;

  void MacReceive (const Frame &frame) override { aodv->Receive (frame); }
  void MacTxDone (const Frame &frame, TxStatus status) override { aodv->TxDone (frame, status); }

  std::unique_ptr<Mac> mac;
  std::unique_ptr<AodvRouting> aodv;

private:
  World &m_world;
  NodeId m_id;
};

struct Vehicle
{
  NodeId node;
  VehicleMotion motion;
  RngStream mobilityRng;
  EmissionGenerator emissions;
  std::unique_ptr<EnergyMeter> meter;
  bool alive = true;
};

class World
{
public:
  World (const Scenario &scenario, std::uint64_t seed, const RunOptions &options);

  RunResult Run ();

  void Delivered (const Packet &packet);
  void Dropped (const Packet &packet, DropReason reason);

private:
  Position PositionOf (NodeId id) const;
  std::unique_ptr<Mac> MakeMac (NodeId id, bool isVehicle);
  void MobilityTick (std::size_t vehicle, std::uint64_t k);
  void TrafficTick (std::size_t vehicle, std::uint64_t k);
  void Record (std::size_t vehicle);

  const Scenario &m_scenario;
  std::uint64_t m_seed;
  RunOptions m_options;
  Tracer m_tracer;
  Scheduler m_scheduler;
  BaseStationLayout m_layout;
  std::vector<Vehicle> m_vehicles;
  std::unique_ptr<WirelessChannel> m_channel;
  std::shared_ptr<TdmaSchedule> m_tdma;
  std::vector<std::unique_ptr<Node>> m_nodes;
  NodeId m_server;
  std::uint64_t m_packetsPerVehicle;
  PacketLedger m_ledger;
  AlertMonitor m_alerts;
  std::vector<TrajectoryPoint> m_trajectory;
};

bool
Node::SendFrame (FrameKind kind, NodeId nextHop, const Packet &packet)
{
  Frame f;
  f.kind = kind;
  f.receiver = nextHop;
  f.packet = packet;
  return mac->Enqueue (std::move (f));
}

std::vector<Packet>
Node::ReclaimQueued (NodeId nextHop)
{
  std::vector<Packet> out;
  for (auto &f : mac->Reclaim (nextHop))
    {
      if (f.kind == FrameKind::Data)
        {
          out.push_back (std::move (f.packet));
        }
    }
  return out;
}

void
Node::DeliverData (const Packet &packet)
{
  m_world.Delivered (packet);
}

void
Node::DataDropped (const Packet &packet, DropReason reason)
{
  m_world.Dropped (packet, reason);
}

World::World (const Scenario &scenario, std::uint64_t seed, const RunOptions &options)
  : m_scenario (scenario),
    m_seed (seed),
    m_options (options),
    m_tracer (options.trace ? Tracer (*options.trace) : Tracer ()),
    m_layout (PlaceBaseStations (scenario.grid, scenario.stations)),
    m_server (static_cast<NodeId> (m_layout.serverIndex)),
    m_packetsPerVehicle (CbrPacketCount (scenario.cbr, scenario.horizon)),
    m_alerts (scenario.alert)
{
  const std::size_t stations = scenario.stations;
  const std::size_t total = stations + scenario.mobility.vehicles;

  for (std::size_t i = 0; i < scenario.mobility.vehicles; ++i)
    {
      const NodeId id = static_cast<NodeId> (stations + i);
      const std::string tag = "v" + std::to_string (i);
      RngStream placeRng (seed, "placement/" + tag);
      VehicleMotion motion = PlaceVehicle (scenario.grid, scenario.mobility.speed, placeRng);
      m_vehicles.push_back (Vehicle{id, motion, RngStream (seed, "mobility/" + tag),
                                    EmissionGenerator (id,
                                                       scenario.dirtyVehicle ? kDirtyProfile
                                                                             : kCleanProfile,
                                                       RngStream (seed, "emission/" + tag)),
                                    nullptr});
    }

  m_channel = std::make_unique<WirelessChannel> (
      m_scheduler, scenario.channel, total, [this] (NodeId id) { return PositionOf (id); },
      &m_tracer);
  m_channel->SetUnackedLossObserver ([this] (const Frame &frame, DropReason reason) {
    Dropped (frame.packet, reason);
  });

  if (scenario.mac == "tdma")
    {
      m_tdma = std::make_shared<TdmaSchedule> (scenario.tdma, total);
    }

  for (std::size_t id = 0; id < total; ++id)
    {
      const bool isVehicle = id >= stations;
      auto node = std::make_unique<Node> (*this, static_cast<NodeId> (id));
      node->mac = MakeMac (static_cast<NodeId> (id), isVehicle);
      node->aodv = std::make_unique<AodvRouting> (
          static_cast<NodeId> (id), m_scheduler, scenario.aodv, *node,
          RngStream (seed, "aodv/" + std::to_string (id)), m_tracer);
      node->mac->SetUpper (node.get ());
      m_channel->Attach (static_cast<NodeId> (id), node->mac.get ());
      m_nodes.push_back (std::move (node));
    }

  for (std::size_t i = 0; i < m_vehicles.size (); ++i)
    {
      Vehicle &v = m_vehicles[i];
      v.meter = std::make_unique<EnergyMeter> (m_scheduler, v.node, scenario.energy, m_tracer);
      EnergyMeter *meter = v.meter.get ();
      m_channel->SetModeObserver (v.node, [meter] (RadioMode mode) { meter->OnModeChange (mode); });
      v.meter->SetDepletionCallback ([this, i] () {
        Vehicle &veh = m_vehicles[i];
        veh.alive = false;
        m_nodes[veh.node]->aodv->Shutdown ();
        m_nodes[veh.node]->mac->Shutdown ();
      });
    }
}

Position
World::PositionOf (NodeId id) const
{
  if (id < m_layout.stations.size ())
    {
      return m_layout.stations[id];
    }
  return m_vehicles[id - m_layout.stations.size ()].motion.position;
}

std::unique_ptr<Mac>
World::MakeMac (NodeId id, bool isVehicle)
{
  const Scenario &s = m_scenario;
  RngStream rng (m_seed, "mac/" + std::to_string (id));
  if (s.mac == "802.11")
    {
      return std::make_unique<CsmaCaMac> (id, m_scheduler, *m_channel, std::move (rng), m_tracer,
                                          s.csma, s.ifqLength);
    }
  if (s.mac == "802.15.4")
    {
      LrWpanConfig cfg = s.lrwpan;
      // the battery node only listens when it has a reason to
      cfg.rxOnWhenIdle = !isVehicle;
      return std::make_unique<LrWpanMac> (id, m_scheduler, *m_channel, std::move (rng), m_tracer,
                                          cfg, s.ifqLength);
    }
  if (s.mac == "tdma")
    {
      return std::make_unique<TdmaMac> (id, m_scheduler, *m_channel, std::move (rng), m_tracer,
                                        m_tdma, !isVehicle, s.ifqLength);
    }
  // smac: every node picks its own schedule
  RngStream phaseRng (m_seed, "smac-phase/" + std::to_string (id));
  double phase = phaseRng.Uniform (0.0, s.smac.period);
  if (phase >= s.smac.period)
    {
      phase = 0.0;
    }
  return std::make_unique<SmacMac> (id, m_scheduler, *m_channel, std::move (rng), m_tracer, s.smac,
                                    phase, s.ifqLength);
}

void
World::Delivered (const Packet &packet)
{
  const auto *data = std::get_if<DataBody> (&packet.body);
  if (!data)
    {
      return;
    }
  const SimTime now = m_scheduler.Now ();
  m_ledger.Received (data->packetId, now, packet.hops);
  try
    {
      m_alerts.OnReport (DecodeReading (data->record), now);
    }
  catch (const RecordError &)
    {
      m_tracer.Log (now, packet.destination, Layer::App, "bad-record",
                    "id=" + std::to_string (data->packetId));
    }
  if (m_tracer.Enabled ())
    {
      m_tracer.Log (now, packet.destination, Layer::App, "rx",
                    "id=" + std::to_string (data->packetId) + " hops="
                        + std::to_string (packet.hops)
                        + " delay=" + std::to_string (now - data->created));
    }
}

void
World::Dropped (const Packet &packet, DropReason reason)
{
  const auto *data = std::get_if<DataBody> (&packet.body);
  if (!data)
    {
      return;
    }
  m_ledger.Dropped (data->packetId, reason, m_scheduler.Now ());
  if (m_tracer.Enabled ())
    {
      m_tracer.Log (m_scheduler.Now (), packet.origin, Layer::App, "drop",
                    "id=" + std::to_string (data->packetId) + " reason="
                        + std::string (ToString (reason)));
    }
}

void
World::Record (std::size_t vehicle)
{
  const Vehicle &v = m_vehicles[vehicle];
  m_trajectory.push_back ({m_scheduler.Now (), v.node, v.motion.position, v.motion.heading});
}

void
World::MobilityTick (std::size_t vehicle, std::uint64_t k)
{
  Vehicle &v = m_vehicles[vehicle];
  const double dt = m_scenario.mobility.updateInterval;
  v.motion = ManhattanStep (v.motion, dt, v.mobilityRng, m_scenario.grid,
                            m_scenario.mobility.turns);
  const SimTime now = m_scheduler.Now ();
  const double period = m_options.trajectoryPeriod;
  if (period > 0.0 && std::abs (now / period - std::round (now / period)) < 1e-6)
    {
      Record (vehicle);
    }
  const SimTime next = static_cast<double> (k + 1) * dt;
  if (next <= m_scenario.horizon)
    {
      m_scheduler.Schedule (next, v.node, EventKind::MobilityTick,
                            [this, vehicle, k] () { MobilityTick (vehicle, k + 1); });
    }
}

void
World::TrafficTick (std::size_t vehicle, std::uint64_t k)
{
  Vehicle &v = m_vehicles[vehicle];
  const SimTime now = m_scheduler.Now ();
  if (v.alive)
    {
      Packet p;
      p.origin = v.node;
      p.destination = m_server;
      DataBody body;
      body.packetId = vehicle * m_packetsPerVehicle + k;
      body.created = now;
      body.appBytes = m_scenario.cbr.payloadBytes;
      body.record = EncodeReading (v.emissions.Next (now));
      p.body = body;
      m_ledger.Generated (body.packetId, v.node, now);
      if (m_tracer.Enabled ())
        {
          m_tracer.Log (now, v.node, Layer::App, "tx", "id=" + std::to_string (body.packetId));
        }
      m_nodes[v.node]->aodv->SendData (std::move (p));
    }
  if (k + 1 < m_packetsPerVehicle)
    {
      const SimTime next = m_scenario.cbr.start + static_cast<double> (k + 1) * m_scenario.cbr.interval;
      m_scheduler.Schedule (next, v.node, EventKind::TrafficTick,
                            [this, vehicle, k] () { TrafficTick (vehicle, k + 1); });
    }
}

RunResult
World::Run ()
{
  for (auto &v : m_vehicles)
    {
      v.meter->Start (m_channel->Mode (v.node));
    }
  for (auto &n : m_nodes)
    {
      n->mac->Start ();
    }
  for (std::size_t i = 0; i < m_vehicles.size (); ++i)
    {
      Record (i);
      m_scheduler.Schedule (m_scenario.mobility.updateInterval, m_vehicles[i].node,
                            EventKind::MobilityTick, [this, i] () { MobilityTick (i, 1); });
      if (m_packetsPerVehicle > 0)
        {
          m_scheduler.Schedule (m_scenario.cbr.start, m_vehicles[i].node, EventKind::TrafficTick,
                                [this, i] () { TrafficTick (i, 0); });
        }
    }

  RunResult r;
  r.events = m_scheduler.RunUntil (m_scenario.horizon);

  r.mac = m_scenario.mac;
  r.seed = m_seed;
  r.server = m_server;
  r.stations = m_layout.stations;
  double residual = 0.0;
  for (auto &v : m_vehicles)
    {
      v.meter->Flush ();
      VehicleEnergy e;
      e.node = v.node;
      e.ledger = v.meter->Ledger ();
      e.series = v.meter->Series ();
      e.depletedAt = v.meter->DepletionTime ();
      e.intervals = v.meter->Intervals ().size ();
      CompensatedSum joules;
      for (const auto &iv : v.meter->Intervals ())
        {
          joules.Add (iv.joules);
        }
      e.intervalJoules = joules.Value ();
      residual += e.ledger.Residual ();
      r.vehicles.push_back (std::move (e));
    }
  residual /= static_cast<double> (m_vehicles.size ());

  r.packets = m_ledger.Records ();
  r.summary = Summarize (r.packets, m_packetsPerVehicle * m_vehicles.size (), residual);
  r.alerts = m_alerts.Decisions ();
  r.trajectory = std::move (m_trajectory);
  r.collisions = m_channel->Collisions ();
  r.transmissions = m_channel->Transmissions ();
  for (const auto &n : m_nodes)
    {
      const MacCounters &c = n->mac->Counters ();
      r.macCounters.framesSent += c.framesSent;
      r.macCounters.acksSent += c.acksSent;
      r.macCounters.retransmissions += c.retransmissions;
      r.macCounters.retryDrops += c.retryDrops;
      r.macCounters.accessFailures += c.accessFailures;
      r.macCounters.ifqDrops += c.ifqDrops;
      r.macCounters.duplicates += c.duplicates;
      const AodvCounters &a = n->aodv->Counters ();
      r.aodvCounters.rreqOriginated += a.rreqOriginated;
      r.aodvCounters.rreqForwarded += a.rreqForwarded;
      r.aodvCounters.rreqDuplicates += a.rreqDuplicates;
      r.aodvCounters.rrepOriginated += a.rrepOriginated;
      r.aodvCounters.rrepForwarded += a.rrepForwarded;
      r.aodvCounters.rrepIgnored += a.rrepIgnored;
      r.aodvCounters.rerrSent += a.rerrSent;
      r.aodvCounters.discoveries += a.discoveries;
      r.aodvCounters.discoveryFailures += a.discoveryFailures;
      r.aodvCounters.linkBreaks += a.linkBreaks;
    }
  return r;
}

} // namespace

RunResult
RunSimulation (const Scenario &scenario, std::uint64_t seed, const RunOptions &options)
{
  scenario.Validate ();
  World world (scenario, seed, options);
  return world.Run ();
}

} // namespace vexsim
