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

#ifndef VEXSIM_ROUTING_AODV_ROUTING_H
#define VEXSIM_ROUTING_AODV_ROUTING_H

#include "vexsim/core/drop-reason.h"
#include "vexsim/core/rng-stream.h"
#include "vexsim/core/scheduler.h"
#include "vexsim/core/trace.h"
#include "vexsim/mac/mac-base.h"
#include "vexsim/routing/routing-table.h"

#include <deque>
#include <map>
#include <set>

namespace vexsim {

struct AodvConfig
{
  double activeRouteTimeout = 10.0;
  /// Wait after the first RREQ; doubles with every further attempt.
  double rreqWait = 1.0;
  std::uint32_t rreqAttempts = 3;
  double broadcastJitter = 0.01;
  /// Data packets held while a route is being discovered.
  std::size_t bufferCapacity = 64;
  /// Requests ask for a reply from the destination itself, so every hop of
  /// a new route is installed fresh.
  bool destinationOnly = true;

  void Validate () const;
};

/// What the routing agent needs from its node.
class AodvHost
{
public:
  virtual ~AodvHost () = default;
  /// Queues a frame at the MAC; false if the interface queue refused it.
  virtual bool SendFrame (FrameKind kind, NodeId nextHop, const Packet &packet) = 0;
  /// Takes back frames still queued at the MAC for `nextHop`.
  virtual std::vector<Packet> ReclaimQueued (NodeId nextHop) = 0;
  virtual void SetReceiverWanted (bool wanted) = 0;
  virtual void DeliverData (const Packet &packet) = 0;
  virtual void DataDropped (const Packet &packet, DropReason reason) = 0;
};

struct AodvCounters
{
  std::uint64_t rreqOriginated = 0;
  std::uint64_t rreqForwarded = 0;
  std::uint64_t rreqDuplicates = 0;
  std::uint64_t rrepOriginated = 0;
  std::uint64_t rrepForwarded = 0;
  std::uint64_t rrepIgnored = 0;
  std::uint64_t rerrSent = 0;
  std::uint64_t discoveries = 0;
  std::uint64_t discoveryFailures = 0;
  std::uint64_t linkBreaks = 0;
};

/**
 * On-demand distance-vector routing with destination sequence numbers.
 * No hello messages: a link is declared broken only when the MAC gives
 * up on a unicast frame. Routes used for forwarding are refreshed on
 * use; an originator's own routes are not, so a sender on the move
 * periodically rediscovers.
 */
class AodvRouting
{
public:
  AodvRouting (NodeId self, Scheduler &scheduler, const AodvConfig &config, AodvHost &host,
               RngStream rng, Tracer &tracer);

  /// Data from the local application.
  void SendData (Packet packet);
  /// Frame handed up by the MAC.
  void Receive (const Frame &frame);
  /// Outcome of a frame this node queued.
  void TxDone (const Frame &frame, TxStatus status);

  /// Usable route; a node always reaches itself with hop count 0.
  std::optional<RouteEntry> Lookup (NodeId destination) const;
  const RoutingTable &Table () const { return m_table; }
  const AodvCounters &Counters () const { return m_counters; }
  std::size_t Buffered () const { return m_buffer.size (); }
  bool DiscoveryPending (NodeId destination) const;
  std::uint32_t SequenceNumber () const { return m_seq; }

  /// Drops everything buffered (node out of energy).
  void Shutdown ();

private:
  struct Discovery
  {
    std::uint32_t attempts = 0;
    EventHandle timer = 0;
  };

  void Forward (Packet packet, const RouteEntry &route);
  void Buffer (Packet packet);
  void StartDiscovery (NodeId destination);
  void SendRreq (NodeId destination);
  void DiscoveryTimeout (NodeId destination);
  void RouteFound (NodeId destination);
  void HandleData (Packet packet, NodeId previousHop);
  void HandleRreq (const Rreq &rreq, NodeId previousHop);
  void HandleRrep (const Rrep &rrep, NodeId previousHop);
  void HandleRerr (const Rerr &rerr, NodeId previousHop);
  void LinkBreak (NodeId nextHop);
  void Broadcast (Packet packet);
  void SendRerr (const Rerr &rerr, NodeId to);
  Packet MakePacket (NodeId destination) const;
  void UpdateReceiverWanted ();
  void Trace (std::string_view event, std::string_view details) const;

  NodeId m_self;
  Scheduler &m_scheduler;
  AodvConfig m_config;
  AodvHost &m_host;
  RngStream m_rng;
  Tracer &m_tracer;
  RoutingTable m_table;
  AodvCounters m_counters;
  std::uint32_t m_seq = 0;
  std::uint32_t m_rreqId = 0;
  std::set<std::pair<NodeId, std::uint32_t>> m_seenRreq;
  std::map<NodeId, Discovery> m_discoveries;
  std::deque<Packet> m_buffer;
  bool m_receiverWanted = false;
  bool m_dead = false;
};

} // namespace vexsim

#endif // VEXSIM_ROUTING_AODV_ROUTING_H
