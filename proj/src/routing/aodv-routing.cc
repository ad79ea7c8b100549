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

#include "vexsim/routing/aodv-routing.h"

#include "vexsim/mobility/topology.h"

#include <algorithm>
#include <sstream>

namespace vexsim {

void
AodvConfig::Validate () const
{
  if (!(activeRouteTimeout > 0.0))
    {
      throw ConfigError ("routing.active_route_timeout_s: must be positive");
    }
  if (!(rreqWait > 0.0))
    {
      throw ConfigError ("routing.rreq_wait_s: must be positive");
    }
  if (rreqAttempts == 0)
    {
      throw ConfigError ("routing.rreq_attempts: must be >= 1");
    }
  if (broadcastJitter < 0.0)
    {
      throw ConfigError ("routing.broadcast_jitter_s: must be non-negative");
    }
  if (bufferCapacity == 0)
    {
      throw ConfigError ("routing.buffer_packets: must be >= 1");
    }
}

AodvRouting::AodvRouting (NodeId self, Scheduler &scheduler, const AodvConfig &config,
                          AodvHost &host, RngStream rng, Tracer &tracer)
  : m_self (self),
    m_scheduler (scheduler),
    m_config (config),
    m_host (host),
    m_rng (std::move (rng)),
    m_tracer (tracer)
{
  m_config.Validate ();
}

void
AodvRouting::Trace (std::string_view event, std::string_view details) const
{
  if (m_tracer.Enabled ())
    {
      m_tracer.Log (m_scheduler.Now (), m_self, Layer::Rtg, event, details);
    }
}

std::optional<RouteEntry>
AodvRouting::Lookup (NodeId destination) const
{
  if (destination == m_self)
    {
      RouteEntry self;
      self.destination = m_self;
      self.nextHop = m_self;
      self.hopCount = 0;
      self.destinationSeq = m_seq;
      self.validSeq = true;
      self.valid = true;
      self.expiry = std::numeric_limits<double>::infinity ();
      return self;
    }
  return m_table.Lookup (destination, m_scheduler.Now ());
}

bool
AodvRouting::DiscoveryPending (NodeId destination) const
{
  return m_discoveries.contains (destination);
}

Packet
AodvRouting::MakePacket (NodeId destination) const
{
  Packet p;
  p.origin = m_self;
  p.destination = destination;
  return p;
}

void
AodvRouting::UpdateReceiverWanted ()
{
  const bool wanted = !m_discoveries.empty ();
  if (wanted != m_receiverWanted)
    {
      m_receiverWanted = wanted;
      m_host.SetReceiverWanted (wanted);
    }
}

void
AodvRouting::SendData (Packet packet)
{
  if (m_dead)
    {
      return;
    }
  if (packet.destination == m_self)
    {
      m_host.DeliverData (packet);
      return;
    }
  if (auto route = Lookup (packet.destination))
    {
      Forward (std::move (packet), *route);
      return;
    }
  const NodeId dest = packet.destination;
  Buffer (std::move (packet));
  StartDiscovery (dest);
}

void
AodvRouting::Forward (Packet packet, const RouteEntry &route)
{
  if (packet.origin != m_self)
    {
      m_table.Refresh (route.destination, m_scheduler.Now () + m_config.activeRouteTimeout);
    }
  if (!m_host.SendFrame (FrameKind::Data, route.nextHop, packet))
    {
      m_host.DataDropped (packet, DropReason::IfqOverflow);
    }
}

void
AodvRouting::Buffer (Packet packet)
{
  if (m_buffer.size () >= m_config.bufferCapacity)
    {
      Packet oldest = std::move (m_buffer.front ());
      m_buffer.pop_front ();
      m_host.DataDropped (oldest, DropReason::NoRoute);
    }
  m_buffer.push_back (std::move (packet));
}

void
AodvRouting::StartDiscovery (NodeId destination)
{
  if (m_discoveries.contains (destination))
    {
      return;
    }
  ++m_counters.discoveries;
  m_discoveries.emplace (destination, Discovery{});
  UpdateReceiverWanted ();
  SendRreq (destination);
}

void
AodvRouting::SendRreq (NodeId destination)
{
  Discovery &d = m_discoveries.at (destination);
  ++d.attempts;
  ++m_seq;
  ++m_rreqId;
  Rreq rreq;
  rreq.rreqId = m_rreqId;
  rreq.originator = m_self;
  rreq.originatorSeq = m_seq;
  rreq.destination = destination;
  rreq.destinationOnly = m_config.destinationOnly;
  if (const RouteEntry *e = m_table.Find (destination); e != nullptr && e->validSeq)
    {
      rreq.destinationSeq = e->destinationSeq;
      rreq.unknownSeq = false;
    }
  m_seenRreq.emplace (m_self, rreq.rreqId);
  ++m_counters.rreqOriginated;

  std::ostringstream os;
  os << "dst=" << destination << " id=" << rreq.rreqId << " attempt=" << d.attempts;
  Trace ("discovery-start", os.str ());

  Packet p = MakePacket (destination);
  p.body = rreq;
  Broadcast (std::move (p));

  const double wait = m_config.rreqWait * static_cast<double> (1u << (d.attempts - 1));
  d.timer = m_scheduler.ScheduleIn (wait, m_self, EventKind::Timer,
                                    [this, destination] () { DiscoveryTimeout (destination); });
}

void
AodvRouting::DiscoveryTimeout (NodeId destination)
{
  auto it = m_discoveries.find (destination);
  if (it == m_discoveries.end () || m_dead)
    {
      return;
    }
  if (Lookup (destination))
    {
      RouteFound (destination);
      return;
    }
  if (it->second.attempts < m_config.rreqAttempts)
    {
      SendRreq (destination);
      return;
    }
  ++m_counters.discoveryFailures;
  m_discoveries.erase (it);
  Trace ("discovery-fail", "dst=" + std::to_string (destination));
  std::deque<Packet> keep;
  for (auto &p : m_buffer)
    {
      if (p.destination == destination)
        {
          m_host.DataDropped (p, DropReason::NoRoute);
        }
      else
        {
          keep.push_back (std::move (p));
        }
    }
  m_buffer.swap (keep);
  UpdateReceiverWanted ();
}

void
AodvRouting::RouteFound (NodeId destination)
{
  if (auto it = m_discoveries.find (destination); it != m_discoveries.end ())
    {
      m_scheduler.Cancel (it->second.timer);
      m_discoveries.erase (it);
    }
  UpdateReceiverWanted ();
  std::deque<Packet> keep;
  std::vector<Packet> ready;
  for (auto &p : m_buffer)
    {
      if (p.destination == destination)
        {
          ready.push_back (std::move (p));
        }
      else
        {
          keep.push_back (std::move (p));
        }
    }
  m_buffer.swap (keep);
  for (auto &p : ready)
    {
      if (auto route = Lookup (destination))
        {
          Forward (std::move (p), *route);
        }
      else
        {
          Buffer (std::move (p));
        }
    }
}

void
AodvRouting::Broadcast (Packet packet)
{
  const double delay = m_config.broadcastJitter > 0.0
                           ? m_rng.Uniform (0.0, m_config.broadcastJitter)
                           : 0.0;
  m_scheduler.ScheduleIn (delay, m_self, EventKind::Timer, [this, p = std::move (packet)] () {
    if (!m_dead)
      {
        m_host.SendFrame (FrameKind::Routing, kBroadcast, p);
      }
  });
}

void
AodvRouting::SendRerr (const Rerr &rerr, NodeId to)
{
  ++m_counters.rerrSent;
  std::ostringstream os;
  os << "to=";
  if (to == kBroadcast)
    {
      os << '*';
    }
  else
    {
      os << to;
    }
  for (const auto &[dest, seq] : rerr.unreachable)
    {
      os << " dst=" << dest << '/' << seq;
    }
  Trace ("rerr-send", os.str ());
  Packet p = MakePacket (to);
  p.body = rerr;
  if (to == kBroadcast)
    {
      Broadcast (std::move (p));
    }
  else
    {
      m_host.SendFrame (FrameKind::Routing, to, p);
    }
}

void
AodvRouting::Receive (const Frame &frame)
{
  if (m_dead)
    {
      return;
    }
  const NodeId prev = frame.transmitter;
  const Packet &p = frame.packet;
  if (const auto *rreq = std::get_if<Rreq> (&p.body))
    {
      HandleRreq (*rreq, prev);
    }
  else if (const auto *rrep = std::get_if<Rrep> (&p.body))
    {
      if (frame.receiver == m_self)
        {
          HandleRrep (*rrep, prev);
        }
    }
  else if (const auto *rerr = std::get_if<Rerr> (&p.body))
    {
      HandleRerr (*rerr, prev);
    }
  else if (frame.receiver == m_self)
    {
      Packet data = p;
      ++data.hops;
      HandleData (std::move (data), prev);
    }
}

void
AodvRouting::HandleData (Packet packet, NodeId previousHop)
{
  if (packet.destination == m_self)
    {
      m_host.DeliverData (packet);
      return;
    }
  if (auto route = Lookup (packet.destination))
    {
      Forward (std::move (packet), *route);
      return;
    }
  Trace ("no-route-drop", "dst=" + std::to_string (packet.destination));
  m_host.DataDropped (packet, DropReason::NoRoute);
  Rerr rerr;
  const RouteEntry *e = m_table.Find (packet.destination);
  rerr.unreachable.emplace_back (packet.destination, e ? e->destinationSeq : 0u);
  SendRerr (rerr, previousHop);
}

void
AodvRouting::HandleRreq (const Rreq &rreq, NodeId previousHop)
{
  if (rreq.originator == m_self)
    {
      return;
    }
  if (!m_seenRreq.emplace (rreq.originator, rreq.rreqId).second)
    {
      ++m_counters.rreqDuplicates;
      return;
    }
  const SimTime now = m_scheduler.Now ();
  const SimTime expiry = now + m_config.activeRouteTimeout;
  const std::uint32_t hops = rreq.hopCount + 1u;

  // one-hop route to whoever we heard this from
  if (previousHop != rreq.originator)
    {
      const RouteEntry *n = m_table.Find (previousHop);
      if (n == nullptr || !n->UsableAt (now) || n->hopCount > 1)
        {
          RouteEntry e;
          e.destination = previousHop;
          e.nextHop = previousHop;
          e.hopCount = 1;
          e.valid = true;
          e.expiry = expiry;
          if (n != nullptr)
            {
              e.destinationSeq = n->destinationSeq;
              e.validSeq = n->validSeq;
            }
          m_table.Install (e);
        }
    }

  // reverse route to the originator
  const RouteEntry *r = m_table.Find (rreq.originator);
  const bool better = r == nullptr || !r->validSeq || !r->UsableAt (now)
                      || rreq.originatorSeq > r->destinationSeq
                      || (rreq.originatorSeq == r->destinationSeq && hops < r->hopCount);
  if (better)
    {
      RouteEntry e;
      e.destination = rreq.originator;
      e.nextHop = previousHop;
      e.hopCount = hops;
      e.destinationSeq = std::max (rreq.originatorSeq, r ? r->destinationSeq : 0u);
      e.validSeq = true;
      e.valid = true;
      e.expiry = std::max (expiry, r && r->UsableAt (now) ? r->expiry : 0.0);
      m_table.Install (e);
    }
  const RouteEntry reverse = *m_table.Find (rreq.originator);

  if (rreq.destination == m_self)
    {
      m_seq = std::max (m_seq, rreq.unknownSeq ? 0u : rreq.destinationSeq) + 1;
      Rrep rrep;
      rrep.destination = m_self;
      rrep.destinationSeq = m_seq;
      rrep.originator = rreq.originator;
      rrep.hopCount = 0;
      rrep.lifetime = m_config.activeRouteTimeout;
      ++m_counters.rrepOriginated;
      std::ostringstream os;
      os << "orig=" << rreq.originator << " seq=" << m_seq << " via=" << reverse.nextHop;
      Trace ("rrep-send", os.str ());
      Packet p = MakePacket (rreq.originator);
      p.body = rrep;
      m_host.SendFrame (FrameKind::Routing, reverse.nextHop, p);
      return;
    }

  if (auto fwd = m_table.Lookup (rreq.destination, now);
      !rreq.destinationOnly && fwd && fwd->validSeq && (rreq.unknownSeq || fwd->destinationSeq >= rreq.destinationSeq)
      && fwd->nextHop != previousHop)
    {
      // the route is about to carry traffic; keep it alive long enough
      // for the first packets to cross it
      m_table.Refresh (rreq.destination, expiry);
      Rrep rrep;
      rrep.destination = rreq.destination;
      rrep.destinationSeq = fwd->destinationSeq;
      rrep.originator = rreq.originator;
      rrep.hopCount = static_cast<std::uint8_t> (fwd->hopCount);
      rrep.lifetime = m_table.Find (rreq.destination)->expiry - now;
      m_table.Find (rreq.destination)->precursors.insert (reverse.nextHop);
      m_table.Find (rreq.originator)->precursors.insert (fwd->nextHop);
      ++m_counters.rrepOriginated;
      std::ostringstream os;
      os << "orig=" << rreq.originator << " dst=" << rreq.destination
         << " seq=" << fwd->destinationSeq << " hops=" << fwd->hopCount << " intermediate";
      Trace ("rrep-send", os.str ());
      Packet p = MakePacket (rreq.originator);
      p.body = rrep;
      m_host.SendFrame (FrameKind::Routing, reverse.nextHop, p);
      return;
    }

  Rreq fwd = rreq;
  fwd.hopCount = static_cast<std::uint8_t> (hops);
  if (const RouteEntry *d = m_table.Find (rreq.destination); d && d->validSeq)
    {
      if (fwd.unknownSeq || d->destinationSeq > fwd.destinationSeq)
        {
          fwd.destinationSeq = d->destinationSeq;
          fwd.unknownSeq = false;
        }
    }
  ++m_counters.rreqForwarded;
  Packet p = MakePacket (rreq.destination);
  p.origin = rreq.originator;
  p.body = fwd;
  Broadcast (std::move (p));
}

void
AodvRouting::HandleRrep (const Rrep &rrep, NodeId previousHop)
{
  const SimTime now = m_scheduler.Now ();
  const std::uint32_t hops = rrep.hopCount + 1u;
  const RouteEntry *e = m_table.Find (rrep.destination);
  const bool accept = e == nullptr || !e->validSeq || rrep.destinationSeq > e->destinationSeq
                      || (rrep.destinationSeq == e->destinationSeq
                          && (!e->UsableAt (now) || hops < e->hopCount));
  std::ostringstream os;
  os << "dst=" << rrep.destination << " seq=" << rrep.destinationSeq << " hops=" << hops
     << " via=" << previousHop;
  if (!accept)
    {
      ++m_counters.rrepIgnored;
      Trace ("rrep-ignore", os.str ());
      return;
    }
  RouteEntry route;
  route.destination = rrep.destination;
  route.nextHop = previousHop;
  route.hopCount = hops;
  route.destinationSeq = rrep.destinationSeq;
  route.validSeq = true;
  route.valid = true;
  route.expiry = now + m_config.activeRouteTimeout;
  m_table.Install (route);
  Trace ("route-install", os.str ());

  if (rrep.originator == m_self)
    {
      RouteFound (rrep.destination);
      return;
    }
  auto reverse = m_table.Lookup (rrep.originator, now);
  if (!reverse)
    {
      return;
    }
  m_table.Find (rrep.destination)->precursors.insert (reverse->nextHop);
  m_table.Find (rrep.originator)->precursors.insert (previousHop);
  Rrep fwd = rrep;
  fwd.hopCount = static_cast<std::uint8_t> (hops);
  ++m_counters.rrepForwarded;
  Packet p = MakePacket (rrep.originator);
  p.body = fwd;
  m_host.SendFrame (FrameKind::Routing, reverse->nextHop, p);
}

void
AodvRouting::HandleRerr (const Rerr &rerr, NodeId previousHop)
{
  Rerr out;
  for (const auto &[dest, seq] : rerr.unreachable)
    {
      RouteEntry *e = m_table.Find (dest);
      if (e == nullptr || !e->valid || e->nextHop != previousHop)
        {
          continue;
        }
      e->valid = false;
      e->destinationSeq = std::max (e->destinationSeq, seq);
      Trace ("route-invalidate", "dst=" + std::to_string (dest) + " rerr");
      if (!e->precursors.empty ())
        {
          out.unreachable.emplace_back (dest, e->destinationSeq);
        }
    }
  if (!out.unreachable.empty ())
    {
      SendRerr (out, kBroadcast);
    }
}

void
AodvRouting::TxDone (const Frame &frame, TxStatus status)
{
  if (m_dead)
    {
      return;
    }
  if (status == TxStatus::RetryExceeded)
    {
      if (frame.kind == FrameKind::Data)
        {
          m_host.DataDropped (frame.packet, DropReason::RetryExceeded);
        }
      if (!frame.IsBroadcast ())
        {
          LinkBreak (frame.receiver);
        }
    }
  else if (status == TxStatus::ChannelAccessFailure && frame.kind == FrameKind::Data)
    {
      m_host.DataDropped (frame.packet, DropReason::ChannelAccessFailure);
    }
}

void
AodvRouting::LinkBreak (NodeId nextHop)
{
  ++m_counters.linkBreaks;
  Trace ("link-break", "next=" + std::to_string (nextHop));
  const auto affected = m_table.InvalidateVia (nextHop, m_scheduler.Now ());
  Rerr rerr;
  for (const auto &e : affected)
    {
      Trace ("route-invalidate", "dst=" + std::to_string (e.destination) + " link-break");
      if (!e.precursors.empty ())
        {
          rerr.unreachable.emplace_back (e.destination, e.destinationSeq);
        }
    }
  if (!rerr.unreachable.empty ())
    {
      SendRerr (rerr, kBroadcast);
    }
  std::set<NodeId> rediscover;
  for (auto &p : m_host.ReclaimQueued (nextHop))
    {
      if (!p.IsData ())
        {
          continue;
        }
      if (p.origin == m_self)
        {
          rediscover.insert (p.destination);
          Buffer (std::move (p));
        }
      else
        {
          m_host.DataDropped (p, DropReason::NoRoute);
        }
    }
  for (NodeId dest : rediscover)
    {
      if (auto route = Lookup (dest))
        {
          RouteFound (dest);
        }
      else
        {
          StartDiscovery (dest);
        }
    }
}

void
AodvRouting::Shutdown ()
{
  m_dead = true;
  for (auto &[dest, d] : m_discoveries)
    {
      m_scheduler.Cancel (d.timer);
    }
  m_discoveries.clear ();
  m_buffer.clear ();
}

} // namespace vexsim
