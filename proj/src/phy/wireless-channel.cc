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

#include "vexsim/phy/wireless-channel.h"

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace vexsim {

const char *
ToString (RadioMode mode)
{
  switch (mode)
    {
    case RadioMode::Tx:
      return "TX";
    case RadioMode::Rx:
      return "RX";
    case RadioMode::Idle:
      return "IDLE";
    case RadioMode::Sleep:
      return "SLEEP";
    }
  return "?";
}

WirelessChannel::WirelessChannel (Scheduler &scheduler, const ChannelParams &params,
                                  std::size_t nodeCount, PositionFn positions, Tracer *tracer)
  : m_scheduler (scheduler),
    m_params (params),
    m_positions (std::move (positions)),
    m_tracer (tracer),
    m_nodes (nodeCount)
{
  if (m_params.rxThresholdW == 0.0 || m_params.csThresholdW == 0.0)
    {
      m_params.Finalize ();
    }
}

void
WirelessChannel::Attach (NodeId node, ChannelListener *listener)
{
  m_nodes.at (node).listener = listener;
}

void
WirelessChannel::SetModeObserver (NodeId node, std::function<void (RadioMode)> observer)
{
  m_nodes.at (node).modeObserver = std::move (observer);
}

void
WirelessChannel::SetUnackedLossObserver (std::function<void (const Frame &, DropReason)> observer)
{
  m_lossObserver = std::move (observer);
}

void
WirelessChannel::SetTransmissionObserver (std::function<void (const TransmissionRecord &)> observer)
{
  m_txObserver = std::move (observer);
}

double
WirelessChannel::RxPower (NodeId from, NodeId to) const
{
  const double d = Distance (m_positions (from), m_positions (to));
  // co-located nodes: clamp to a tiny separation instead of failing
  return RxPowerTwoRay (m_params, std::max (d, 1e-3));
}

bool
WirelessChannel::InRxRange (NodeId from, NodeId to) const
{
  return RxPower (from, to) >= m_params.rxThresholdW;
}

bool
WirelessChannel::CarrierBusy (NodeId node) const
{
  const NodeState &st = m_nodes.at (node);
  if (!st.radioOn)
    {
      throw std::logic_error ("carrier sense queried on a sleeping radio");
    }
  return st.sensed > 0;
}

void
WirelessChannel::RefreshMode (NodeId node)
{
  NodeState &st = m_nodes[node];
  RadioMode mode;
  if (!st.radioOn)
    {
      mode = RadioMode::Sleep;
    }
  else if (st.transmitting)
    {
      mode = RadioMode::Tx;
    }
  else if (st.sensed > 0)
    {
      mode = RadioMode::Rx;
    }
  else
    {
      mode = RadioMode::Idle;
    }
  if (mode != st.mode)
    {
      st.mode = mode;
      if (st.modeObserver)
        {
          st.modeObserver (mode);
        }
    }
}

void
WirelessChannel::SetRadioOn (NodeId node, bool on)
{
  NodeState &st = m_nodes.at (node);
  if (st.radioOn == on)
    {
      return;
    }
  if (!on && st.transmitting)
    {
      throw std::logic_error ("radio switched off while transmitting");
    }
  st.radioOn = on;
  if (!on)
    {
      for (auto &in : st.incoming)
        {
          in.missed = true;
        }
    }
  RefreshMode (node);
}

const TransmissionRecord &
WirelessChannel::BeginTransmission (NodeId sender, Frame frame, double airtime)
{
  NodeState &tx = m_nodes.at (sender);
  if (!tx.radioOn)
    {
      throw std::logic_error ("transmission from a sleeping radio");
    }
  if (tx.transmitting)
    {
      throw std::logic_error ("node " + std::to_string (sender) + " already transmitting");
    }
  if (!(airtime > 0.0))
    {
      throw std::logic_error ("non-positive airtime");
    }
  const SimTime now = m_scheduler.Now ();
  const std::uint64_t id = m_nextTxId++;
  ++m_transmissions;

  frame.transmitter = sender;
  Active active;
  active.record = TransmissionRecord{id, sender, std::move (frame), now, now + airtime};

  tx.transmitting = true;
  for (auto &in : tx.incoming)
    {
      in.missed = true;
    }

  std::vector<NodeId> becameBusy;
  for (NodeId n = 0; n < m_nodes.size (); ++n)
    {
      if (n == sender)
        {
          continue;
        }
      const double p = RxPower (sender, n);
      if (p < m_params.csThresholdW)
        {
          continue;
        }
      NodeState &st = m_nodes[n];
      bool corrupted = false;
      for (auto &in : st.incoming)
        {
          if (in.end > now)
            {
              in.corrupted = true;
              corrupted = true;
            }
        }
      const bool listening = st.radioOn && !st.transmitting;
      st.incoming.push_back ({id, p, now + airtime, corrupted, !listening});
      if (st.sensed++ == 0)
        {
          becameBusy.push_back (n);
        }
      active.reached.push_back (n);
    }

  if (m_tracer && m_tracer->Enabled ())
    {
      std::ostringstream os;
      os << ToString (active.record.frame.kind) << " to=";
      if (active.record.frame.IsBroadcast ())
        {
          os << '*';
        }
      else
        {
          os << active.record.frame.receiver;
        }
      os << " bytes=" << active.record.frame.SizeBytes () << " airtime=" << airtime;
      m_tracer->Log (now, sender, Layer::Phy, "tx-start", os.str ());
    }

  auto [it, inserted] = m_active.emplace (id, std::move (active));
  m_scheduler.Schedule (now + airtime, sender, EventKind::TransmissionEnd,
                        [this, id] () { EndTransmission (id); });
  if (m_txObserver)
    {
      m_txObserver (it->second.record);
    }

  RefreshMode (sender);
  for (NodeId n : it->second.reached)
    {
      RefreshMode (n);
    }
  for (NodeId n : becameBusy)
    {
      if (m_nodes[n].listener && m_nodes[n].radioOn && !m_nodes[n].transmitting)
        {
          m_nodes[n].listener->OnCarrierBusy ();
        }
    }
  return it->second.record;
}

void
WirelessChannel::EndTransmission (std::uint64_t txId)
{
  auto node = m_active.extract (txId);
  Active &active = node.mapped ();
  const TransmissionRecord &rec = active.record;
  const Frame &frame = rec.frame;

  m_nodes[rec.sender].transmitting = false;

  struct Delivery
  {
    NodeId node;
    double powerW;
  };
  std::vector<Delivery> delivered;
  std::vector<NodeId> becameIdle;
  std::optional<DropReason> unackedLoss;
  const bool trackLoss = frame.kind == FrameKind::Data && !frame.expectsAck && !frame.IsBroadcast ();
  bool receiverReached = false;

  for (NodeId n : active.reached)
    {
      NodeState &st = m_nodes[n];
      auto it = std::find_if (st.incoming.begin (), st.incoming.end (),
                              [txId] (const Incoming &in) { return in.txId == txId; });
      const Incoming in = *it;
      st.incoming.erase (it);
      const bool decodable = in.powerW >= m_params.rxThresholdW;
      const bool ok = decodable && !in.corrupted && !in.missed && st.radioOn && !st.transmitting;
      if (decodable && in.corrupted && !in.missed)
        {
          ++m_collisions;
        }
      if (ok)
        {
          delivered.push_back ({n, in.powerW});
        }
      if (trackLoss && n == frame.receiver)
        {
          receiverReached = true;
          if (!ok)
            {
              unackedLoss = (in.corrupted && !in.missed && decodable)
                                ? DropReason::CollisionCorruption
                                : DropReason::LinkLoss;
            }
        }
      if (--st.sensed == 0)
        {
          becameIdle.push_back (n);
        }
    }
  if (trackLoss && !receiverReached)
    {
      unackedLoss = DropReason::LinkLoss;
    }

  RefreshMode (rec.sender);
  for (NodeId n : active.reached)
    {
      RefreshMode (n);
    }

  if (unackedLoss && m_lossObserver)
    {
      m_lossObserver (frame, *unackedLoss);
    }
  if (m_nodes[rec.sender].listener)
    {
      m_nodes[rec.sender].listener->OnTransmitEnd (frame);
    }
  // deliveries and idle notifications in node order, frame before idle
  std::size_t d = 0;
  std::size_t i = 0;
  while (d < delivered.size () || i < becameIdle.size ())
    {
      const NodeId nd = d < delivered.size () ? delivered[d].node : kBroadcast;
      const NodeId ni = i < becameIdle.size () ? becameIdle[i] : kBroadcast;
      if (nd <= ni)
        {
          if (m_nodes[nd].listener)
            {
              m_nodes[nd].listener->OnReceive (frame, delivered[d].powerW);
            }
          ++d;
        }
      else
        {
          if (m_nodes[ni].listener && m_nodes[ni].radioOn)
            {
              m_nodes[ni].listener->OnCarrierIdle ();
            }
          ++i;
        }
    }
}

} // namespace vexsim
