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

#ifndef VEXSIM_PHY_WIRELESS_CHANNEL_H
#define VEXSIM_PHY_WIRELESS_CHANNEL_H

#include "vexsim/core/drop-reason.h"
#include "vexsim/core/scheduler.h"
#include "vexsim/core/trace.h"
#include "vexsim/mobility/topology.h"
#include "vexsim/phy/frame.h"
#include "vexsim/phy/two-ray-ground.h"

#include <functional>
#include <unordered_map>
#include <vector>

namespace vexsim {

enum class RadioMode : std::uint8_t
{
  Tx,
  Rx,
  Idle,
  Sleep,
};

const char *ToString (RadioMode mode);

class ChannelListener
{
public:
  virtual ~ChannelListener () = default;
  virtual void OnReceive (const Frame &frame, double rxPowerW) = 0;
  virtual void OnTransmitEnd (const Frame &frame) = 0;
  virtual void OnCarrierBusy () {}
  virtual void OnCarrierIdle () {}
};

struct TransmissionRecord
{
  std::uint64_t id = 0;
  NodeId sender = 0;
  Frame frame;
  SimTime start = 0.0;
  SimTime end = 0.0;
};

/**
 * Shared half-duplex medium.
 *
 * Every node within carrier-sense range of a transmitter tracks the
 * arrival. A frame is handed up only if the node listened for all of it,
 * the power clears the rx threshold, and nothing else at or above the
 * carrier-sense threshold overlapped it. Sleeping nodes neither sense nor
 * receive; transmitting nodes receive nothing.
 */
class WirelessChannel
{
public:
  using PositionFn = std::function<Position (NodeId)>;

  WirelessChannel (Scheduler &scheduler, const ChannelParams &params, std::size_t nodeCount,
                   PositionFn positions, Tracer *tracer = nullptr);

  void Attach (NodeId node, ChannelListener *listener);

  void SetRadioOn (NodeId node, bool on);
  bool IsRadioOn (NodeId node) const { return m_nodes.at (node).radioOn; }

  /// Throws std::logic_error if the sender is asleep or already on air.
  const TransmissionRecord &BeginTransmission (NodeId sender, Frame frame, double airtime);

  /// Throws std::logic_error when queried for a sleeping node.
  bool CarrierBusy (NodeId node) const;
  bool IsTransmitting (NodeId node) const { return m_nodes.at (node).transmitting; }
  RadioMode Mode (NodeId node) const { return m_nodes.at (node).mode; }

  double RxPower (NodeId from, NodeId to) const;
  bool InRxRange (NodeId from, NodeId to) const;

  const ChannelParams &Params () const { return m_params; }
  std::size_t NodeCount () const { return m_nodes.size (); }

  void SetModeObserver (NodeId node, std::function<void (RadioMode)> observer);
  /// Fired for unicast DATA frames sent without ACK whose next hop did not
  /// decode them. Purely for bookkeeping; no MAC sees it.
  void SetUnackedLossObserver (std::function<void (const Frame &, DropReason)> observer);
  void SetTransmissionObserver (std::function<void (const TransmissionRecord &)> observer);

  /// Receptions that would have decoded but were spoiled by overlap.
  std::uint64_t Collisions () const { return m_collisions; }
  std::uint64_t Transmissions () const { return m_transmissions; }

private:
  struct Incoming
  {
    std::uint64_t txId;
    double powerW;
    SimTime end;
    bool corrupted;
    bool missed; // node was asleep or transmitting for part of it
  };
  struct NodeState
  {
    ChannelListener *listener = nullptr;
    bool radioOn = true;
    bool transmitting = false;
    int sensed = 0;
    std::vector<Incoming> incoming;
    RadioMode mode = RadioMode::Idle;
    std::function<void (RadioMode)> modeObserver;
  };
  struct Active
  {
    TransmissionRecord record;
    std::vector<NodeId> reached;
  };

  void EndTransmission (std::uint64_t txId);
  void RefreshMode (NodeId node);

  Scheduler &m_scheduler;
  ChannelParams m_params;
  PositionFn m_positions;
  Tracer *m_tracer;
  std::vector<NodeState> m_nodes;
  std::unordered_map<std::uint64_t, Active> m_active;
  std::function<void (const Frame &, DropReason)> m_lossObserver;
  std::function<void (const TransmissionRecord &)> m_txObserver;
  std::uint64_t m_nextTxId = 1;
  std::uint64_t m_collisions = 0;
  std::uint64_t m_transmissions = 0;
};

} // namespace vexsim

#endif // VEXSIM_PHY_WIRELESS_CHANNEL_H
