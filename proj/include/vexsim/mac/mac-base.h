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

#ifndef VEXSIM_MAC_MAC_BASE_H
#define VEXSIM_MAC_MAC_BASE_H

#include "vexsim/core/rng-stream.h"
#include "vexsim/core/scheduler.h"
#include "vexsim/core/trace.h"
#include "vexsim/mac/tx-queue.h"
#include "vexsim/phy/wireless-channel.h"

#include <deque>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace vexsim {

enum class TxStatus : std::uint8_t
{
  Acked,                // unicast confirmed by the receiver
  Sent,                 // broadcast, or a MAC without acknowledgements
  RetryExceeded,        // no ACK after the retry limit
  ChannelAccessFailure, // medium never found idle
};

const char *ToString (TxStatus status);

/// Network layer as seen from the MAC.
class MacUpper
{
public:
  virtual ~MacUpper () = default;
  virtual void MacReceive (const Frame &frame) = 0;
  virtual void MacTxDone (const Frame &frame, TxStatus status) = 0;
};

struct MacCounters
{
  std::uint64_t framesSent = 0;
  std::uint64_t acksSent = 0;
  std::uint64_t retransmissions = 0;
  std::uint64_t retryDrops = 0;
  std::uint64_t accessFailures = 0;
  std::uint64_t ifqDrops = 0;
  std::uint64_t duplicates = 0;
};

/**
 * Shared MAC plumbing: the 50-frame drop-tail queue for data, an
 * unbounded priority queue for routing control, sequence numbering,
 * duplicate filtering and upcalls. Subclasses implement medium access.
 */
class Mac : public ChannelListener
{
public:
  Mac (NodeId self, Scheduler &scheduler, WirelessChannel &channel, RngStream rng,
       Tracer &tracer, std::size_t queueCapacity = 50);
  ~Mac () override = default;

  Mac (const Mac &) = delete;
  Mac &operator= (const Mac &) = delete;

  virtual std::string_view Name () const = 0;

  void SetUpper (MacUpper *upper) { m_upper = upper; }

  /// Hands a Data or Routing frame to the MAC. Data frames that find the
  /// interface queue full are rejected; routing frames always fit.
  bool Enqueue (Frame frame);

  /// Pulls every queued (not yet in service) frame addressed to `nextHop`.
  std::vector<Frame> Reclaim (NodeId nextHop);

  /// Asks the MAC to keep the receiver reachable (route discovery in
  /// progress). Only duty-cycled MACs care.
  virtual void SetReceiverWanted (bool wanted) { m_receiverWanted = wanted; }
  bool ReceiverWanted () const { return m_receiverWanted; }

  /// Called once before the simulation starts.
  virtual void Start () {}
  /// Stops all activity for good (node out of energy).
  virtual void Shutdown ();

  /// Seconds on air for a frame built by this MAC.
  virtual double FrameAirtime (const Frame &frame) const = 0;

  NodeId Self () const { return m_self; }
  std::size_t QueuedFrames () const { return m_queue.Size () + m_priority.size (); }
  std::size_t DataQueueLength () const { return m_queue.Size (); }
  const MacCounters &Counters () const { return m_counters; }

  void OnReceive (const Frame &frame, double rxPowerW) override;

protected:
  /// Fill header size and ACK policy for an outgoing frame.
  virtual void Prepare (Frame &frame) = 0;
  /// New work arrived; start access if the MAC is idle.
  virtual void Kick () = 0;
  /// A frame for this node that passed the duplicate filter.
  virtual void HandleFrame (const Frame &frame, double rxPowerW);

  bool HasFrame () const { return !m_priority.empty () || !m_queue.Empty (); }
  const Frame &PeekFrame () const;
  Frame PopFrame ();

  /// Passes a received frame up unless it repeats the last sequence
  /// number seen from its transmitter. Returns false on a duplicate.
  bool DeliverUp (const Frame &frame);
  void Complete (const Frame &frame, TxStatus status);
  void Trace (std::string_view event, std::string_view details = {}) const;

  NodeId m_self;
  Scheduler &m_scheduler;
  WirelessChannel &m_channel;
  RngStream m_rng;
  Tracer &m_tracer;
  MacCounters m_counters;
  bool m_receiverWanted = false;
  bool m_dead = false;

private:
  TxQueue m_queue;
  std::deque<Frame> m_priority;
  MacUpper *m_upper = nullptr;
  std::uint32_t m_nextSeq = 1;
  std::unordered_map<NodeId, std::uint32_t> m_lastSeqFrom;
};

/// Describes a frame for trace lines.
std::string Describe (const Frame &frame);

} // namespace vexsim

#endif // VEXSIM_MAC_MAC_BASE_H
