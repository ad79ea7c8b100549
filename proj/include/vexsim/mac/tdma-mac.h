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

#ifndef VEXSIM_MAC_TDMA_MAC_H
#define VEXSIM_MAC_TDMA_MAC_H

#include "vexsim/mac/mac-base.h"

#include <memory>
#include <optional>

namespace vexsim {

struct TdmaConfig
{
  double slotDuration = 2.5e-3;
  std::uint32_t preambleSlots = 2;
  std::uint32_t dataSlots = 26;
  std::uint32_t headerBytes = 8;

  std::uint32_t SlotsPerFrame () const { return preambleSlots + dataSlots; }
  double FramePeriod () const { return SlotsPerFrame () * slotDuration; }
  void Validate () const;
};

struct SlotOwner
{
  enum class Kind
  {
    Node,
    Preamble,
    Idle,
  };
  Kind kind = Kind::Idle;
  NodeId node = 0;

  bool operator== (const SlotOwner &) const = default;
};

/// Data slot k belongs to assignment[k] (if set). Throws
/// std::out_of_range for slotIndex >= SlotsPerFrame().
SlotOwner TdmaSlotOwner (std::uint64_t frameIndex, std::uint32_t slotIndex,
                         const TdmaConfig &config,
                         const std::vector<std::optional<NodeId>> &assignment);

/**
 * Frame clock and slot plan shared by every TDMA node, plus the
 * destinations each node announced in the current frame's preamble.
 */
class TdmaSchedule
{
public:
  /// Data slot k goes to node k. Throws ConfigError when there are more
  /// nodes than data slots.
  TdmaSchedule (const TdmaConfig &config, std::size_t nodeCount);

  const TdmaConfig &Config () const { return m_config; }
  const std::vector<std::optional<NodeId>> &Assignment () const { return m_assignment; }
  std::optional<std::uint32_t> DataSlotOf (NodeId node) const;

  SimTime FrameStart (std::uint64_t frameIndex) const;
  /// Start of the slot at absolute index `slotIndex` within the frame.
  SimTime SlotStart (std::uint64_t frameIndex, std::uint32_t slotIndex) const;
  /// First frame whose start is >= now.
  std::uint64_t NextFrameIndex (SimTime now) const;

  struct Announcement
  {
    NodeId owner;
    NodeId receiver;
    double airtime; // listeners sleep again once the frame is over
  };
  void Announce (std::uint64_t frameIndex, NodeId owner, NodeId receiver, double airtime);
  std::vector<Announcement> Announcements (std::uint64_t frameIndex) const;

private:
  TdmaConfig m_config;
  std::vector<std::optional<NodeId>> m_assignment;
  std::uint64_t m_announcedFrame = 0;
  std::vector<Announcement> m_announcements;
};

/**
 * Preamble-based TDMA. A node with queued traffic commits one frame at
 * the frame boundary, announces its destination in the preamble and
 * sends it in its own data slot. No ACKs. A node that is not always
 * listening sleeps except for its own transmissions and, while the
 * receiver is wanted, the preamble plus every slot announced to it.
 */
class TdmaMac : public Mac
{
public:
  TdmaMac (NodeId self, Scheduler &scheduler, WirelessChannel &channel, RngStream rng,
           Tracer &tracer, std::shared_ptr<TdmaSchedule> schedule, bool alwaysListening,
           std::size_t queueCapacity = 50);

  std::string_view Name () const override { return "tdma"; }
  double FrameAirtime (const Frame &frame) const override;

  void Start () override;
  void SetReceiverWanted (bool wanted) override;
  void Shutdown () override;
  void OnTransmitEnd (const Frame &frame) override;

protected:
  void Prepare (Frame &frame) override;
  void Kick () override;

private:
  void FrameBoundary (std::uint64_t frameIndex);
  void PreambleEnd (std::uint64_t frameIndex);
  void SlotStart ();
  void ListenSlot (SimTime start, double duration);
  void UpdateRadio ();

  std::shared_ptr<TdmaSchedule> m_schedule;
  bool m_alwaysListening;
  std::uint32_t m_slot;
  std::optional<Frame> m_committed;
  bool m_boundaryPending = false;
  std::uint64_t m_boundaryFrame = 0;
  bool m_transmitting = false;
  bool m_inPreamble = false;
  int m_listening = 0;
  bool m_listenLoop = false;
};

} // namespace vexsim

#endif // VEXSIM_MAC_TDMA_MAC_H
