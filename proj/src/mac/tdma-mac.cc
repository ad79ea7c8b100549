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

#include "vexsim/mac/tdma-mac.h"

#include "vexsim/mobility/topology.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace vexsim {

void
TdmaConfig::Validate () const
{
  if (!(slotDuration > 0.0))
    {
      throw ConfigError ("mac.tdma.slot_s: must be positive");
    }
  if (dataSlots == 0)
    {
      throw ConfigError ("mac.tdma.data_slots: must be positive");
    }
}

SlotOwner
TdmaSlotOwner (std::uint64_t, std::uint32_t slotIndex, const TdmaConfig &config,
               const std::vector<std::optional<NodeId>> &assignment)
{
  if (slotIndex >= config.SlotsPerFrame ())
    {
      throw std::out_of_range ("slot index beyond the TDMA frame");
    }
  if (slotIndex < config.preambleSlots)
    {
      return {SlotOwner::Kind::Preamble, 0};
    }
  const std::uint32_t k = slotIndex - config.preambleSlots;
  if (k < assignment.size () && assignment[k])
    {
      return {SlotOwner::Kind::Node, *assignment[k]};
    }
  return {SlotOwner::Kind::Idle, 0};
}

TdmaSchedule::TdmaSchedule (const TdmaConfig &config, std::size_t nodeCount)
  : m_config (config),
    m_assignment (config.dataSlots)
{
  m_config.Validate ();
  if (nodeCount > config.dataSlots)
    {
      throw ConfigError ("mac.tdma.data_slots: " + std::to_string (config.dataSlots)
                         + " slots cannot serve " + std::to_string (nodeCount) + " nodes");
    }
  for (NodeId n = 0; n < nodeCount; ++n)
    {
      m_assignment[n] = n;
    }
}

std::optional<std::uint32_t>
TdmaSchedule::DataSlotOf (NodeId node) const
{
  for (std::uint32_t k = 0; k < m_assignment.size (); ++k)
    {
      if (m_assignment[k] == node)
        {
          return k;
        }
    }
  return std::nullopt;
}

SimTime
TdmaSchedule::FrameStart (std::uint64_t frameIndex) const
{
  return static_cast<double> (frameIndex) * m_config.FramePeriod ();
}

SimTime
TdmaSchedule::SlotStart (std::uint64_t frameIndex, std::uint32_t slotIndex) const
{
  return FrameStart (frameIndex) + slotIndex * m_config.slotDuration;
}

std::uint64_t
TdmaSchedule::NextFrameIndex (SimTime now) const
{
  auto k = static_cast<std::uint64_t> (std::ceil (now / m_config.FramePeriod ()));
  while (k > 0 && FrameStart (k - 1) >= now)
    {
      --k;
    }
  while (FrameStart (k) < now)
    {
      ++k;
    }
  return k;
}

void
TdmaSchedule::Announce (std::uint64_t frameIndex, NodeId owner, NodeId receiver,
                        double airtime)
{
  if (frameIndex != m_announcedFrame)
    {
      m_announcedFrame = frameIndex;
      m_announcements.clear ();
    }
  m_announcements.push_back ({owner, receiver, airtime});
}

std::vector<TdmaSchedule::Announcement>
TdmaSchedule::Announcements (std::uint64_t frameIndex) const
{
  if (frameIndex != m_announcedFrame)
    {
      return {};
    }
  return m_announcements;
}

TdmaMac::TdmaMac (NodeId self, Scheduler &scheduler, WirelessChannel &channel, RngStream rng,
                  Tracer &tracer, std::shared_ptr<TdmaSchedule> schedule, bool alwaysListening,
                  std::size_t queueCapacity)
  : Mac (self, scheduler, channel, std::move (rng), tracer, queueCapacity),
    m_schedule (std::move (schedule)),
    m_alwaysListening (alwaysListening)
{
  auto slot = m_schedule->DataSlotOf (self);
  if (!slot)
    {
      throw ConfigError ("mac.tdma: node " + std::to_string (self) + " has no data slot");
    }
  m_slot = *slot;
  const double worst = Airtime (m_schedule->Config ().headerBytes + kNetworkHeaderBytes + 512,
                                m_channel.Params ().bitrate);
  if (worst > m_schedule->Config ().slotDuration)
    {
      throw ConfigError ("mac.tdma.slot_s: a full data frame needs "
                         + std::to_string (worst) + " s on air");
    }
}

double
TdmaMac::FrameAirtime (const Frame &frame) const
{
  return Airtime (frame.SizeBytes (), m_channel.Params ().bitrate);
}

void
TdmaMac::Prepare (Frame &frame)
{
  frame.macHeaderBytes = m_schedule->Config ().headerBytes;
  frame.expectsAck = false;
}

void
TdmaMac::Start ()
{
  UpdateRadio ();
}

void
TdmaMac::Shutdown ()
{
  Mac::Shutdown ();
  m_committed.reset ();
  m_listenLoop = false;
  if (!m_channel.IsTransmitting (m_self))
    {
      m_channel.SetRadioOn (m_self, false);
    }
}

void
TdmaMac::UpdateRadio ()
{
  if (m_dead)
    {
      return;
    }
  const bool on = m_alwaysListening || m_transmitting || m_inPreamble || m_listening > 0
                  || m_channel.IsTransmitting (m_self);
  m_channel.SetRadioOn (m_self, on);
}

void
TdmaMac::Kick ()
{
  if (m_dead || m_committed || m_boundaryPending || !HasFrame ())
    {
      return;
    }
  m_boundaryPending = true;
  m_boundaryFrame = m_schedule->NextFrameIndex (m_scheduler.Now ());
  const std::uint64_t k = m_boundaryFrame;
  m_scheduler.Schedule (m_schedule->FrameStart (k), m_self, EventKind::Timer,
                        [this, k] () { FrameBoundary (k); });
}

void
TdmaMac::FrameBoundary (std::uint64_t frameIndex)
{
  m_boundaryPending = false;
  if (m_dead || !HasFrame ())
    {
      return;
    }
  m_committed = PopFrame ();
  m_schedule->Announce (frameIndex, m_self, m_committed->receiver, FrameAirtime (*m_committed));
  const std::uint32_t slot = m_schedule->Config ().preambleSlots + m_slot;
  m_scheduler.Schedule (m_schedule->SlotStart (frameIndex, slot), m_self, EventKind::Timer,
                        [this] () { SlotStart (); });
}

void
TdmaMac::SlotStart ()
{
  if (m_dead || !m_committed)
    {
      return;
    }
  const double air = FrameAirtime (*m_committed);
  if (air > m_schedule->Config ().slotDuration)
    {
      throw std::logic_error ("TDMA frame longer than its slot");
    }
  m_transmitting = true;
  UpdateRadio ();
  ++m_counters.framesSent;
  Trace ("tx", Describe (*m_committed) + " slot=" + std::to_string (m_slot));
  m_channel.BeginTransmission (m_self, *m_committed, air);
}

void
TdmaMac::OnTransmitEnd (const Frame &)
{
  m_transmitting = false;
  Frame done = std::move (*m_committed);
  m_committed.reset ();
  UpdateRadio ();
  Complete (done, TxStatus::Sent);
  Kick ();
}

void
TdmaMac::SetReceiverWanted (bool wanted)
{
  Mac::SetReceiverWanted (wanted);
  if (!wanted || m_alwaysListening || m_listenLoop || m_dead)
    {
      return;
    }
  m_listenLoop = true;
  const SimTime now = m_scheduler.Now ();
  std::uint64_t k = m_schedule->NextFrameIndex (now);
  m_scheduler.Schedule (m_schedule->FrameStart (k), m_self, EventKind::Timer, [this, k] () {
    m_inPreamble = true;
    UpdateRadio ();
    const SimTime end = m_schedule->SlotStart (k, m_schedule->Config ().preambleSlots);
    m_scheduler.Schedule (end, m_self, EventKind::Timer, [this, k] () { PreambleEnd (k); });
  });
}

void
TdmaMac::PreambleEnd (std::uint64_t frameIndex)
{
  m_inPreamble = false;
  if (m_dead)
    {
      return;
    }
  const auto &cfg = m_schedule->Config ();
  for (const auto &a : m_schedule->Announcements (frameIndex))
    {
      if (a.owner == m_self || (a.receiver != m_self && a.receiver != kBroadcast))
        {
          continue;
        }
      if (!m_channel.InRxRange (a.owner, m_self))
        {
          continue;
        }
      auto slot = m_schedule->DataSlotOf (a.owner);
      ListenSlot (m_schedule->SlotStart (frameIndex, cfg.preambleSlots + *slot), a.airtime);
    }
  UpdateRadio ();
  m_listenLoop = false;
  if (m_receiverWanted)
    {
      SetReceiverWanted (true);
    }
}

void
TdmaMac::ListenSlot (SimTime start, double duration)
{
  // wake a little early and stay a little late so the radio is on for
  // the whole frame whatever order same-time events run in
  constexpr double kGuard = 1e-6;
  const SimTime now = m_scheduler.Now ();
  auto wake = [this, duration, start] () {
    ++m_listening;
    UpdateRadio ();
    m_scheduler.Schedule (start + duration + kGuard, m_self, EventKind::Timer, [this] () {
      --m_listening;
      UpdateRadio ();
    });
  };
  if (start - kGuard <= now)
    {
      wake ();
    }
  else
    {
      m_scheduler.Schedule (start - kGuard, m_self, EventKind::Timer, wake);
    }
}

} // namespace vexsim
