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

#include "vexsim/mac/csma-ca-mac.h"

#include "vexsim/mobility/topology.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace vexsim {

void
CsmaConfig::Validate () const
{
  if (cwMin == 0 || cwMax < cwMin)
    {
      throw ConfigError ("mac.csma.cw_max: must be >= cw_min > 0");
    }
  if (!(slot > 0.0) || !(sifs > 0.0) || !(difs > sifs))
    {
      throw ConfigError ("mac.csma: slot and sifs must be positive and difs > sifs");
    }
  if (retryLimit == 0)
    {
      throw ConfigError ("mac.csma.retry_limit: must be >= 1");
    }
}

std::uint32_t
ContentionWindow (std::uint32_t retry, const CsmaConfig &config)
{
  // (cwMin + 1) * 2^retry - 1, saturating well before overflow
  std::uint64_t cw = config.cwMin;
  for (std::uint32_t r = 0; r < retry && cw < config.cwMax; ++r)
    {
      cw = 2 * cw + 1;
    }
  return static_cast<std::uint32_t> (std::min<std::uint64_t> (cw, config.cwMax));
}

std::uint32_t
CsmaBackoffSlots (std::uint32_t retry, RngStream &rng, const CsmaConfig &config)
{
  return static_cast<std::uint32_t> (rng.UniformInt (0, ContentionWindow (retry, config)));
}

CsmaCaMac::CsmaCaMac (NodeId self, Scheduler &scheduler, WirelessChannel &channel,
                      RngStream rng, Tracer &tracer, const CsmaConfig &config,
                      std::size_t queueCapacity)
  : Mac (self, scheduler, channel, std::move (rng), tracer, queueCapacity),
    m_config (config)
{
  m_config.Validate ();
}

double
CsmaCaMac::FrameAirtime (const Frame &frame) const
{
  return Airtime (frame.SizeBytes (), m_channel.Params ().bitrate, m_config.plcpOverhead);
}

void
CsmaCaMac::Prepare (Frame &frame)
{
  frame.macHeaderBytes = m_config.headerBytes;
  frame.expectsAck = !frame.IsBroadcast ();
}

bool
CsmaCaMac::MediumBusy () const
{
  return m_sendingAck || m_channel.IsTransmitting (m_self) || m_channel.CarrierBusy (m_self);
}

void
CsmaCaMac::Kick ()
{
  if (m_dead || m_state != State::Idle || !HasFrame ())
    {
      return;
    }
  m_current = PopFrame ();
  m_retry = 0;
  m_state = State::Contend;
  DrawBackoff ();
  ResumeCountdown ();
}

void
CsmaCaMac::DrawBackoff ()
{
  m_backoffSlots = CsmaBackoffSlots (m_retry, m_rng, m_config);
  m_backoffHistory.push_back (m_backoffSlots);
}

void
CsmaCaMac::ResumeCountdown ()
{
  if (m_state != State::Contend || m_counting || MediumBusy ())
    {
      return;
    }
  const SimTime now = m_scheduler.Now ();
  m_countStart = std::max (now, m_idleSince + m_config.difs);
  m_counting = true;
  m_countdown = m_scheduler.Schedule (m_countStart + m_backoffSlots * m_config.slot, m_self,
                                      EventKind::Timer, [this] () { CountdownDone (); });
}

void
CsmaCaMac::PauseCountdown ()
{
  if (!m_counting)
    {
      return;
    }
  m_scheduler.Cancel (m_countdown);
  m_counting = false;
  const double elapsed = m_scheduler.Now () - m_countStart;
  if (elapsed > 0.0)
    {
      const auto used = static_cast<std::uint32_t> (std::floor (elapsed / m_config.slot + 1e-9));
      m_backoffSlots -= std::min (used, m_backoffSlots);
    }
}

void
CsmaCaMac::CountdownDone ()
{
  m_counting = false;
  m_state = State::Transmit;
  ++m_counters.framesSent;
  if (m_retry > 0)
    {
      ++m_counters.retransmissions;
    }
  Trace ("tx", Describe (*m_current) + " try=" + std::to_string (m_retry));
  m_channel.BeginTransmission (m_self, *m_current, FrameAirtime (*m_current));
}

void
CsmaCaMac::OnTransmitEnd (const Frame &frame)
{
  m_idleSince = m_scheduler.Now ();
  if (frame.kind == FrameKind::Ack)
    {
      m_sendingAck = false;
      ResumeCountdown ();
      return;
    }
  if (m_state != State::Transmit)
    {
      return;
    }
  if (m_current->expectsAck)
    {
      m_state = State::WaitAck;
      const double ackAir = Airtime (m_config.ackBytes, m_channel.Params ().bitrate,
                                     m_config.plcpOverhead);
      m_ackTimer = m_scheduler.ScheduleIn (m_config.sifs + ackAir + m_config.slot, m_self,
                                           EventKind::Timer, [this] () { AckTimeout (); });
    }
  else
    {
      FinishCurrent (TxStatus::Sent);
    }
}

void
CsmaCaMac::AckTimeout ()
{
  ++m_retry;
  if (m_retry >= m_config.retryLimit)
    {
      FinishCurrent (TxStatus::RetryExceeded);
      return;
    }
  Trace ("ack-timeout", Describe (*m_current));
  m_state = State::Contend;
  DrawBackoff ();
  ResumeCountdown ();
}

void
CsmaCaMac::FinishCurrent (TxStatus status)
{
  Frame done = std::move (*m_current);
  m_current.reset ();
  m_state = State::Idle;
  Complete (done, status);
  Kick ();
}

void
CsmaCaMac::OnCarrierBusy ()
{
  PauseCountdown ();
}

void
CsmaCaMac::OnCarrierIdle ()
{
  m_idleSince = m_scheduler.Now ();
  ResumeCountdown ();
}

void
CsmaCaMac::HandleFrame (const Frame &frame, double)
{
  if (frame.kind == FrameKind::Ack)
    {
      if (m_state == State::WaitAck && frame.seq == m_current->seq)
        {
          m_scheduler.Cancel (m_ackTimer);
          FinishCurrent (TxStatus::Acked);
        }
      return;
    }
  if (!frame.IsBroadcast ())
    {
      const NodeId to = frame.transmitter;
      const std::uint32_t seq = frame.seq;
      m_scheduler.ScheduleIn (m_config.sifs, m_self, EventKind::Timer,
                              [this, to, seq] () { SendAck (to, seq); });
    }
  DeliverUp (frame);
}

void
CsmaCaMac::SendAck (NodeId to, std::uint32_t seq)
{
  if (m_dead || m_channel.IsTransmitting (m_self) || !m_channel.IsRadioOn (m_self))
    {
      return;
    }
  PauseCountdown ();
  Frame ack;
  ack.kind = FrameKind::Ack;
  ack.receiver = to;
  ack.seq = seq;
  ack.macHeaderBytes = m_config.ackBytes;
  m_sendingAck = true;
  ++m_counters.acksSent;
  m_channel.BeginTransmission (m_self, std::move (ack),
                               Airtime (m_config.ackBytes, m_channel.Params ().bitrate,
                                        m_config.plcpOverhead));
}

} // namespace vexsim
