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

#include "vexsim/mac/lr-wpan-mac.h"

#include "vexsim/mobility/topology.h"

#include <algorithm>
#include <string>

namespace vexsim {

void
LrWpanConfig::Validate () const
{
  if (minBe > maxBe || maxBe > 20)
    {
      throw ConfigError ("mac.lrwpan.max_be: must satisfy min_be <= max_be <= 20");
    }
  if (unitBackoffSymbols == 0 || ccaSymbols == 0 || bitsPerSymbol == 0)
    {
      throw ConfigError ("mac.lrwpan: symbol durations must be positive");
    }
  if (ackWaitSymbols <= turnaroundSymbols)
    {
      throw ConfigError ("mac.lrwpan.ack_wait_symbols: must exceed turnaround_symbols");
    }
}

CsmaCaState
CsmaCaStart (const LrWpanConfig &config)
{
  return {0, config.minBe};
}

CsmaCaState
CsmaCaAfterBusy (CsmaCaState s, const LrWpanConfig &config)
{
  return {s.nb + 1, std::min (s.be + 1, config.maxBe)};
}

bool
CsmaCaFailed (CsmaCaState s, const LrWpanConfig &config)
{
  return s.nb > config.maxCsmaBackoffs;
}

std::uint32_t
LrWpanBackoffUnits (std::uint32_t be, RngStream &rng)
{
  return static_cast<std::uint32_t> (rng.UniformInt (0, (std::uint64_t{1} << be) - 1));
}

LrWpanMac::LrWpanMac (NodeId self, Scheduler &scheduler, WirelessChannel &channel,
                      RngStream rng, Tracer &tracer, const LrWpanConfig &config,
                      std::size_t queueCapacity)
  : Mac (self, scheduler, channel, std::move (rng), tracer, queueCapacity),
    m_config (config)
{
  m_config.Validate ();
  m_csma = CsmaCaStart (m_config);
}

double
LrWpanMac::SymbolTime () const
{
  return m_config.bitsPerSymbol / m_channel.Params ().bitrate;
}

double
LrWpanMac::FrameAirtime (const Frame &frame) const
{
  return Airtime (frame.SizeBytes () + m_config.phyHeaderBytes, m_channel.Params ().bitrate);
}

void
LrWpanMac::Start ()
{
  UpdateRadio ();
}

void
LrWpanMac::SetReceiverWanted (bool wanted)
{
  Mac::SetReceiverWanted (wanted);
  UpdateRadio ();
}

void
LrWpanMac::Shutdown ()
{
  Mac::Shutdown ();
  m_scheduler.Cancel (m_ackTimer);
  m_current.reset ();
  m_state = State::Idle;
  if (!m_channel.IsTransmitting (m_self))
    {
      m_channel.SetRadioOn (m_self, false);
    }
}

void
LrWpanMac::UpdateRadio ()
{
  if (m_dead)
    {
      return;
    }
  const bool busyExchange = m_state == State::Cca || m_state == State::Turnaround
                            || m_state == State::Transmit || m_state == State::WaitAck;
  const bool on = m_config.rxOnWhenIdle || m_receiverWanted || busyExchange
                  || m_pendingAcks > 0 || m_channel.IsTransmitting (m_self);
  m_channel.SetRadioOn (m_self, on);
}

void
LrWpanMac::Prepare (Frame &frame)
{
  frame.macHeaderBytes = m_config.headerBytes;
  frame.expectsAck = !frame.IsBroadcast ();
}

void
LrWpanMac::Kick ()
{
  if (m_dead || m_state != State::Idle || !HasFrame ())
    {
      return;
    }
  m_current = PopFrame ();
  m_retries = 0;
  StartCsma ();
}

void
LrWpanMac::StartCsma ()
{
  m_csma = CsmaCaStart (m_config);
  Backoff ();
}

void
LrWpanMac::Backoff ()
{
  m_state = State::Backoff;
  m_history.push_back (m_csma);
  const std::uint32_t units = LrWpanBackoffUnits (m_csma.be, m_rng);
  UpdateRadio ();
  m_scheduler.ScheduleIn (units * m_config.unitBackoffSymbols * SymbolTime (), m_self,
                          EventKind::Timer, [this] () { CcaStart (); });
}

void
LrWpanMac::CcaStart ()
{
  if (m_dead)
    {
      return;
    }
  m_state = State::Cca;
  UpdateRadio ();
  m_ccaBusy = m_channel.IsTransmitting (m_self) || m_channel.CarrierBusy (m_self);
  m_scheduler.ScheduleIn (m_config.ccaSymbols * SymbolTime (), m_self, EventKind::Timer,
                          [this] () { CcaEnd (); });
}

void
LrWpanMac::OnCarrierBusy ()
{
  if (m_state == State::Cca)
    {
      m_ccaBusy = true;
    }
}

void
LrWpanMac::CcaEnd ()
{
  if (m_dead)
    {
      return;
    }
  if (m_ccaBusy || m_channel.CarrierBusy (m_self))
    {
      m_csma = CsmaCaAfterBusy (m_csma, m_config);
      if (CsmaCaFailed (m_csma, m_config))
        {
          FinishCurrent (TxStatus::ChannelAccessFailure);
          return;
        }
      Backoff ();
      return;
    }
  m_state = State::Turnaround;
  m_scheduler.ScheduleIn (m_config.turnaroundSymbols * SymbolTime (), m_self, EventKind::Timer,
                          [this] () { TxStart (); });
}

void
LrWpanMac::TxStart ()
{
  if (m_dead)
    {
      return;
    }
  if (m_channel.IsTransmitting (m_self))
    {
      // an ACK went out during turnaround; count it as a busy channel
      m_ccaBusy = true;
      CcaEnd ();
      return;
    }
  m_state = State::Transmit;
  ++m_counters.framesSent;
  if (m_retries > 0)
    {
      ++m_counters.retransmissions;
    }
  Trace ("tx", Describe (*m_current) + " try=" + std::to_string (m_retries));
  m_channel.BeginTransmission (m_self, *m_current, FrameAirtime (*m_current));
}

void
LrWpanMac::OnTransmitEnd (const Frame &frame)
{
  if (frame.kind == FrameKind::Ack)
    {
      --m_pendingAcks;
      UpdateRadio ();
      return;
    }
  if (m_state != State::Transmit)
    {
      return;
    }
  if (m_current->expectsAck)
    {
      m_state = State::WaitAck;
      m_ackTimer = m_scheduler.ScheduleIn (m_config.ackWaitSymbols * SymbolTime (), m_self,
                                           EventKind::Timer, [this] () { AckTimeout (); });
      UpdateRadio ();
    }
  else
    {
      FinishCurrent (TxStatus::Sent);
    }
}

void
LrWpanMac::AckTimeout ()
{
  ++m_retries;
  if (m_retries > m_config.maxFrameRetries)
    {
      FinishCurrent (TxStatus::RetryExceeded);
      return;
    }
  Trace ("ack-timeout", Describe (*m_current));
  StartCsma ();
}

void
LrWpanMac::FinishCurrent (TxStatus status)
{
  Frame done = std::move (*m_current);
  m_current.reset ();
  m_state = State::Idle;
  Complete (done, status);
  UpdateRadio ();
  Kick ();
}

void
LrWpanMac::HandleFrame (const Frame &frame, double)
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
      ++m_pendingAcks;
      m_scheduler.ScheduleIn (m_config.turnaroundSymbols * SymbolTime (), m_self,
                              EventKind::Timer, [this, to, seq] () { SendAck (to, seq); });
    }
  DeliverUp (frame);
}

void
LrWpanMac::SendAck (NodeId to, std::uint32_t seq)
{
  if (m_dead || m_channel.IsTransmitting (m_self) || !m_channel.IsRadioOn (m_self))
    {
      --m_pendingAcks;
      UpdateRadio ();
      return;
    }
  Frame ack;
  ack.kind = FrameKind::Ack;
  ack.receiver = to;
  ack.seq = seq;
  ack.macHeaderBytes = m_config.ackBytes;
  ++m_counters.acksSent;
  m_channel.BeginTransmission (m_self, std::move (ack),
                               Airtime (m_config.ackBytes + m_config.phyHeaderBytes,
                                        m_channel.Params ().bitrate));
}

} // namespace vexsim
