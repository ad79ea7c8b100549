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

#ifndef VEXSIM_MAC_CSMA_CA_MAC_H
#define VEXSIM_MAC_CSMA_CA_MAC_H

#include "vexsim/mac/mac-base.h"

#include <optional>

namespace vexsim {

/// IEEE 802.11 DCF timing (DSSS numerology) and limits.
struct CsmaConfig
{
  std::uint32_t cwMin = 31;
  std::uint32_t cwMax = 1023;
  double slot = 20e-6;
  double sifs = 10e-6;
  double difs = 50e-6;
  /// Transmissions of one frame before it is given up.
  std::uint32_t retryLimit = 7;
  double plcpOverhead = 192e-6;
  std::uint32_t headerBytes = 28;
  std::uint32_t ackBytes = 14;

  void Validate () const;
};

/// Contention window after `retry` failed attempts: 31, 63, ..., 1023.
std::uint32_t ContentionWindow (std::uint32_t retry, const CsmaConfig &config = {});

/// Backoff slot count, uniform in [0, ContentionWindow(retry)].
std::uint32_t CsmaBackoffSlots (std::uint32_t retry, RngStream &rng, const CsmaConfig &config = {});

/**
 * Basic-access DCF: DIFS plus a frozen-on-busy backoff before every
 * frame, SIFS-spaced ACK for unicast, binary exponential backoff on a
 * missing ACK. No RTS/CTS, no NAV.
 */
class CsmaCaMac : public Mac
{
public:
  CsmaCaMac (NodeId self, Scheduler &scheduler, WirelessChannel &channel, RngStream rng,
             Tracer &tracer, const CsmaConfig &config = {}, std::size_t queueCapacity = 50);

  std::string_view Name () const override { return "802.11"; }
  double FrameAirtime (const Frame &frame) const override;

  void OnTransmitEnd (const Frame &frame) override;
  void OnCarrierBusy () override;
  void OnCarrierIdle () override;

  /// Backoff slots drawn so far (for tests).
  const std::vector<std::uint32_t> &BackoffHistory () const { return m_backoffHistory; }

protected:
  void Prepare (Frame &frame) override;
  void Kick () override;
  void HandleFrame (const Frame &frame, double rxPowerW) override;

private:
  enum class State
  {
    Idle,
    Contend,
    Transmit,
    WaitAck,
  };

  bool MediumBusy () const;
  void DrawBackoff ();
  void ResumeCountdown ();
  void PauseCountdown ();
  void CountdownDone ();
  void AckTimeout ();
  void SendAck (NodeId to, std::uint32_t seq);
  void FinishCurrent (TxStatus status);

  CsmaConfig m_config;
  State m_state = State::Idle;
  std::optional<Frame> m_current;
  std::uint32_t m_retry = 0;
  std::uint32_t m_backoffSlots = 0;
  SimTime m_idleSince = 0.0;
  SimTime m_countStart = 0.0;
  EventHandle m_countdown = 0;
  bool m_counting = false;
  EventHandle m_ackTimer = 0;
  bool m_sendingAck = false;
  std::vector<std::uint32_t> m_backoffHistory;
};

} // namespace vexsim

#endif // VEXSIM_MAC_CSMA_CA_MAC_H
