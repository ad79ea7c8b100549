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

#ifndef VEXSIM_MAC_LR_WPAN_MAC_H
#define VEXSIM_MAC_LR_WPAN_MAC_H

#include "vexsim/mac/mac-base.h"

#include <optional>

namespace vexsim {

/// Unslotted IEEE 802.15.4 CSMA-CA. Durations are in PHY symbols.
struct LrWpanConfig
{
  std::uint32_t minBe = 3;
  std::uint32_t maxBe = 5;
  std::uint32_t maxCsmaBackoffs = 4;
  std::uint32_t maxFrameRetries = 3;
  std::uint32_t unitBackoffSymbols = 20;
  std::uint32_t ccaSymbols = 8;
  std::uint32_t turnaroundSymbols = 12;
  std::uint32_t ackWaitSymbols = 54;
  std::uint32_t bitsPerSymbol = 4;
  std::uint32_t headerBytes = 11;
  std::uint32_t ackBytes = 5;
  std::uint32_t phyHeaderBytes = 6;
  /// Keep the receiver on between transactions. Battery nodes turn it
  /// off and only listen around their own exchanges.
  bool rxOnWhenIdle = true;

  void Validate () const;
};

struct CsmaCaState
{
  std::uint32_t nb = 0;
  std::uint32_t be = 3;
};

/// Fresh attempt: NB = 0, BE = macMinBE.
CsmaCaState CsmaCaStart (const LrWpanConfig &config);
/// Busy CCA: NB + 1, BE + 1 clamped to macMaxBE.
CsmaCaState CsmaCaAfterBusy (CsmaCaState s, const LrWpanConfig &config);
/// True once NB exceeds macMaxCSMABackoffs.
bool CsmaCaFailed (CsmaCaState s, const LrWpanConfig &config);
/// Uniform in [0, 2^BE - 1] unit backoff periods.
std::uint32_t LrWpanBackoffUnits (std::uint32_t be, RngStream &rng);

class LrWpanMac : public Mac
{
public:
  LrWpanMac (NodeId self, Scheduler &scheduler, WirelessChannel &channel, RngStream rng,
             Tracer &tracer, const LrWpanConfig &config = {}, std::size_t queueCapacity = 50);

  std::string_view Name () const override { return "802.15.4"; }
  double FrameAirtime (const Frame &frame) const override;
  double SymbolTime () const;

  void Start () override;
  void SetReceiverWanted (bool wanted) override;
  void Shutdown () override;

  void OnTransmitEnd (const Frame &frame) override;
  void OnCarrierBusy () override;

  /// Every (NB, BE) pair used for a backoff so far (for tests).
  const std::vector<CsmaCaState> &AttemptHistory () const { return m_history; }

protected:
  void Prepare (Frame &frame) override;
  void Kick () override;
  void HandleFrame (const Frame &frame, double rxPowerW) override;

private:
  enum class State
  {
    Idle,
    Backoff,
    Cca,
    Turnaround,
    Transmit,
    WaitAck,
  };

  void StartCsma ();
  void Backoff ();
  void CcaStart ();
  void CcaEnd ();
  void TxStart ();
  void AckTimeout ();
  void SendAck (NodeId to, std::uint32_t seq);
  void FinishCurrent (TxStatus status);
  void UpdateRadio ();

  LrWpanConfig m_config;
  State m_state = State::Idle;
  std::optional<Frame> m_current;
  CsmaCaState m_csma;
  std::uint32_t m_retries = 0;
  bool m_ccaBusy = false;
  EventHandle m_ackTimer = 0;
  int m_pendingAcks = 0;
  std::vector<CsmaCaState> m_history;
};

} // namespace vexsim

#endif // VEXSIM_MAC_LR_WPAN_MAC_H
