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

#ifndef VEXSIM_MAC_SMAC_MAC_H
#define VEXSIM_MAC_SMAC_MAC_H

#include "vexsim/mac/mac-base.h"

#include <map>
#include <optional>

namespace vexsim {

struct SmacConfig
{
  double period = 1.0;
  double dutyCycle = 0.1;
  double slot = 20e-6;
  double difs = 50e-6;
  std::uint32_t contentionWindow = 31;
  std::uint32_t headerBytes = 11;
  std::uint32_t syncBytes = 9;
  /// Own periods between SYNC broadcasts.
  std::uint32_t syncEvery = 1;
  /// Own periods between full-period neighbour discovery listens.
  std::uint32_t discoveryEvery = 220;
  /// Neighbour schedules not refreshed for this long are forgotten.
  double neighbourTimeout = 600.0;

  double ListenTime () const { return dutyCycle * period; }
  void Validate () const;
};

enum class SmacPhase
{
  Awake,
  Asleep,
};

/// AWAKE iff ((now - phase) mod period) < duty * period.
SmacPhase SmacState (SimTime now, double phase, const SmacConfig &config);

struct ListenWindow
{
  SimTime start;
  SimTime end;
};

/// The listen window containing `now`, else the next one.
ListenWindow CurrentOrNextWindow (SimTime now, double phase, const SmacConfig &config);

/// Earliest t >= now such that [t, t + duration] lies inside one listen
/// window of the given schedule.
SimTime NextTxOpportunity (SimTime now, double phase, double duration, const SmacConfig &config);

/**
 * Sleep/listen MAC. Each node listens for duty*period out of every
 * period at its own phase and broadcasts a SYNC carrying that phase.
 * Schedules of neighbours are learned only from SYNCs actually heard,
 * which mostly happens during the periodic full-period discovery listen.
 * Unicast goes out in the receiver's known window (own window if
 * unknown); broadcasts go once per distinct known schedule. Data is not
 * acknowledged.
 */
class SmacMac : public Mac
{
public:
  SmacMac (NodeId self, Scheduler &scheduler, WirelessChannel &channel, RngStream rng,
           Tracer &tracer, const SmacConfig &config, double phase,
           std::size_t queueCapacity = 50);

  std::string_view Name () const override { return "smac"; }
  double FrameAirtime (const Frame &frame) const override;

  void Start () override;
  void Shutdown () override;
  void OnTransmitEnd (const Frame &frame) override;
  void OnCarrierBusy () override;
  void OnCarrierIdle () override;

  double Phase () const { return m_phase; }
  /// Neighbour schedules currently known.
  std::map<NodeId, double> KnownSchedules () const;
  std::optional<double> KnownPhase (NodeId node) const;

protected:
  void Prepare (Frame &frame) override;
  void Kick () override;
  void HandleFrame (const Frame &frame, double rxPowerW) override;

private:
  struct Neighbour
  {
    double phase;
    SimTime heard;
  };

  void WindowStart (std::uint64_t k);
  void WindowEnd ();
  void Plan ();
  void Attempt ();
  void Contend ();
  void Fire ();
  void Abandon ();
  void UpdateRadio ();
  std::vector<double> TargetsFor (const Frame &frame) const;
  double PhaseFor (NodeId receiver) const;

  SmacConfig m_config;
  double m_phase;
  std::map<NodeId, Neighbour> m_neighbours;

  bool m_inWindow = false;
  bool m_discovering = false;
  SimTime m_windowEnd = 0.0;
  bool m_syncPending = false;

  std::optional<Frame> m_current;
  std::vector<double> m_targets; // schedules still to serve for m_current

  enum class Engine
  {
    Idle,
    Planned,
    WaitIdle,
    Countdown,
    Transmit,
  };
  Engine m_engine = Engine::Idle;
  bool m_sendingSync = false;
  double m_targetPhase = 0.0;
  SimTime m_plannedAt = 0.0;
  EventHandle m_engineEvent = 0;
};

} // namespace vexsim

#endif // VEXSIM_MAC_SMAC_MAC_H
