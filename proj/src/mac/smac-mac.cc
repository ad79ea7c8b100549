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

#include "vexsim/mac/smac-mac.h"

#include "vexsim/mobility/topology.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace vexsim {

void
SmacConfig::Validate () const
{
  if (!(period > 0.0))
    {
      throw ConfigError ("mac.smac.period_s: must be positive");
    }
  if (!(dutyCycle > 0.0 && dutyCycle < 1.0))
    {
      throw ConfigError ("mac.smac.duty_cycle: must lie strictly between 0 and 1");
    }
  if (!(slot > 0.0) || !(difs > 0.0))
    {
      throw ConfigError ("mac.smac: slot and difs must be positive");
    }
  if (syncEvery == 0 || discoveryEvery == 0)
    {
      throw ConfigError ("mac.smac: sync_every and discovery_every must be >= 1");
    }
}

namespace {

// Offset of `now` into the current period of a schedule, in [0, period).
double
PeriodOffset (SimTime now, double phase, double period)
{
  double x = std::fmod (now - phase, period);
  if (x < 0.0)
    {
      x += period;
    }
  return x;
}

} // namespace

SmacPhase
SmacState (SimTime now, double phase, const SmacConfig &config)
{
  return PeriodOffset (now, phase, config.period) < config.ListenTime () ? SmacPhase::Awake
                                                                         : SmacPhase::Asleep;
}

ListenWindow
CurrentOrNextWindow (SimTime now, double phase, const SmacConfig &config)
{
  const double x = PeriodOffset (now, phase, config.period);
  const SimTime start = now - x;
  if (x < config.ListenTime ())
    {
      return {start, start + config.ListenTime ()};
    }
  return {start + config.period, start + config.period + config.ListenTime ()};
}

SimTime
NextTxOpportunity (SimTime now, double phase, double duration, const SmacConfig &config)
{
  if (duration > config.ListenTime ())
    {
      return std::numeric_limits<double>::infinity ();
    }
  const ListenWindow w = CurrentOrNextWindow (now, phase, config);
  const SimTime t = std::max (now, w.start);
  if (t + duration <= w.end)
    {
      return t;
    }
  return w.start + config.period;
}

SmacMac::SmacMac (NodeId self, Scheduler &scheduler, WirelessChannel &channel, RngStream rng,
                  Tracer &tracer, const SmacConfig &config, double phase,
                  std::size_t queueCapacity)
  : Mac (self, scheduler, channel, std::move (rng), tracer, queueCapacity),
    m_config (config),
    m_phase (phase)
{
  m_config.Validate ();
  if (!(phase >= 0.0 && phase < m_config.period))
    {
      throw ConfigError ("mac.smac: schedule phase must lie in [0, period)");
    }
}

double
SmacMac::FrameAirtime (const Frame &frame) const
{
  return Airtime (frame.SizeBytes (), m_channel.Params ().bitrate);
}

void
SmacMac::Prepare (Frame &frame)
{
  frame.macHeaderBytes = m_config.headerBytes;
  frame.expectsAck = false;
}

void
SmacMac::Start ()
{
  UpdateRadio ();
  m_scheduler.Schedule (m_scheduler.Now () + m_phase, m_self, EventKind::Timer,
                        [this] () { WindowStart (0); });
}

void
SmacMac::Shutdown ()
{
  Mac::Shutdown ();
  m_scheduler.Cancel (m_engineEvent);
  m_current.reset ();
  m_engine = Engine::Idle;
  if (!m_channel.IsTransmitting (m_self))
    {
      m_channel.SetRadioOn (m_self, false);
    }
}

void
SmacMac::UpdateRadio ()
{
  if (m_dead)
    {
      return;
    }
  const bool engineAwake = m_engine == Engine::WaitIdle || m_engine == Engine::Countdown
                           || m_engine == Engine::Transmit
                           || (m_engine == Engine::Planned && m_plannedAt <= m_scheduler.Now ());
  m_channel.SetRadioOn (m_self, m_inWindow || m_discovering || engineAwake
                                    || m_channel.IsTransmitting (m_self));
}

void
SmacMac::WindowStart (std::uint64_t k)
{
  if (m_dead)
    {
      return;
    }
  const SimTime now = m_scheduler.Now ();
  m_inWindow = true;
  m_windowEnd = now + m_config.ListenTime ();
  m_discovering = k % m_config.discoveryEvery == 0;
  m_syncPending = k % m_config.syncEvery == 0;
  std::erase_if (m_neighbours, [&] (const auto &kv) {
    return kv.second.heard < now - m_config.neighbourTimeout;
  });
  UpdateRadio ();
  m_scheduler.Schedule (m_windowEnd, m_self, EventKind::Timer, [this] () { WindowEnd (); });
  m_scheduler.Schedule (m_phase + (k + 1) * m_config.period, m_self, EventKind::Timer,
                        [this, k] () { WindowStart (k + 1); });
  if (m_discovering)
    {
      Trace ("discovery-listen");
    }
  Plan ();
}

void
SmacMac::WindowEnd ()
{
  m_inWindow = false;
  m_syncPending = false;
  UpdateRadio ();
}

double
SmacMac::PhaseFor (NodeId receiver) const
{
  auto known = KnownPhase (receiver);
  return known ? *known : m_phase;
}

std::vector<double>
SmacMac::TargetsFor (const Frame &frame) const
{
  if (!frame.IsBroadcast ())
    {
      return {PhaseFor (frame.receiver)};
    }
  std::vector<double> phases{m_phase};
  for (const auto &[node, phase] : KnownSchedules ())
    {
      const bool seen = std::any_of (phases.begin (), phases.end (),
                                     [p = phase] (double q) { return std::abs (p - q) < 1e-9; });
      if (!seen)
        {
          phases.push_back (phase);
        }
    }
  return phases;
}

std::map<NodeId, double>
SmacMac::KnownSchedules () const
{
  std::map<NodeId, double> out;
  const SimTime now = m_scheduler.Now ();
  for (const auto &[node, n] : m_neighbours)
    {
      if (n.heard >= now - m_config.neighbourTimeout)
        {
          out.emplace (node, n.phase);
        }
    }
  return out;
}

std::optional<double>
SmacMac::KnownPhase (NodeId node) const
{
  auto it = m_neighbours.find (node);
  if (it == m_neighbours.end ()
      || it->second.heard < m_scheduler.Now () - m_config.neighbourTimeout)
    {
      return std::nullopt;
    }
  return it->second.phase;
}

void
SmacMac::Kick ()
{
  if (m_dead)
    {
      return;
    }
  if (!m_current && HasFrame ())
    {
      m_current = PopFrame ();
      m_targets = TargetsFor (*m_current);
    }
  Plan ();
}

void
SmacMac::Plan ()
{
  if (m_dead || (m_engine != Engine::Idle && m_engine != Engine::Planned))
    {
      return;
    }
  if (m_engine == Engine::Planned)
    {
      m_scheduler.Cancel (m_engineEvent);
      m_engine = Engine::Idle;
    }
  const SimTime now = m_scheduler.Now ();
  const double contention = m_config.difs + m_config.contentionWindow * m_config.slot;
  SimTime when = std::numeric_limits<double>::infinity ();

  if (m_syncPending && m_inWindow)
    {
      const double syncAir = Airtime (m_config.syncBytes, m_channel.Params ().bitrate);
      if (now + contention + syncAir <= m_windowEnd)
        {
          m_sendingSync = true;
          when = now;
        }
      else
        {
          m_syncPending = false;
        }
    }
  if (std::isinf (when) && m_current)
    {
      m_sendingSync = false;
      const double need = contention + FrameAirtime (*m_current);
      for (double phase : m_targets)
        {
          const SimTime t = NextTxOpportunity (now, phase, need, m_config);
          if (t < when)
            {
              when = t;
              m_targetPhase = phase;
            }
        }
    }
  if (std::isinf (when))
    {
      return;
    }
  m_engine = Engine::Planned;
  m_plannedAt = when;
  m_engineEvent = m_scheduler.Schedule (when, m_self, EventKind::Timer, [this] () { Attempt (); });
}

void
SmacMac::Attempt ()
{
  m_engine = Engine::WaitIdle;
  UpdateRadio ();
  Contend ();
}

void
SmacMac::Contend ()
{
  if (m_channel.IsTransmitting (m_self) || m_channel.CarrierBusy (m_self))
    {
      m_engine = Engine::WaitIdle;
      return;
    }
  const auto slots = m_rng.UniformInt (0, m_config.contentionWindow);
  m_engine = Engine::Countdown;
  m_engineEvent = m_scheduler.ScheduleIn (m_config.difs + slots * m_config.slot, m_self,
                                          EventKind::Timer, [this] () { Fire (); });
}

void
SmacMac::OnCarrierBusy ()
{
  if (m_engine == Engine::Countdown)
    {
      m_scheduler.Cancel (m_engineEvent);
      m_engine = Engine::WaitIdle;
    }
}

void
SmacMac::OnCarrierIdle ()
{
  if (m_engine == Engine::WaitIdle)
    {
      Contend ();
    }
}

void
SmacMac::Fire ()
{
  const SimTime now = m_scheduler.Now ();
  Frame frame;
  if (m_sendingSync)
    {
      frame.kind = FrameKind::Control;
      frame.receiver = kBroadcast;
      frame.macHeaderBytes = m_config.syncBytes;
      frame.schedulePhase = m_phase;
    }
  else
    {
      frame = *m_current;
    }
  const double air = FrameAirtime (frame);
  bool fits;
  if (m_sendingSync)
    {
      fits = m_inWindow && now + air <= m_windowEnd;
    }
  else
    {
      fits = SmacState (now, m_targetPhase, m_config) == SmacPhase::Awake
             && now + air <= CurrentOrNextWindow (now, m_targetPhase, m_config).end;
    }
  if (!fits)
    {
      Abandon ();
      return;
    }
  m_engine = Engine::Transmit;
  if (frame.kind != FrameKind::Control)
    {
      ++m_counters.framesSent;
      Trace ("tx", Describe (frame));
    }
  m_channel.BeginTransmission (m_self, std::move (frame), air);
}

void
SmacMac::Abandon ()
{
  m_engine = Engine::Idle;
  if (m_sendingSync)
    {
      m_syncPending = false;
      m_sendingSync = false;
    }
  Plan ();
  UpdateRadio ();
}

void
SmacMac::OnTransmitEnd (const Frame &frame)
{
  m_engine = Engine::Idle;
  if (frame.kind == FrameKind::Control)
    {
      m_syncPending = false;
      m_sendingSync = false;
    }
  else if (m_current)
    {
      auto it = std::find (m_targets.begin (), m_targets.end (), m_targetPhase);
      if (it != m_targets.end ())
        {
          m_targets.erase (it);
        }
      if (m_targets.empty ())
        {
          Frame done = std::move (*m_current);
          m_current.reset ();
          Complete (done, TxStatus::Sent);
        }
    }
  Kick ();
  UpdateRadio ();
}

void
SmacMac::HandleFrame (const Frame &frame, double)
{
  if (frame.kind == FrameKind::Control)
    {
      m_neighbours[frame.transmitter] = {frame.schedulePhase, m_scheduler.Now ()};
      return;
    }
  DeliverUp (frame);
}

} // namespace vexsim
