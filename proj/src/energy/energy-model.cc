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

#include "vexsim/energy/energy-model.h"

#include "vexsim/mobility/topology.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace vexsim {

double
EnergyParams::Power (RadioMode mode) const
{
  switch (mode)
    {
    case RadioMode::Tx:
      return txW;
    case RadioMode::Rx:
      return rxW;
    case RadioMode::Idle:
      return idleW;
    case RadioMode::Sleep:
      return sleepW;
    }
  return 0.0;
}

void
EnergyParams::Validate () const
{
  if (initialJ < 0.0 || txW < 0.0 || rxW < 0.0 || idleW < 0.0 || sleepW < 0.0)
    {
      throw ConfigError ("energy: joules and watts must be non-negative");
    }
  if (!(sleepW < idleW))
    {
      throw ConfigError ("energy.sleep_w: must be below idle_w");
    }
  if (!(idleW <= rxW))
    {
      throw ConfigError ("energy.idle_w: must not exceed rx_w");
    }
}

void
CompensatedSum::Add (double x)
{
  const double t = m_sum + x;
  if (std::abs (m_sum) >= std::abs (x))
    {
      m_carry += (m_sum - t) + x;
    }
  else
    {
      m_carry += (x - t) + m_sum;
    }
  m_sum = t;
}

EnergyLedger::EnergyLedger (const EnergyParams &params)
  : m_params (params)
{
}

double
EnergyLedger::Residual () const
{
  return m_exhausted ? 0.0 : std::max (0.0, m_params.initialJ - m_consumed.Value ());
}

double
EnergyLedger::Account (RadioMode mode, double duration)
{
  if (duration < 0.0)
    {
      throw std::invalid_argument ("negative accounting interval");
    }
  const auto i = static_cast<std::size_t> (mode);
  const double want = m_params.Power (mode) * duration;
  const double left = Residual ();
  const double take = std::min (want, left);
  if (left > 0.0 && take == left)
    {
      m_exhausted = true;
    }
  m_consumed.Add (take);
  m_joules[i].Add (take);
  m_seconds[i].Add (duration);
  return take;
}

double
EnergyLedger::ModeJoules (RadioMode mode) const
{
  return m_joules[static_cast<std::size_t> (mode)].Value ();
}

double
EnergyLedger::ModeSeconds (RadioMode mode) const
{
  return m_seconds[static_cast<std::size_t> (mode)].Value ();
}

EnergyMeter::EnergyMeter (Scheduler &scheduler, NodeId node, const EnergyParams &params,
                          Tracer &tracer, double samplePeriod)
  : m_scheduler (scheduler),
    m_node (node),
    m_tracer (tracer),
    m_ledger (params),
    m_samplePeriod (samplePeriod)
{
}

void
EnergyMeter::Start (RadioMode mode)
{
  m_mode = mode;
  m_since = m_scheduler.Now ();
  m_running = true;
  Sample ();
  ScheduleDepletion ();
}

void
EnergyMeter::Flush ()
{
  if (!m_running)
    {
      return;
    }
  const SimTime now = m_scheduler.Now ();
  if (now > m_since)
    {
      const double j = m_ledger.Account (m_mode, now - m_since);
      m_intervals.push_back ({m_since, now, m_mode, j});
      m_since = now;
    }
}

void
EnergyMeter::OnModeChange (RadioMode mode)
{
  if (!m_running || mode == m_mode)
    {
      return;
    }
  Flush ();
  m_mode = mode;
  ScheduleDepletion ();
}

void
EnergyMeter::ScheduleDepletion ()
{
  m_scheduler.Cancel (m_depletion);
  if (m_depletedAt)
    {
      return;
    }
  const double p = m_ledger.Params ().Power (m_mode);
  if (p <= 0.0)
    {
      return;
    }
  const double left = m_ledger.Residual () / p;
  m_depletion = m_scheduler.Schedule (m_scheduler.Now () + left, m_node, EventKind::EnergyDepletion,
                                      [this] () { Deplete (); });
}

void
EnergyMeter::Deplete ()
{
  Flush ();
  m_depletedAt = m_scheduler.Now ();
  m_running = false;
  if (m_tracer.Enabled ())
    {
      m_tracer.Log (m_scheduler.Now (), m_node, Layer::Energy, "depleted");
    }
  if (m_onDepleted)
    {
      m_onDepleted ();
    }
}

void
EnergyMeter::Sample ()
{
  Flush ();
  m_series.push_back ({m_scheduler.Now (), m_ledger.Residual ()});
  if (m_samplePeriod > 0.0)
    {
      const double next = (std::round (m_scheduler.Now () / m_samplePeriod) + 1.0) * m_samplePeriod;
      m_scheduler.Schedule (next, m_node, EventKind::Sample, [this] () { Sample (); });
    }
}

double
ProjectLifetime (double residualJ, double consumedJ, double windowS)
{
  if (!(windowS > 0.0))
    {
      throw std::invalid_argument ("lifetime window must be positive");
    }
  if (consumedJ <= 0.0)
    {
      return std::numeric_limits<double>::infinity ();
    }
  return residualJ / (consumedJ / windowS);
}

double
ProjectLifetime (const EnergyLedger &ledger, double windowS)
{
  return ProjectLifetime (ledger.Residual (), ledger.Consumed (), windowS);
}

} // namespace vexsim
