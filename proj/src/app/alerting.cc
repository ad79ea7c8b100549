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

#include "vexsim/app/alerting.h"

#include "vexsim/mobility/topology.h"

#include <limits>

namespace vexsim {

double
AlertPolicy::Threshold (Gas gas) const
{
  switch (gas)
    {
    case Gas::Co:
      return coPpm;
    case Gas::Hc:
      return hcPpm;
    case Gas::Nox:
      return noxPpm;
    }
  return 0.0;
}

void
AlertPolicy::Validate () const
{
  if (!(coPpm > 0.0))
    {
      throw ConfigError ("alert.co_ppm: must be positive");
    }
  if (!(hcPpm > 0.0))
    {
      throw ConfigError ("alert.hc_ppm: must be positive");
    }
  if (!(noxPpm > 0.0))
    {
      throw ConfigError ("alert.nox_ppm: must be positive");
    }
  if (window < 1)
    {
      throw ConfigError ("alert.window: must be at least 1");
    }
}

Evaluation
EvaluateReading (const EmissionReading &reading, const AlertPolicy &policy)
{
  Evaluation ev;
  for (Gas g : kAllGases)
    {
      if (reading.Level (g) > policy.Threshold (g))
        {
          ev.exceeded.push_back (g);
        }
    }
  return ev;
}

const char *
ToString (AlertLevel level)
{
  switch (level)
    {
    case AlertLevel::None:
      return "NONE";
    case AlertLevel::Notify:
      return "NOTIFY";
    case AlertLevel::Charge:
      return "CHARGE";
    }
  return "?";
}

bool
Escalation::Step (bool violation)
{
  if (!violation)
    {
      m_run = 0;
      return false;
    }
  switch (m_level)
    {
    case AlertLevel::None:
      m_level = AlertLevel::Notify;
      m_run = 0;
      return true;
    case AlertLevel::Notify:
      if (++m_run >= m_window)
        {
          m_level = AlertLevel::Charge;
          return true;
        }
      return false;
    case AlertLevel::Charge:
      return false;
    }
  return false;
}

AlertLevel
Escalate (const std::vector<bool> &violations, const AlertPolicy &policy)
{
  Escalation e (policy.window);
  for (bool v : violations)
    {
      e.Step (v);
    }
  return e.Level ();
}

AlertMonitor::AlertMonitor (AlertPolicy policy)
  : m_policy (policy)
{
  m_policy.Validate ();
}

void
AlertMonitor::OnReport (const EmissionReading &reading, SimTime receivedAt)
{
  ++m_reports;
  auto [it, fresh] = m_vehicles.try_emplace (
      reading.vehicleId,
      VehicleState{Escalation (m_policy.window), -std::numeric_limits<double>::infinity ()});
  VehicleState &st = it->second;
  if (reading.timestamp <= st.newest)
    {
      return;
    }
  st.newest = reading.timestamp;

  Evaluation ev = EvaluateReading (reading, m_policy);
  if (ev.Violation ())
    {
      ++m_violations;
    }
  if (st.escalation.Step (ev.Violation ()))
    {
      m_decisions.push_back ({reading.vehicleId, receivedAt, reading.timestamp,
                              st.escalation.Level (), std::move (ev.exceeded)});
    }
}

AlertLevel
AlertMonitor::LevelOf (std::uint32_t vehicleId) const
{
  auto it = m_vehicles.find (vehicleId);
  return it == m_vehicles.end () ? AlertLevel::None : it->second.escalation.Level ();
}

} // namespace vexsim
