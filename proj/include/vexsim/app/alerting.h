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

#ifndef VEXSIM_APP_ALERTING_H
#define VEXSIM_APP_ALERTING_H

#include "vexsim/app/emission.h"

#include <map>
#include <string>
#include <vector>

namespace vexsim {

struct AlertPolicy
{
  double coPpm = 4500.0;
  double hcPpm = 300.0;
  double noxPpm = 600.0;
  std::uint32_t window = 3;

  double Threshold (Gas gas) const;
  /// Throws ConfigError for a non-positive threshold or a zero window.
  void Validate () const;
};

struct Evaluation
{
  std::vector<Gas> exceeded; // empty means OK

  bool Violation () const { return !exceeded.empty (); }
};

/// Lists every gas strictly above its threshold.
Evaluation EvaluateReading (const EmissionReading &reading, const AlertPolicy &policy);

enum class AlertLevel : std::uint8_t
{
  None,
  Notify,
  Charge,
};

const char *ToString (AlertLevel level);

/// Incremental escalation. The first violation notifies the owner; once
/// notified, `window` consecutive violations lead to a charge. An OK report
/// resets the run but never lowers the level.
class Escalation
{
public:
  explicit Escalation (std::uint32_t window) : m_window (window) {}

  /// Returns true when the level rose on this report.
  bool Step (bool violation);
  AlertLevel Level () const { return m_level; }

private:
  std::uint32_t m_window;
  AlertLevel m_level = AlertLevel::None;
  std::uint32_t m_run = 0;
};

/// Level reached after walking a timestamp-ordered violation history.
AlertLevel Escalate (const std::vector<bool> &violations, const AlertPolicy &policy);

struct AlertDecision
{
  std::uint32_t vehicleId;
  SimTime time;     // server receive time of the triggering report
  SimTime reported; // reading timestamp
  AlertLevel level;
  std::vector<Gas> gases;
};

/**
 * Server-side alert state over received reports. Reports are taken in
 * reading-timestamp order per vehicle; a report older than the newest one
 * already seen for that vehicle is ignored for escalation.
 */
class AlertMonitor
{
public:
  explicit AlertMonitor (AlertPolicy policy);

  void OnReport (const EmissionReading &reading, SimTime receivedAt);

  AlertLevel LevelOf (std::uint32_t vehicleId) const;
  const std::vector<AlertDecision> &Decisions () const { return m_decisions; }
  std::uint64_t Reports () const { return m_reports; }
  std::uint64_t Violations () const { return m_violations; }

private:
  struct VehicleState
  {
    Escalation escalation;
    SimTime newest;
  };

  AlertPolicy m_policy;
  std::map<std::uint32_t, VehicleState> m_vehicles;
  std::vector<AlertDecision> m_decisions;
  std::uint64_t m_reports = 0;
  std::uint64_t m_violations = 0;
};

} // namespace vexsim

#endif // VEXSIM_APP_ALERTING_H
