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

#ifndef VEXSIM_ENERGY_ENERGY_MODEL_H
#define VEXSIM_ENERGY_ENERGY_MODEL_H

#include "vexsim/core/scheduler.h"
#include "vexsim/core/trace.h"
#include "vexsim/phy/wireless-channel.h"

#include <array>
#include <functional>
#include <optional>
#include <vector>

namespace vexsim {

struct EnergyParams
{
  double initialJ = 4700.0;
  double txW = 2.0;
  double rxW = 1.0;
  double idleW = 0.8;
  double sleepW = 1e-4;

  double Power (RadioMode mode) const;
  /// Requires non-negative values and sleep < idle <= rx.
  void Validate () const;
  bool operator== (const EnergyParams &) const = default;
};

/// Neumaier summation; keeps long runs of small charges exact to a few ulps.
class CompensatedSum
{
public:
  void Add (double x);
  double Value () const { return m_sum + m_carry; }

private:
  double m_sum = 0.0;
  double m_carry = 0.0;
};

/// Battery bookkeeping for one node.
class EnergyLedger
{
public:
  explicit EnergyLedger (const EnergyParams &params = {});

  /// Charges P_mode * duration, never below zero. Returns the joules
  /// actually taken. Throws std::invalid_argument for negative duration.
  double Account (RadioMode mode, double duration);

  double Residual () const;
  double Consumed () const { return m_consumed.Value (); }
  double ModeJoules (RadioMode mode) const;
  double ModeSeconds (RadioMode mode) const;
  bool Depleted () const { return Residual () <= 0.0; }
  const EnergyParams &Params () const { return m_params; }

private:
  EnergyParams m_params;
  bool m_exhausted = false;
  CompensatedSum m_consumed;
  std::array<CompensatedSum, 4> m_joules{};
  std::array<CompensatedSum, 4> m_seconds{};
};

struct ModeInterval
{
  SimTime start;
  SimTime end;
  RadioMode mode;
  double joules;
};

struct EnergySample
{
  SimTime time;
  double residualJ;
};

/**
 * Feeds a ledger from radio mode changes, samples the residual once per
 * sample period and fires `onDepleted` when the battery runs out.
 */
class EnergyMeter
{
public:
  EnergyMeter (Scheduler &scheduler, NodeId node, const EnergyParams &params, Tracer &tracer,
               double samplePeriod = 1.0);

  void SetDepletionCallback (std::function<void ()> callback) { m_onDepleted = std::move (callback); }

  /// Begins accounting at the current time in `mode`.
  void Start (RadioMode mode);
  void OnModeChange (RadioMode mode);
  /// Charges the current mode up to now.
  void Flush ();

  const EnergyLedger &Ledger () const { return m_ledger; }
  const std::vector<ModeInterval> &Intervals () const { return m_intervals; }
  const std::vector<EnergySample> &Series () const { return m_series; }
  std::optional<SimTime> DepletionTime () const { return m_depletedAt; }
  RadioMode Mode () const { return m_mode; }

private:
  void ScheduleDepletion ();
  void Deplete ();
  void Sample ();

  Scheduler &m_scheduler;
  NodeId m_node;
  Tracer &m_tracer;
  EnergyLedger m_ledger;
  double m_samplePeriod;
  RadioMode m_mode = RadioMode::Idle;
  SimTime m_since = 0.0;
  bool m_running = false;
  EventHandle m_depletion = 0;
  std::optional<SimTime> m_depletedAt;
  std::function<void ()> m_onDepleted;
  std::vector<ModeInterval> m_intervals;
  std::vector<EnergySample> m_series;
};

/// residual / (consumed / window): seconds until empty at the observed
/// average draw. +infinity when nothing was consumed. Throws
/// std::invalid_argument unless window > 0.
double ProjectLifetime (double residualJ, double consumedJ, double windowS);
double ProjectLifetime (const EnergyLedger &ledger, double windowS);

} // namespace vexsim

#endif // VEXSIM_ENERGY_ENERGY_MODEL_H
