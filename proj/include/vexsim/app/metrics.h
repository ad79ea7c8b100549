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

#ifndef VEXSIM_APP_METRICS_H
#define VEXSIM_APP_METRICS_H

#include "vexsim/core/drop-reason.h"
#include "vexsim/core/types.h"

#include <json.hpp>

#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <unordered_map>
#include <vector>

namespace vexsim {

enum class Outcome : std::uint8_t
{
  Received,
  Dropped,
  InFlight, // still travelling at the horizon; left out of statistics
};

const char *ToString (Outcome outcome);

struct PacketRecord
{
  std::uint64_t id = 0;
  NodeId vehicle = 0;
  SimTime sent = 0.0;
  Outcome outcome = Outcome::InFlight;
  std::optional<SimTime> received;
  std::optional<DropReason> reason;
  std::optional<SimTime> dropTime;
  std::uint32_t hops = 0;

  std::optional<double> Delay () const;
};

/**
 * Terminal ledger for DATA packets. A delivery settles a packet even if a
 * copy was dropped elsewhere; otherwise the first drop stands.
 */
class PacketLedger
{
public:
  /// Throws std::logic_error for a repeated id.
  void Generated (std::uint64_t id, NodeId vehicle, SimTime sent);
  /// Unknown ids throw std::logic_error; repeats are ignored.
  void Received (std::uint64_t id, SimTime at, std::uint32_t hops);
  void Dropped (std::uint64_t id, DropReason reason, SimTime at);

  std::size_t Size () const { return m_order.size (); }
  const PacketRecord &Get (std::uint64_t id) const;
  /// Records in generation order.
  std::vector<PacketRecord> Records () const;

private:
  std::vector<std::uint64_t> m_order;
  std::unordered_map<std::uint64_t, PacketRecord> m_records;
};

/// received / (received + dropped); nullopt when both are zero.
std::optional<double> Pdr (std::uint64_t received, std::uint64_t dropped);
/// attempted / possible. Throws std::invalid_argument when possible is zero.
double TransmittedFraction (std::uint64_t attempted, std::uint64_t possible);

struct DelayStats
{
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  std::size_t count = 0;
};

/// nullopt for an empty input.
std::optional<DelayStats> ComputeDelayStats (std::span<const double> delays);
std::optional<DelayStats> ComputeDelayStats (const std::vector<PacketRecord> &records);

struct MetricsSummary
{
  std::uint64_t generated = 0;
  std::uint64_t received = 0;
  std::uint64_t dropped = 0;
  std::uint64_t inFlight = 0;
  std::optional<DelayStats> delay;
  std::optional<double> pdr;
  double transmittedFraction = 0.0;
  double residualEnergyJ = 0.0;
  std::map<DropReason, std::uint64_t> drops;
};

MetricsSummary Summarize (const std::vector<PacketRecord> &records, std::uint64_t possible,
                          double residualEnergyJ);

nlohmann::json ToJson (const MetricsSummary &summary);

/// Header plus one row per record; empty cells for absent fields.
void WritePacketsCsv (std::ostream &os, const std::vector<PacketRecord> &records);

} // namespace vexsim

#endif // VEXSIM_APP_METRICS_H
