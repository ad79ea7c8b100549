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

#include "vexsim/app/metrics.h"

#include <algorithm>
#include <iomanip>
#include <stdexcept>

namespace vexsim {

const char *
ToString (Outcome outcome)
{
  switch (outcome)
    {
    case Outcome::Received:
      return "received";
    case Outcome::Dropped:
      return "dropped";
    case Outcome::InFlight:
      return "in-flight";
    }
  return "?";
}

std::optional<double>
PacketRecord::Delay () const
{
  if (outcome != Outcome::Received || !received)
    {
      return std::nullopt;
    }
  return *received - sent;
}

void
PacketLedger::Generated (std::uint64_t id, NodeId vehicle, SimTime sent)
{
  PacketRecord rec;
  rec.id = id;
  rec.vehicle = vehicle;
  rec.sent = sent;
  if (!m_records.emplace (id, rec).second)
    {
      throw std::logic_error ("packet " + std::to_string (id) + " generated twice");
    }
  m_order.push_back (id);
}

void
PacketLedger::Received (std::uint64_t id, SimTime at, std::uint32_t hops)
{
  auto it = m_records.find (id);
  if (it == m_records.end ())
    {
      throw std::logic_error ("delivery of unknown packet " + std::to_string (id));
    }
  PacketRecord &rec = it->second;
  if (rec.outcome == Outcome::Received)
    {
      return;
    }
  rec.outcome = Outcome::Received;
  rec.received = at;
  rec.hops = hops;
  rec.reason.reset ();
  rec.dropTime.reset ();
}

void
PacketLedger::Dropped (std::uint64_t id, DropReason reason, SimTime at)
{
  auto it = m_records.find (id);
  if (it == m_records.end ())
    {
      throw std::logic_error ("drop of unknown packet " + std::to_string (id));
    }
  PacketRecord &rec = it->second;
  if (rec.outcome != Outcome::InFlight)
    {
      return;
    }
  rec.outcome = Outcome::Dropped;
  rec.reason = reason;
  rec.dropTime = at;
}

const PacketRecord &
PacketLedger::Get (std::uint64_t id) const
{
  return m_records.at (id);
}

std::vector<PacketRecord>
PacketLedger::Records () const
{
  std::vector<PacketRecord> out;
  out.reserve (m_order.size ());
  for (std::uint64_t id : m_order)
    {
      out.push_back (m_records.at (id));
    }
  return out;
}

std::optional<double>
Pdr (std::uint64_t received, std::uint64_t dropped)
{
  if (received + dropped == 0)
    {
      return std::nullopt;
    }
  return static_cast<double> (received) / static_cast<double> (received + dropped);
}

double
TransmittedFraction (std::uint64_t attempted, std::uint64_t possible)
{
  if (possible == 0)
    {
      throw std::invalid_argument ("transmitted fraction needs a positive packet budget");
    }
  return static_cast<double> (attempted) / static_cast<double> (possible);
}

std::optional<DelayStats>
ComputeDelayStats (std::span<const double> delays)
{
  if (delays.empty ())
    {
      return std::nullopt;
    }
  DelayStats s;
  s.min = *std::min_element (delays.begin (), delays.end ());
  s.max = *std::max_element (delays.begin (), delays.end ());
  double sum = 0.0;
  for (double d : delays)
    {
      sum += d;
    }
  s.count = delays.size ();
  s.mean = sum / static_cast<double> (s.count);
  return s;
}

std::optional<DelayStats>
ComputeDelayStats (const std::vector<PacketRecord> &records)
{
  std::vector<double> delays;
  for (const auto &r : records)
    {
      if (auto d = r.Delay ())
        {
          delays.push_back (*d);
        }
    }
  return ComputeDelayStats (std::span<const double> (delays));
}

MetricsSummary
Summarize (const std::vector<PacketRecord> &records, std::uint64_t possible, double residualEnergyJ)
{
  MetricsSummary s;
  s.generated = records.size ();
  for (DropReason r : kAllDropReasons)
    {
      s.drops[r] = 0;
    }
  for (const auto &r : records)
    {
      switch (r.outcome)
        {
        case Outcome::Received:
          ++s.received;
          break;
        case Outcome::Dropped:
          ++s.dropped;
          ++s.drops[*r.reason];
          break;
        case Outcome::InFlight:
          ++s.inFlight;
          break;
        }
    }
  s.delay = ComputeDelayStats (records);
  s.pdr = Pdr (s.received, s.dropped);
  s.transmittedFraction = possible > 0 ? TransmittedFraction (s.received + s.dropped, possible) : 0.0;
  s.residualEnergyJ = residualEnergyJ;
  return s;
}

nlohmann::json
ToJson (const MetricsSummary &s)
{
  nlohmann::json j;
  j["generated"] = s.generated;
  j["received"] = s.received;
  j["dropped"] = s.dropped;
  j["in_flight"] = s.inFlight;
  if (s.delay)
    {
      j["delay_min_s"] = s.delay->min;
      j["delay_max_s"] = s.delay->max;
      j["delay_avg_s"] = s.delay->mean;
    }
  else
    {
      j["delay_min_s"] = nullptr;
      j["delay_max_s"] = nullptr;
      j["delay_avg_s"] = nullptr;
    }
  j["pdr"] = s.pdr ? nlohmann::json (*s.pdr) : nlohmann::json (nullptr);
  j["transmitted_fraction"] = s.transmittedFraction;
  j["residual_energy_j"] = s.residualEnergyJ;
  nlohmann::json drops = nlohmann::json::object ();
  for (const auto &[reason, n] : s.drops)
    {
      drops[std::string (ToString (reason))] = n;
    }
  j["drops_by_reason"] = drops;
  return j;
}

void
WritePacketsCsv (std::ostream &os, const std::vector<PacketRecord> &records)
{
  os << "packet_id,send_s,outcome,recv_s,delay_s,drop_reason,hops\n";
  os << std::setprecision (9);
  for (const auto &r : records)
    {
      os << r.id << ',' << r.sent << ',' << ToString (r.outcome) << ',';
      if (r.received)
        {
          os << *r.received;
        }
      os << ',';
      if (auto d = r.Delay ())
        {
          os << *d;
        }
      os << ',';
      if (r.reason)
        {
          os << ToString (*r.reason);
        }
      os << ',' << r.hops << '\n';
    }
}

} // namespace vexsim
