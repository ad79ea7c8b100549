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

#include "vexsim/app/emission.h"

#include <algorithm>
#include <bit>
#include <cstring>

namespace vexsim {

const char *
ToString (Gas gas)
{
  switch (gas)
    {
    case Gas::Co:
      return "CO";
    case Gas::Hc:
      return "HC";
    case Gas::Nox:
      return "NOx";
    }
  return "?";
}

double
EmissionReading::Level (Gas gas) const
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

namespace {

void
PutU32 (ReadingRecord &r, std::size_t at, std::uint32_t v)
{
  for (int i = 0; i < 4; ++i)
    {
      r[at + i] = static_cast<std::uint8_t> (v >> (8 * i));
    }
}

void
PutU64 (ReadingRecord &r, std::size_t at, std::uint64_t v)
{
  for (int i = 0; i < 8; ++i)
    {
      r[at + i] = static_cast<std::uint8_t> (v >> (8 * i));
    }
}

std::uint32_t
GetU32 (const ReadingRecord &r, std::size_t at)
{
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i)
    {
      v |= static_cast<std::uint32_t> (r[at + i]) << (8 * i);
    }
  return v;
}

std::uint64_t
GetU64 (const ReadingRecord &r, std::size_t at)
{
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i)
    {
      v |= static_cast<std::uint64_t> (r[at + i]) << (8 * i);
    }
  return v;
}

std::uint32_t
Checksum (const ReadingRecord &r)
{
  std::uint32_t h = 2166136261u;
  for (std::size_t i = 0; i < 28; ++i)
    {
      h = (h ^ r[i]) * 16777619u;
    }
  return h;
}

} // namespace

ReadingRecord
EncodeReading (const EmissionReading &reading)
{
  ReadingRecord r{};
  PutU32 (r, 0, reading.vehicleId);
  PutU32 (r, 4, reading.sequence);
  PutU64 (r, 8, std::bit_cast<std::uint64_t> (reading.timestamp));
  PutU32 (r, 16, std::bit_cast<std::uint32_t> (static_cast<float> (reading.coPpm)));
  PutU32 (r, 20, std::bit_cast<std::uint32_t> (static_cast<float> (reading.hcPpm)));
  PutU32 (r, 24, std::bit_cast<std::uint32_t> (static_cast<float> (reading.noxPpm)));
  PutU32 (r, 28, Checksum (r));
  return r;
}

EmissionReading
DecodeReading (const ReadingRecord &record)
{
  if (GetU32 (record, 28) != Checksum (record))
    {
      throw RecordError ("emission record checksum mismatch");
    }
  EmissionReading reading;
  reading.vehicleId = GetU32 (record, 0);
  reading.sequence = GetU32 (record, 4);
  reading.timestamp = std::bit_cast<double> (GetU64 (record, 8));
  reading.coPpm = std::bit_cast<float> (GetU32 (record, 16));
  reading.hcPpm = std::bit_cast<float> (GetU32 (record, 20));
  reading.noxPpm = std::bit_cast<float> (GetU32 (record, 24));
  return reading;
}

EmissionGenerator::EmissionGenerator (std::uint32_t vehicleId, const EmissionProfile &profile,
                                      RngStream rng, double noise)
  : m_vehicle (vehicleId),
    m_profile (profile),
    m_rng (std::move (rng)),
    m_noise (noise)
{
}

EmissionReading
EmissionGenerator::Next (SimTime now)
{
  auto draw = [this] (double base) {
    return std::max (0.0, m_rng.Normal (base, m_noise * base));
  };
  EmissionReading r;
  r.vehicleId = m_vehicle;
  r.sequence = m_sequence++;
  r.timestamp = now;
  r.coPpm = draw (m_profile.coPpm);
  r.hcPpm = draw (m_profile.hcPpm);
  r.noxPpm = draw (m_profile.noxPpm);
  return r;
}

} // namespace vexsim
