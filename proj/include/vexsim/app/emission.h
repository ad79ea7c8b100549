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

#ifndef VEXSIM_APP_EMISSION_H
#define VEXSIM_APP_EMISSION_H

#include "vexsim/core/rng-stream.h"
#include "vexsim/phy/frame.h"

#include <array>
#include <stdexcept>

namespace vexsim {

enum class Gas : std::uint8_t
{
  Co,
  Hc,
  Nox,
};

inline constexpr std::array<Gas, 3> kAllGases = {Gas::Co, Gas::Hc, Gas::Nox};
const char *ToString (Gas gas);

struct EmissionReading
{
  std::uint32_t vehicleId = 0;
  std::uint32_t sequence = 0;
  SimTime timestamp = 0.0;
  double coPpm = 0.0;
  double hcPpm = 0.0;
  double noxPpm = 0.0;

  double Level (Gas gas) const;
};

class RecordError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Little-endian fixed layout: vehicle u32, sequence u32, timestamp f64,
/// CO/HC/NOx f32, checksum u32. Concentrations keep float precision.
ReadingRecord EncodeReading (const EmissionReading &reading);
/// Throws RecordError when the checksum does not match.
EmissionReading DecodeReading (const ReadingRecord &record);

struct EmissionProfile
{
  double coPpm;
  double hcPpm;
  double noxPpm;
};

/// Typical tailpipe levels of a tuned engine and of a badly worn one.
inline constexpr EmissionProfile kCleanProfile{1500.0, 120.0, 250.0};
inline constexpr EmissionProfile kDirtyProfile{7000.0, 450.0, 900.0};

/// Baseline plus Gaussian noise (relative std `noise`), clamped at zero.
class EmissionGenerator
{
public:
  EmissionGenerator (std::uint32_t vehicleId, const EmissionProfile &profile, RngStream rng,
                     double noise = 0.1);

  EmissionReading Next (SimTime now);

private:
  std::uint32_t m_vehicle;
  EmissionProfile m_profile;
  RngStream m_rng;
  double m_noise;
  std::uint32_t m_sequence = 0;
};

} // namespace vexsim

#endif // VEXSIM_APP_EMISSION_H
