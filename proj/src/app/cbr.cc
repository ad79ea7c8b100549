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

#include "vexsim/app/cbr.h"

#include "vexsim/mobility/topology.h"
#include "vexsim/phy/frame.h"

#include <cmath>

namespace vexsim {

void
CbrConfig::Validate () const
{
  if (!(interval > 0.0))
    {
      throw ConfigError ("traffic.cbr_interval_s: must be positive");
    }
  if (payloadBytes < kReadingRecordBytes || payloadBytes > 512)
    {
      throw ConfigError ("traffic.cbr_packet_bytes: must lie in [32, 512]");
    }
  if (start < 0.0)
    {
      throw ConfigError ("traffic.start_s: must be non-negative");
    }
}

std::uint64_t
CbrPacketCount (const CbrConfig &config, SimTime horizon)
{
  if (horizon <= config.start)
    {
      return 0;
    }
  // the small slack keeps a send that lands on the horizon out
  return static_cast<std::uint64_t> (std::ceil ((horizon - config.start) / config.interval - 1e-9));
}

std::vector<SimTime>
GenerateCbr (const CbrConfig &config, SimTime horizon)
{
  const std::uint64_t n = CbrPacketCount (config, horizon);
  std::vector<SimTime> times;
  times.reserve (n);
  for (std::uint64_t k = 0; k < n; ++k)
    {
      times.push_back (config.start + static_cast<double> (k) * config.interval);
    }
  return times;
}

} // namespace vexsim
