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

#ifndef VEXSIM_APP_CBR_H
#define VEXSIM_APP_CBR_H

#include "vexsim/core/types.h"

#include <cstdint>
#include <vector>

namespace vexsim {

struct CbrConfig
{
  double interval = 0.1;
  std::uint32_t payloadBytes = 512;
  SimTime start = 10.0;

  /// Throws ConfigError for a non-positive interval or payload, or a
  /// payload too small for one reading record.
  void Validate () const;
};

/// Number of sends at start, start + interval, ... strictly before horizon.
std::uint64_t CbrPacketCount (const CbrConfig &config, SimTime horizon);

/// Send instants, start + k * interval for k < CbrPacketCount.
std::vector<SimTime> GenerateCbr (const CbrConfig &config, SimTime horizon);

} // namespace vexsim

#endif // VEXSIM_APP_CBR_H
