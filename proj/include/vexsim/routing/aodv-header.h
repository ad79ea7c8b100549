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

#ifndef VEXSIM_ROUTING_AODV_HEADER_H
#define VEXSIM_ROUTING_AODV_HEADER_H

#include "vexsim/core/types.h"

#include <cstdint>
#include <utility>
#include <vector>

namespace vexsim {

struct Rreq
{
  std::uint32_t rreqId = 0;
  NodeId originator = 0;
  std::uint32_t originatorSeq = 0;
  NodeId destination = 0;
  std::uint32_t destinationSeq = 0;
  bool unknownSeq = true;
  bool destinationOnly = false; // only the destination may answer
  std::uint8_t hopCount = 0;
};

struct Rrep
{
  NodeId destination = 0;
  std::uint32_t destinationSeq = 0;
  NodeId originator = 0;
  std::uint8_t hopCount = 0;
  double lifetime = 0.0; // seconds
};

struct Rerr
{
  std::vector<std::pair<NodeId, std::uint32_t>> unreachable;
};

// RFC 3561 message sizes
inline constexpr std::uint32_t kRreqBytes = 24;
inline constexpr std::uint32_t kRrepBytes = 20;
inline std::uint32_t
RerrBytes (const Rerr &rerr)
{
  return 4 + 8 * static_cast<std::uint32_t> (rerr.unreachable.size ());
}

} // namespace vexsim

#endif // VEXSIM_ROUTING_AODV_HEADER_H
