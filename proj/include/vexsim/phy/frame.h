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

#ifndef VEXSIM_PHY_FRAME_H
#define VEXSIM_PHY_FRAME_H

#include "vexsim/core/types.h"
#include "vexsim/routing/aodv-header.h"

#include <array>
#include <cstdint>
#include <variant>

namespace vexsim {

inline constexpr std::size_t kReadingRecordBytes = 32;
using ReadingRecord = std::array<std::uint8_t, kReadingRecordBytes>;

inline constexpr std::uint32_t kNetworkHeaderBytes = 20;

/// Application report. `appBytes` is the nominal CBR payload; the reading
/// occupies the first kReadingRecordBytes of it.
struct DataBody
{
  std::uint64_t packetId = 0;
  SimTime created = 0.0;
  std::uint32_t appBytes = 512;
  ReadingRecord record{};
};

struct Packet
{
  NodeId origin = 0;
  NodeId destination = 0;
  std::uint8_t hops = 0; // links traversed so far
  std::variant<DataBody, Rreq, Rrep, Rerr> body;

  bool IsData () const { return std::holds_alternative<DataBody> (body); }
  std::uint32_t SizeBytes () const;
};

enum class FrameKind : std::uint8_t
{
  Data,
  Ack,
  Control,
  Routing,
};

const char *ToString (FrameKind kind);

struct Frame
{
  FrameKind kind = FrameKind::Data;
  NodeId transmitter = 0;
  NodeId receiver = kBroadcast;
  std::uint32_t seq = 0;
  std::uint32_t macHeaderBytes = 0;
  bool expectsAck = false;
  double schedulePhase = 0.0; // SYNC frames: sender's listen-window offset
  Packet packet;              // meaningful for Data and Routing frames

  bool IsBroadcast () const { return receiver == kBroadcast; }
  /// Network-layer bytes carried (zero for Ack/Control).
  std::uint32_t PayloadBytes () const;
  std::uint32_t SizeBytes () const { return macHeaderBytes + PayloadBytes (); }
};

} // namespace vexsim

#endif // VEXSIM_PHY_FRAME_H
