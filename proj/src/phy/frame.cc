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

#include "vexsim/phy/frame.h"

namespace vexsim {

std::uint32_t
Packet::SizeBytes () const
{
  struct Visitor
  {
    std::uint32_t operator() (const DataBody &d) const { return d.appBytes; }
    std::uint32_t operator() (const Rreq &) const { return kRreqBytes; }
    std::uint32_t operator() (const Rrep &) const { return kRrepBytes; }
    std::uint32_t operator() (const Rerr &r) const { return RerrBytes (r); }
  };
  return kNetworkHeaderBytes + std::visit (Visitor{}, body);
}

const char *
ToString (FrameKind kind)
{
  switch (kind)
    {
    case FrameKind::Data:
      return "DATA";
    case FrameKind::Ack:
      return "ACK";
    case FrameKind::Control:
      return "CTRL";
    case FrameKind::Routing:
      return "ROUTING";
    }
  return "?";
}

std::uint32_t
Frame::PayloadBytes () const
{
  if (kind == FrameKind::Data || kind == FrameKind::Routing)
    {
      return packet.SizeBytes ();
    }
  return 0;
}

} // namespace vexsim
