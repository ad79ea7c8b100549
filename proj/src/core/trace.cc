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

#include "vexsim/core/trace.h"

#include <cstdio>

namespace vexsim {

const char *
ToString (Layer layer)
{
  switch (layer)
    {
    case Layer::Phy:
      return "PHY";
    case Layer::Mac:
      return "MAC";
    case Layer::Rtg:
      return "RTG";
    case Layer::App:
      return "APP";
    case Layer::Energy:
      return "ENERGY";
    }
  return "?";
}

void
Tracer::Log (SimTime time, NodeId node, Layer layer, std::string_view event,
             std::string_view details)
{
  if (!m_out)
    {
      return;
    }
  char stamp[32];
  std::snprintf (stamp, sizeof stamp, "%.9f", time);
  *m_out << stamp << ' ';
  if (node == kBroadcast)
    {
      *m_out << '*';
    }
  else
    {
      *m_out << node;
    }
  *m_out << ' ' << ToString (layer) << ' ' << event;
  if (!details.empty ())
    {
      *m_out << ' ' << details;
    }
  *m_out << '\n';
}

} // namespace vexsim
