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

#include "vexsim/routing/routing-table.h"

namespace vexsim {

std::optional<RouteEntry>
RoutingTable::Lookup (NodeId destination, SimTime now) const
{
  const RouteEntry *e = Find (destination);
  if (e == nullptr || !e->UsableAt (now))
    {
      return std::nullopt;
    }
  return *e;
}

RouteEntry *
RoutingTable::Find (NodeId destination)
{
  auto it = m_entries.find (destination);
  return it == m_entries.end () ? nullptr : &it->second;
}

const RouteEntry *
RoutingTable::Find (NodeId destination) const
{
  auto it = m_entries.find (destination);
  return it == m_entries.end () ? nullptr : &it->second;
}

RouteEntry &
RoutingTable::Install (const RouteEntry &entry)
{
  RouteEntry &slot = m_entries[entry.destination];
  std::set<NodeId> precursors = std::move (slot.precursors);
  slot = entry;
  slot.precursors.insert (precursors.begin (), precursors.end ());
  return slot;
}

void
RoutingTable::Refresh (NodeId destination, SimTime expiry)
{
  if (RouteEntry *e = Find (destination); e != nullptr && e->valid && e->expiry < expiry)
    {
      e->expiry = expiry;
    }
}

void
RoutingTable::Invalidate (NodeId destination)
{
  if (RouteEntry *e = Find (destination); e != nullptr && e->valid)
    {
      e->valid = false;
      if (e->validSeq)
        {
          ++e->destinationSeq;
        }
    }
}

std::vector<RouteEntry>
RoutingTable::InvalidateVia (NodeId nextHop, SimTime now)
{
  std::vector<RouteEntry> affected;
  for (auto &[dest, e] : m_entries)
    {
      if (e.valid && e.nextHop == nextHop)
        {
          const bool wasUsable = e.expiry > now;
          e.valid = false;
          if (e.validSeq)
            {
              ++e.destinationSeq;
            }
          if (wasUsable)
            {
              affected.push_back (e);
            }
        }
    }
  return affected;
}

} // namespace vexsim
