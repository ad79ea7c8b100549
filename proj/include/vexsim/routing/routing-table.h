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

#ifndef VEXSIM_ROUTING_ROUTING_TABLE_H
#define VEXSIM_ROUTING_ROUTING_TABLE_H

#include "vexsim/core/types.h"

#include <map>
#include <optional>
#include <set>
#include <vector>

namespace vexsim {

struct RouteEntry
{
  NodeId destination = 0;
  NodeId nextHop = 0;
  std::uint32_t hopCount = 0;
  std::uint32_t destinationSeq = 0;
  bool validSeq = false;
  bool valid = false;
  SimTime expiry = 0.0;
  std::set<NodeId> precursors;

  bool UsableAt (SimTime now) const { return valid && expiry > now; }
};

/**
 * Per-node AODV routing table. Entries are never erased; invalidated
 * rows keep their sequence number so later RREQs can ask for something
 * fresher.
 */
class RoutingTable
{
public:
  /// Valid, unexpired entry for `destination`.
  std::optional<RouteEntry> Lookup (NodeId destination, SimTime now) const;
  /// Raw row, whatever its state.
  RouteEntry *Find (NodeId destination);
  const RouteEntry *Find (NodeId destination) const;

  /// Inserts or overwrites the row for entry.destination.
  RouteEntry &Install (const RouteEntry &entry);
  void Refresh (NodeId destination, SimTime expiry);

  /// Marks the row unusable and bumps its sequence number.
  void Invalidate (NodeId destination);

  /// Invalidates every valid route through `nextHop`; returns the affected
  /// rows as they were before invalidation (sequence already bumped).
  std::vector<RouteEntry> InvalidateVia (NodeId nextHop, SimTime now);

  const std::map<NodeId, RouteEntry> &Entries () const { return m_entries; }

private:
  std::map<NodeId, RouteEntry> m_entries;
};

} // namespace vexsim

#endif // VEXSIM_ROUTING_ROUTING_TABLE_H
