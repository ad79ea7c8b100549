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

#ifndef VEXSIM_MOBILITY_TOPOLOGY_H
#define VEXSIM_MOBILITY_TOPOLOGY_H

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace vexsim {

struct Position
{
  double x = 0.0;
  double y = 0.0;

  bool operator== (const Position &) const = default;
};

double Distance (const Position &a, const Position &b);

class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Street grid over the rectangular area. Streets run along every
/// multiple of the spacing, including both borders.
struct GridSpec
{
  double width = 1000.0;
  double height = 1000.0;
  double streetSpacing = 200.0;

  /// Throws ConfigError unless the spacing tiles both sides exactly.
  void Validate () const;
  int StreetsX () const; // vertical streets (x = i * spacing)
  int StreetsY () const; // horizontal streets
  bool Contains (const Position &p) const;

  bool operator== (const GridSpec &) const = default;
};

struct BaseStationLayout
{
  std::vector<Position> stations;
  std::size_t serverIndex = 0;
};

/// Square lattice of `count` stations, one per cell, cell centres at
/// ((i + 0.5) w/n, (j + 0.5) h/n) with index j * n + i. The server is the
/// station nearest the centre of the area.
BaseStationLayout PlaceBaseStations (const GridSpec &grid, std::size_t count);

} // namespace vexsim

#endif // VEXSIM_MOBILITY_TOPOLOGY_H
