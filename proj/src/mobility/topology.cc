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

#include "vexsim/mobility/topology.h"

#include <cmath>
#include <limits>

namespace vexsim {

double
Distance (const Position &a, const Position &b)
{
  return std::hypot (a.x - b.x, a.y - b.y);
}

namespace {

bool
TilesExactly (double length, double spacing)
{
  const double blocks = length / spacing;
  return std::abs (blocks - std::round (blocks)) < 1e-9 && std::round (blocks) >= 1.0;
}

} // namespace

void
GridSpec::Validate () const
{
  if (!(width > 0.0) || !(height > 0.0))
    {
      throw ConfigError ("topology: width and height must be positive");
    }
  if (!(streetSpacing > 0.0))
    {
      throw ConfigError ("topology.street_spacing_m must be positive");
    }
  if (!TilesExactly (width, streetSpacing) || !TilesExactly (height, streetSpacing))
    {
      throw ConfigError ("topology.street_spacing_m must divide the area into whole blocks");
    }
}

int
GridSpec::StreetsX () const
{
  return static_cast<int> (std::lround (width / streetSpacing)) + 1;
}

int
GridSpec::StreetsY () const
{
  return static_cast<int> (std::lround (height / streetSpacing)) + 1;
}

bool
GridSpec::Contains (const Position &p) const
{
  constexpr double eps = 1e-9;
  return p.x >= -eps && p.x <= width + eps && p.y >= -eps && p.y <= height + eps;
}

BaseStationLayout
PlaceBaseStations (const GridSpec &grid, std::size_t count)
{
  const auto side = static_cast<std::size_t> (std::llround (std::sqrt (static_cast<double> (count))));
  if (count == 0 || side * side != count)
    {
      throw ConfigError ("base_stations must be a perfect square (got " + std::to_string (count) + ")");
    }
  BaseStationLayout layout;
  layout.stations.reserve (count);
  const double dx = grid.width / static_cast<double> (side);
  const double dy = grid.height / static_cast<double> (side);
  for (std::size_t j = 0; j < side; ++j)
    {
      for (std::size_t i = 0; i < side; ++i)
        {
          layout.stations.push_back ({(static_cast<double> (i) + 0.5) * dx,
                                      (static_cast<double> (j) + 0.5) * dy});
        }
    }
  const Position centre{grid.width / 2.0, grid.height / 2.0};
  double best = std::numeric_limits<double>::infinity ();
  for (std::size_t k = 0; k < layout.stations.size (); ++k)
    {
      const double d = Distance (layout.stations[k], centre);
      if (d < best - 1e-12)
        {
          best = d;
          layout.serverIndex = k;
        }
    }
  return layout;
}

} // namespace vexsim
