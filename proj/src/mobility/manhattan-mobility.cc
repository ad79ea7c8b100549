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

#include "vexsim/mobility/manhattan-mobility.h"

#include <cmath>
#include <stdexcept>

namespace vexsim {

namespace {

constexpr double kEps = 1e-9;

bool
IsHorizontal (Heading h)
{
  return h == Heading::East || h == Heading::West;
}

bool
IsPositive (Heading h)
{
  return h == Heading::East || h == Heading::North;
}

bool
LeavesArea (const Position &at, Heading h, const GridSpec &grid)
{
  switch (h)
    {
    case Heading::East:
      return at.x >= grid.width - kEps;
    case Heading::West:
      return at.x <= kEps;
    case Heading::North:
      return at.y >= grid.height - kEps;
    case Heading::South:
      return at.y <= kEps;
    }
  return true;
}

double
Snap (double v, double spacing)
{
  return std::round (v / spacing) * spacing;
}

int
StreetIndex (const Position &p, Heading h, double spacing)
{
  return static_cast<int> (std::lround ((IsHorizontal (h) ? p.y : p.x) / spacing));
}

Heading
DrawTurn (const Position &at, Heading arriving, const GridSpec &grid,
          const TurnProbabilities &probs, RngStream &rng, std::vector<TurnRecord> *log)
{
  const auto options = TurnOptions (at, arriving, grid, probs);
  const double u = rng.Uniform01 ();
  double acc = 0.0;
  const TurnOption *chosen = &options.back ();
  for (const auto &opt : options)
    {
      acc += opt.probability;
      if (u < acc)
        {
          chosen = &opt;
          break;
        }
    }
  if (log)
    {
      log->push_back ({at, arriving, chosen->turn, options.size () == 3});
    }
  return chosen->heading;
}

} // namespace

const char *
ToString (Heading heading)
{
  switch (heading)
    {
    case Heading::North:
      return "N";
    case Heading::East:
      return "E";
    case Heading::South:
      return "S";
    case Heading::West:
      return "W";
    }
  return "?";
}

Heading
TurnedHeading (Heading heading, Turn turn)
{
  const int h = static_cast<int> (heading);
  switch (turn)
    {
    case Turn::Straight:
      return heading;
    case Turn::Left:
      return static_cast<Heading> ((h + 3) % 4);
    case Turn::Right:
      return static_cast<Heading> ((h + 1) % 4);
    }
  return heading;
}

std::vector<TurnOption>
TurnOptions (const Position &at, Heading heading, const GridSpec &grid,
             const TurnProbabilities &probs)
{
  std::vector<TurnOption> options;
  const std::pair<Turn, double> candidates[] = {
      {Turn::Straight, probs.straight}, {Turn::Left, probs.left}, {Turn::Right, probs.right}};
  double total = 0.0;
  for (const auto &[turn, p] : candidates)
    {
      const Heading next = TurnedHeading (heading, turn);
      if (p > 0.0 && !LeavesArea (at, next, grid))
        {
          options.push_back ({turn, next, p});
          total += p;
        }
    }
  if (options.empty ())
    {
      // single-street grid: the only way out is back
      const Heading back = TurnedHeading (TurnedHeading (heading, Turn::Right), Turn::Right);
      options.push_back ({Turn::Straight, back, 1.0});
      return options;
    }
  for (auto &opt : options)
    {
      opt.probability /= total;
    }
  return options;
}

bool
OnStreet (const Position &p, const GridSpec &grid)
{
  if (!grid.Contains (p))
    {
      return false;
    }
  const double s = grid.streetSpacing;
  const bool onVertical = std::abs (p.x - Snap (p.x, s)) < 1e-6;
  const bool onHorizontal = std::abs (p.y - Snap (p.y, s)) < 1e-6;
  return onVertical || onHorizontal;
}

VehicleMotion
ManhattanStep (const VehicleMotion &motion, double dt, RngStream &rng, const GridSpec &grid,
               const TurnProbabilities &probs, std::vector<TurnRecord> *log)
{
  if (!(dt > 0.0))
    {
      throw std::invalid_argument ("ManhattanStep: dt must be positive");
    }
  const double s = grid.streetSpacing;
  VehicleMotion next = motion;
  double remaining = motion.speed * dt;

  while (remaining > kEps)
    {
      double &along = IsHorizontal (next.heading) ? next.position.x : next.position.y;
      const double cell = along / s;
      const double target = IsPositive (next.heading) ? (std::floor (cell + kEps) + 1.0) * s
                                                      : (std::ceil (cell - kEps) - 1.0) * s;
      const double gap = std::abs (target - along);
      if (remaining + kEps < gap)
        {
          along += IsPositive (next.heading) ? remaining : -remaining;
          remaining = 0.0;
          break;
        }
      along = target;
      remaining -= gap;
      next.heading = DrawTurn (next.position, next.heading, grid, probs, rng, log);
    }
  // keep the cross coordinate exactly on the street line
  if (IsHorizontal (next.heading))
    {
      next.position.y = Snap (next.position.y, s);
    }
  else
    {
      next.position.x = Snap (next.position.x, s);
    }
  next.street = StreetIndex (next.position, next.heading, s);
  return next;
}

VehicleMotion
PlaceVehicle (const GridSpec &grid, double speed, RngStream &rng)
{
  const auto ix = rng.UniformInt (0, static_cast<std::uint64_t> (grid.StreetsX () - 1));
  const auto iy = rng.UniformInt (0, static_cast<std::uint64_t> (grid.StreetsY () - 1));
  VehicleMotion m;
  m.position = {static_cast<double> (ix) * grid.streetSpacing,
                static_cast<double> (iy) * grid.streetSpacing};
  m.speed = speed;
  std::vector<Heading> legal;
  for (Heading h : {Heading::North, Heading::East, Heading::South, Heading::West})
    {
      if (!LeavesArea (m.position, h, grid))
        {
          legal.push_back (h);
        }
    }
  m.heading = legal[rng.UniformInt (0, legal.size () - 1)];
  m.street = StreetIndex (m.position, m.heading, grid.streetSpacing);
  return m;
}

} // namespace vexsim
