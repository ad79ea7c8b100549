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

#ifndef VEXSIM_MOBILITY_MANHATTAN_MOBILITY_H
#define VEXSIM_MOBILITY_MANHATTAN_MOBILITY_H

#include "vexsim/core/rng-stream.h"
#include "vexsim/mobility/topology.h"

#include <cstdint>
#include <vector>

namespace vexsim {

/// North is +y, East is +x.
enum class Heading : std::uint8_t
{
  North,
  East,
  South,
  West,
};

enum class Turn : std::uint8_t
{
  Straight,
  Left,
  Right,
};

const char *ToString (Heading heading);
Heading TurnedHeading (Heading heading, Turn turn);

struct TurnProbabilities
{
  double straight = 0.5;
  double left = 0.25;
  double right = 0.25;

  bool operator== (const TurnProbabilities &) const = default;
};

struct VehicleMotion
{
  Position position;
  Heading heading = Heading::East;
  double speed = 10.0; // m/s
  int street = 0;      // index of the grid line the vehicle is driving on
};

struct TurnOption
{
  Turn turn;
  Heading heading;
  double probability;
};

/// Legal continuations at intersection `at` for a vehicle arriving with
/// `heading`. Options that leave the area are removed and the rest are
/// renormalised to sum to one. No U-turns.
std::vector<TurnOption> TurnOptions (const Position &at, Heading heading, const GridSpec &grid,
                                     const TurnProbabilities &probs);

struct TurnRecord
{
  Position at;
  Heading arriving;
  Turn turn;
  bool interior; // all three options were legal
};

/// Advances the vehicle speed * dt along the street network, drawing a
/// turn at every intersection it reaches (including one it lands on
/// exactly). Throws std::invalid_argument if dt <= 0.
VehicleMotion ManhattanStep (const VehicleMotion &motion, double dt, RngStream &rng,
                             const GridSpec &grid, const TurnProbabilities &probs = {},
                             std::vector<TurnRecord> *log = nullptr);

/// Random intersection with a random legal heading.
VehicleMotion PlaceVehicle (const GridSpec &grid, double speed, RngStream &rng);

bool OnStreet (const Position &p, const GridSpec &grid);

} // namespace vexsim

#endif // VEXSIM_MOBILITY_MANHATTAN_MOBILITY_H
