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

#ifndef VEXSIM_PHY_RECEPTION_H
#define VEXSIM_PHY_RECEPTION_H

#include <span>
#include <vector>

namespace vexsim {

/// One transmission as seen by a single listening node.
struct Arrival
{
  double start;
  double end;
  double powerW;
};

/**
 * No-capture reception rule. Arrival i is delivered iff its power reaches
 * the rx threshold and no other arrival at or above the carrier-sense
 * threshold overlaps any part of [start, end). Touching intervals do not
 * overlap. Returns one flag per input, in input order.
 */
std::vector<bool> ResolveReception (std::span<const Arrival> arrivals, double rxThresholdW,
                                    double csThresholdW);

} // namespace vexsim

#endif // VEXSIM_PHY_RECEPTION_H
