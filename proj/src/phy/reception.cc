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

#include "vexsim/phy/reception.h"

#include <algorithm>
#include <limits>
#include <numeric>

namespace vexsim {

std::vector<bool>
ResolveReception (std::span<const Arrival> arrivals, double rxThresholdW, double csThresholdW)
{
  const std::size_t n = arrivals.size ();
  std::vector<bool> delivered (n, false);

  // Sweep over the interferers (>= cs threshold) sorted by start time.
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < n; ++i)
    {
      if (arrivals[i].powerW >= csThresholdW)
        {
          order.push_back (i);
        }
    }
  std::sort (order.begin (), order.end (), [&] (std::size_t a, std::size_t b) {
    return arrivals[a].start != arrivals[b].start ? arrivals[a].start < arrivals[b].start : a < b;
  });

  // An arrival still on air when a later one starts spoils both. Tracking
  // only the longest-running earlier arrival is enough: any other earlier
  // arrival overlapping k also overlaps whatever started between it and k.
  std::vector<bool> clean (order.size (), true);
  double latestEnd = -std::numeric_limits<double>::infinity ();
  std::size_t latestOwner = 0;
  for (std::size_t k = 0; k < order.size (); ++k)
    {
      const Arrival &a = arrivals[order[k]];
      if (latestEnd > a.start)
        {
          clean[k] = false;
          clean[latestOwner] = false;
        }
      if (a.end > latestEnd)
        {
          latestEnd = a.end;
          latestOwner = k;
        }
    }
  for (std::size_t k = 0; k < order.size (); ++k)
    {
      const Arrival &a = arrivals[order[k]];
      delivered[order[k]] = clean[k] && a.powerW >= rxThresholdW;
    }
  return delivered;
}

} // namespace vexsim
