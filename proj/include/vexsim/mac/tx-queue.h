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

#ifndef VEXSIM_MAC_TX_QUEUE_H
#define VEXSIM_MAC_TX_QUEUE_H

#include "vexsim/phy/frame.h"

#include <deque>
#include <functional>
#include <vector>

namespace vexsim {

/// FIFO interface queue with tail drop.
class TxQueue
{
public:
  explicit TxQueue (std::size_t capacity = 50);

  /// False (and the frame is discarded) when the queue is full.
  bool Push (Frame frame);
  Frame Pop ();
  const Frame &Front () const { return m_frames.front (); }

  bool Empty () const { return m_frames.empty (); }
  std::size_t Size () const { return m_frames.size (); }
  std::size_t Capacity () const { return m_capacity; }
  std::uint64_t Overflows () const { return m_overflows; }

  /// Removes every frame matching `pred`, keeping the order of the rest.
  std::vector<Frame> RemoveIf (const std::function<bool (const Frame &)> &pred);

private:
  std::deque<Frame> m_frames;
  std::size_t m_capacity;
  std::uint64_t m_overflows = 0;
};

} // namespace vexsim

#endif // VEXSIM_MAC_TX_QUEUE_H
