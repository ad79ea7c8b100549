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

#include "vexsim/mac/tx-queue.h"

#include <stdexcept>

namespace vexsim {

TxQueue::TxQueue (std::size_t capacity)
  : m_capacity (capacity)
{
}

bool
TxQueue::Push (Frame frame)
{
  if (m_frames.size () >= m_capacity)
    {
      ++m_overflows;
      return false;
    }
  m_frames.push_back (std::move (frame));
  return true;
}

Frame
TxQueue::Pop ()
{
  if (m_frames.empty ())
    {
      throw std::logic_error ("pop from empty interface queue");
    }
  Frame f = std::move (m_frames.front ());
  m_frames.pop_front ();
  return f;
}

std::vector<Frame>
TxQueue::RemoveIf (const std::function<bool (const Frame &)> &pred)
{
  std::vector<Frame> removed;
  std::deque<Frame> kept;
  for (auto &f : m_frames)
    {
      if (pred (f))
        {
          removed.push_back (std::move (f));
        }
      else
        {
          kept.push_back (std::move (f));
        }
    }
  m_frames.swap (kept);
  return removed;
}

} // namespace vexsim
