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

#include "vexsim/core/scheduler.h"

#include <stdexcept>
#include <string>

namespace vexsim {

const char *
ToString (EventKind kind)
{
  switch (kind)
    {
    case EventKind::FrameArrival:
      return "frame-arrival";
    case EventKind::TransmissionEnd:
      return "tx-end";
    case EventKind::Timer:
      return "timer";
    case EventKind::MobilityTick:
      return "mobility-tick";
    case EventKind::TrafficTick:
      return "traffic-tick";
    case EventKind::EnergyDepletion:
      return "energy-depletion";
    case EventKind::Sample:
      return "sample";
    }
  return "unknown";
}

EventHandle
Scheduler::Schedule (SimTime time, std::uint32_t target, EventKind kind,
                     std::function<void ()> action)
{
  if (!(time >= m_now))
    {
      throw std::logic_error ("event scheduled in the past: t=" + std::to_string (time)
                              + " now=" + std::to_string (m_now));
    }
  const std::uint64_t seq = m_nextSeq++;
  m_heap.push (Key{time, seq});
  m_pending.emplace (seq, Entry{target, kind, std::move (action)});
  return seq;
}

EventHandle
Scheduler::ScheduleIn (SimTime delay, std::uint32_t target, EventKind kind,
                       std::function<void ()> action)
{
  return Schedule (m_now + delay, target, kind, std::move (action));
}

void
Scheduler::DropCancelledHead ()
{
  while (!m_heap.empty () && m_pending.find (m_heap.top ().seq) == m_pending.end ())
    {
      m_heap.pop ();
    }
}

std::optional<SimEvent>
Scheduler::Advance ()
{
  DropCancelledHead ();
  if (m_heap.empty ())
    {
      return std::nullopt;
    }
  const Key key = m_heap.top ();
  m_heap.pop ();
  auto it = m_pending.find (key.seq);
  SimEvent ev{key.time, key.seq, it->second.target, it->second.kind,
              std::move (it->second.action)};
  m_pending.erase (it);
  m_now = key.time;
  return ev;
}

bool
Scheduler::Cancel (EventHandle handle)
{
  return m_pending.erase (handle) > 0;
}

bool
Scheduler::IsPending (EventHandle handle) const
{
  return m_pending.find (handle) != m_pending.end ();
}

std::uint64_t
Scheduler::RunUntil (SimTime horizon)
{
  std::uint64_t count = 0;
  for (;;)
    {
      DropCancelledHead ();
      if (m_heap.empty () || m_heap.top ().time > horizon)
        {
          break;
        }
      auto ev = Advance ();
      if (m_observer)
        {
          m_observer (*ev);
        }
      if (ev->action)
        {
          ev->action ();
        }
      ++count;
    }
  if (horizon > m_now)
    {
      m_now = horizon;
    }
  return count;
}

void
Scheduler::SetEventObserver (std::function<void (const SimEvent &)> observer)
{
  m_observer = std::move (observer);
}

} // namespace vexsim
