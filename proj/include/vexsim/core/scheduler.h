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

#ifndef VEXSIM_CORE_SCHEDULER_H
#define VEXSIM_CORE_SCHEDULER_H

#include "vexsim/core/types.h"

#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <unordered_map>
#include <vector>

namespace vexsim {

enum class EventKind : std::uint8_t
{
  FrameArrival,
  TransmissionEnd,
  Timer,
  MobilityTick,
  TrafficTick,
  EnergyDepletion,
  Sample,
};

const char *ToString (EventKind kind);

/// System-level targets that are not node ids.
inline constexpr std::uint32_t kSystemTarget = 0xfffffff0u;

struct SimEvent
{
  SimTime time = 0.0;
  std::uint64_t seq = 0;
  std::uint32_t target = kSystemTarget;
  EventKind kind = EventKind::Timer;
  std::function<void ()> action;
};

using EventHandle = std::uint64_t;

/**
 * Deterministic future-event list.
 *
 * Events dequeue in (time, seq) order where seq is the schedule-call
 * counter, so equal-time events fire in the order they were scheduled.
 * Scheduling before the current clock throws std::logic_error, which
 * aborts the run.
 */
class Scheduler
{
public:
  EventHandle Schedule (SimTime time, std::uint32_t target, EventKind kind,
                        std::function<void ()> action);
  EventHandle ScheduleIn (SimTime delay, std::uint32_t target, EventKind kind,
                          std::function<void ()> action);

  /// Pops the next live event and moves the clock to it. Returns nullopt
  /// once the queue is drained (simulation complete).
  std::optional<SimEvent> Advance ();

  /// False if the event already fired, was cancelled, or never existed.
  bool Cancel (EventHandle handle);
  bool IsPending (EventHandle handle) const;

  /// Runs every event with time <= horizon, then sets the clock to the
  /// horizon. Later events stay queued and are simply never delivered.
  std::uint64_t RunUntil (SimTime horizon);

  SimTime Now () const { return m_now; }
  std::size_t PendingCount () const { return m_pending.size (); }

  /// Called for every delivered event, before its action runs.
  void SetEventObserver (std::function<void (const SimEvent &)> observer);

private:
  struct Key
  {
    SimTime time;
    std::uint64_t seq;
    bool operator> (const Key &o) const
    {
      return time != o.time ? time > o.time : seq > o.seq;
    }
  };
  struct Entry
  {
    std::uint32_t target;
    EventKind kind;
    std::function<void ()> action;
  };

  void DropCancelledHead ();

  std::priority_queue<Key, std::vector<Key>, std::greater<Key>> m_heap;
  std::unordered_map<std::uint64_t, Entry> m_pending;
  std::function<void (const SimEvent &)> m_observer;
  SimTime m_now = 0.0;
  std::uint64_t m_nextSeq = 0;
};

} // namespace vexsim

#endif // VEXSIM_CORE_SCHEDULER_H
