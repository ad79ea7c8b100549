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

#include "vexsim/core/drop-reason.h"
#include "vexsim/core/rng-stream.h"
#include "vexsim/core/scheduler.h"

#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

using namespace vexsim;

TEST_SUITE ("sim-core")
{
  TEST_CASE ("events dequeue by time")
  {
    Scheduler s;
    std::vector<int> order;
    s.Schedule (5.0, 0, EventKind::Timer, [&] () { order.push_back (5); });
    s.Schedule (3.0, 0, EventKind::Timer, [&] () { order.push_back (3); });
    auto first = s.Advance ();
    REQUIRE (first);
    CHECK (first->time == 3.0);
    CHECK (s.Now () == 3.0);
    first->action ();
    auto second = s.Advance ();
    REQUIRE (second);
    second->action ();
    CHECK (order == std::vector<int>{3, 5});
    CHECK_FALSE (s.Advance ());
  }

  TEST_CASE ("equal times keep schedule order")
  {
    Scheduler s;
    std::string log;
    s.Schedule (7.0, 0, EventKind::Timer, [&] () { log += 'A'; });
    s.Schedule (7.0, 0, EventKind::Timer, [&] () { log += 'B'; });
    s.Schedule (7.0, 0, EventKind::Timer, [&] () { log += 'C'; });
    s.RunUntil (10.0);
    CHECK (log == "ABC");
  }

  TEST_CASE ("sequence numbers grow with every schedule call")
  {
    Scheduler s;
    for (int i = 0; i < 20; ++i)
      {
        s.Schedule (static_cast<double> (20 - i), 0, EventKind::Timer, [] () {});
      }
    std::uint64_t lastSeq = 0;
    double lastTime = -1.0;
    bool first = true;
    while (auto ev = s.Advance ())
      {
        CHECK (ev->time >= lastTime);
        if (!first && ev->time == lastTime)
          {
            CHECK (ev->seq > lastSeq);
          }
        first = false;
        lastTime = ev->time;
        lastSeq = ev->seq;
      }
  }

  TEST_CASE ("empty queue signals completion")
  {
    Scheduler s;
    CHECK_FALSE (s.Advance ());
    CHECK (s.Now () == 0.0);
  }

  TEST_CASE ("scheduling in the past is refused")
  {
    Scheduler s;
    s.Schedule (2.0, 0, EventKind::Timer, [] () {});
    s.RunUntil (2.0);
    CHECK_THROWS_AS (s.Schedule (1.0, 0, EventKind::Timer, [] () {}), std::logic_error);
    CHECK_NOTHROW (s.Schedule (2.0, 0, EventKind::Timer, [] () {}));
  }

  TEST_CASE ("cancel semantics")
  {
    Scheduler s;
    bool fired = false;
    const EventHandle h = s.Schedule (1.0, 0, EventKind::Timer, [&] () { fired = true; });
    CHECK (s.IsPending (h));
    CHECK (s.Cancel (h));
    CHECK_FALSE (s.Cancel (h));
    s.RunUntil (5.0);
    CHECK_FALSE (fired);

    const EventHandle g = s.Schedule (6.0, 0, EventKind::Timer, [] () {});
    s.RunUntil (7.0);
    CHECK_FALSE (s.Cancel (g));
    CHECK_FALSE (s.Cancel (12345));
  }

  TEST_CASE ("run until stops at the horizon")
  {
    Scheduler s;
    int count = 0;
    for (double t : {1.0, 2.0, 3.0, 4.0})
      {
        s.Schedule (t, 0, EventKind::Timer, [&] () { ++count; });
      }
    CHECK (s.RunUntil (3.0) == 3);
    CHECK (count == 3);
    CHECK (s.Now () == 3.0);
    CHECK (s.PendingCount () == 1);
  }

  TEST_CASE ("clock never goes backwards")
  {
    Scheduler s;
    RngStream rng (3, "clock");
    std::vector<double> seen;
    s.SetEventObserver ([&] (const SimEvent &e) { seen.push_back (e.time); });
    std::function<void ()> spawn = [&] () {
      if (seen.size () < 500)
        {
          s.ScheduleIn (rng.Uniform (0.0, 1.0), 0, EventKind::Timer, spawn);
          s.ScheduleIn (rng.Uniform (0.0, 1.0), 0, EventKind::Timer, [] () {});
        }
    };
    s.Schedule (0.0, 0, EventKind::Timer, spawn);
    s.RunUntil (1e9);
    REQUIRE (seen.size () > 100);
    for (std::size_t i = 1; i < seen.size (); ++i)
      {
        CHECK (seen[i] >= seen[i - 1]);
      }
  }

  TEST_CASE ("random streams replay and stay independent")
  {
    RngStream a (42, "mac/3");
    RngStream b (42, "mac/3");
    RngStream c (42, "mac/4");
    RngStream d (43, "mac/3");
    bool differC = false;
    bool differD = false;
    for (int i = 0; i < 1000; ++i)
      {
        const auto x = a.NextU64 ();
        CHECK (x == b.NextU64 ());
        differC |= x != c.NextU64 ();
        differD |= x != d.NextU64 ();
      }
    CHECK (differC);
    CHECK (differD);
    CHECK (a.Calls () == 1000);
  }

  TEST_CASE ("random stream ranges")
  {
    RngStream r (1, "ranges");
    for (int i = 0; i < 10000; ++i)
      {
        const double u = r.Uniform01 ();
        CHECK (u >= 0.0);
        CHECK (u < 1.0);
        const auto k = r.UniformInt (3, 7);
        CHECK (k >= 3);
        CHECK (k <= 7);
      }
  }

  TEST_CASE ("drop reasons round-trip through their names")
  {
    for (DropReason r : kAllDropReasons)
      {
        auto parsed = ParseDropReason (ToString (r));
        REQUIRE (parsed);
        CHECK (*parsed == r);
      }
    CHECK_FALSE (ParseDropReason ("gremlins"));
  }
}
