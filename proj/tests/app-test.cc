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

#include "vexsim/app/alerting.h"
#include "vexsim/app/cbr.h"
#include "vexsim/app/emission.h"
#include "vexsim/app/metrics.h"
#include "vexsim/mobility/topology.h"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace vexsim;

namespace {

// percentage points
double
Points (double fraction)
{
  return fraction * 100.0;
}

EmissionReading
Reading (double co, double hc, double nox)
{
  EmissionReading r;
  r.vehicleId = 25;
  r.coPpm = co;
  r.hcPpm = hc;
  r.noxPpm = nox;
  return r;
}

} // namespace

TEST_SUITE ("app-metrics")
{
  TEST_CASE ("cbr packet counts")
  {
    CbrConfig c;
    CHECK (CbrPacketCount (c, 600.0) == 5900);
    CHECK (CbrPacketCount (c, 10.0) == 0);
    CHECK (CbrPacketCount (c, 11.0) == 10);
    CHECK (CbrPacketCount (c, 5.0) == 0);
    const auto sends = GenerateCbr (c, 11.0);
    REQUIRE (sends.size () == 10);
    CHECK (sends.front () == doctest::Approx (10.0));
    CHECK (sends.back () == doctest::Approx (10.9));
    CHECK (GenerateCbr (c, 600.0).size () == 5900);
    for (double t : GenerateCbr (c, 600.0))
      {
        CHECK (t < 600.0);
      }
  }

  TEST_CASE ("cbr validation")
  {
    CbrConfig c;
    c.payloadBytes = 513;
    CHECK_THROWS_AS (c.Validate (), ConfigError);
    c.payloadBytes = 512;
    c.interval = 0.0;
    CHECK_THROWS_AS (c.Validate (), ConfigError);
  }

  TEST_CASE ("reading record round trip and corruption")
  {
    RngStream r (1, "emission/v0");
    EmissionGenerator gen (25, kDirtyProfile, r);
    for (int i = 0; i < 100; ++i)
      {
        const EmissionReading a = gen.Next (10.0 + i * 0.1);
        const EmissionReading b = DecodeReading (EncodeReading (a));
        CHECK (b.vehicleId == 25);
        CHECK (b.sequence == a.sequence);
        CHECK (b.timestamp == a.timestamp);
        CHECK (b.coPpm == doctest::Approx (a.coPpm).epsilon (1e-6));
        CHECK (b.noxPpm >= 0.0);
      }
    ReadingRecord rec = EncodeReading (Reading (1, 2, 3));
    rec[5] ^= 0x40;
    CHECK_THROWS_AS (DecodeReading (rec), RecordError);
  }

  TEST_CASE ("threshold evaluation")
  {
    AlertPolicy p;
    CHECK_FALSE (EvaluateReading (Reading (100, 10, 10), p).Violation ());
    CHECK_FALSE (EvaluateReading (Reading (p.coPpm, 10, 10), p).Violation ());
    const auto e = EvaluateReading (Reading (p.coPpm + 1, 10, p.noxPpm + 1), p);
    CHECK (e.exceeded == std::vector<Gas>{Gas::Co, Gas::Nox});
  }

  TEST_CASE ("escalation examples")
  {
    AlertPolicy p;
    CHECK (Escalate ({false, false}, p) == AlertLevel::None);
    CHECK (Escalate ({false, true}, p) == AlertLevel::Notify);
    CHECK (Escalate ({true, true, true}, p) == AlertLevel::Notify);
    CHECK (Escalate ({true, true, true, true}, p) == AlertLevel::Charge);
    CHECK (Escalate ({true, false, true, true, true}, p) == AlertLevel::Charge);
    CHECK (Escalate ({true, true, false, true, true}, p) == AlertLevel::Notify);

    Escalation esc (3);
    CHECK (esc.Step (true));
    CHECK (esc.Level () == AlertLevel::Notify);
    CHECK_FALSE (esc.Step (true));
    CHECK_FALSE (esc.Step (true));
    CHECK (esc.Step (true));
    CHECK (esc.Level () == AlertLevel::Charge);
  }

  TEST_CASE ("escalation never steps down")
  {
    RngStream r (6, "escalation");
    for (int trial = 0; trial < 200; ++trial)
      {
        Escalation esc (1 + static_cast<std::uint32_t> (r.UniformInt (0, 4)));
        int last = 0;
        for (int i = 0; i < 50; ++i)
          {
            esc.Step (r.Uniform01 () < 0.6);
            const int now = static_cast<int> (esc.Level ());
            CHECK (now >= last);
            last = now;
          }
      }
  }

  TEST_CASE ("alert monitor ignores stale reports")
  {
    AlertMonitor m (AlertPolicy{});
    EmissionReading dirty = Reading (9000, 10, 10);
    dirty.timestamp = 5.0;
    m.OnReport (dirty, 5.1);
    CHECK (m.LevelOf (25) == AlertLevel::Notify);
    EmissionReading old = dirty;
    old.timestamp = 4.0;
    for (int i = 0; i < 5; ++i)
      {
        m.OnReport (old, 6.0);
      }
    CHECK (m.LevelOf (25) == AlertLevel::Notify);
    for (int i = 1; i <= 3; ++i)
      {
        dirty.timestamp = 5.0 + i;
        m.OnReport (dirty, 5.1 + i);
      }
    CHECK (m.LevelOf (25) == AlertLevel::Charge);
    REQUIRE (m.Decisions ().size () == 2);
    CHECK (m.Decisions ()[1].level == AlertLevel::Charge);
    CHECK (m.LevelOf (99) == AlertLevel::None);
  }

  TEST_CASE ("delivery ratio on reference counts")
  {
    struct Row
    {
      std::uint64_t received;
      std::uint64_t dropped;
      double pdrPoints;
      double sentPoints;
    };
    const Row rows[] = {{2964, 89, 97.08, 51.74},
                        {3019, 237, 92.72, 55.19},
                        {15, 34, 30.61, 0.83},
                        {318, 21, 93.80, 5.74}};
    for (const auto &row : rows)
      {
        const auto pdr = Pdr (row.received, row.dropped);
        REQUIRE (pdr);
        CHECK (std::abs (Points (*pdr) - row.pdrPoints) <= 0.01);
        const double tf = TransmittedFraction (row.received + row.dropped, 5900);
        CHECK (std::abs (Points (tf) - row.sentPoints) <= 0.01);
      }
    CHECK_FALSE (Pdr (0, 0));
    CHECK (*Pdr (3, 0) == 1.0);
    CHECK_THROWS (TransmittedFraction (1, 0));
  }

  TEST_CASE ("delay statistics")
  {
    const std::vector<double> two{0.009561, 0.529580};
    auto s = ComputeDelayStats (two);
    REQUIRE (s);
    CHECK (s->min == 0.009561);
    CHECK (s->max == 0.529580);
    CHECK (s->mean == doctest::Approx (0.2695705).epsilon (1e-12));
    const std::vector<double> one{0.42};
    auto t = ComputeDelayStats (one);
    REQUIRE (t);
    CHECK (t->min == 0.42);
    CHECK (t->max == 0.42);
    CHECK (t->mean == 0.42);
    CHECK_FALSE (ComputeDelayStats (std::vector<double>{}));
  }

  TEST_CASE ("ledger keeps one outcome per packet")
  {
    PacketLedger l;
    for (std::uint64_t id = 0; id < 5; ++id)
      {
        l.Generated (id, 25, 10.0 + id);
      }
    CHECK_THROWS (l.Generated (2, 25, 0.0));
    l.Dropped (0, DropReason::NoRoute, 11.0);
    l.Dropped (0, DropReason::LinkLoss, 12.0); // the first drop stands
    l.Received (1, 11.5, 3);
    l.Dropped (2, DropReason::CollisionCorruption, 12.1);
    l.Received (2, 12.4, 4); // a copy got through after all
    l.Received (3, 13.2, 2);
    l.Dropped (3, DropReason::IfqOverflow, 13.3);
    CHECK_THROWS (l.Received (77, 1.0, 1));

    CHECK (l.Get (0).outcome == Outcome::Dropped);
    CHECK (*l.Get (0).reason == DropReason::NoRoute);
    CHECK (l.Get (1).outcome == Outcome::Received);
    CHECK (*l.Get (1).Delay () == doctest::Approx (0.5));
    CHECK (l.Get (2).outcome == Outcome::Received);
    CHECK_FALSE (l.Get (2).reason);
    CHECK (l.Get (3).outcome == Outcome::Received);
    CHECK (l.Get (4).outcome == Outcome::InFlight);

    const auto sum = Summarize (l.Records (), 5, 4000.0);
    CHECK (sum.generated == 5);
    CHECK (sum.received == 3);
    CHECK (sum.dropped == 1);
    CHECK (sum.inFlight == 1);
    CHECK (sum.received + sum.dropped + sum.inFlight == sum.generated);
    CHECK (*sum.pdr == doctest::Approx (0.75));
    CHECK (sum.transmittedFraction == doctest::Approx (0.8));
    CHECK (sum.drops.at (DropReason::NoRoute) == 1);
  }

  TEST_CASE ("summary json and csv layout")
  {
    PacketLedger l;
    l.Generated (0, 25, 10.0);
    MetricsSummary s = Summarize (l.Records (), 1, 4700.0);
    const auto j = ToJson (s);
    CHECK (j.at ("pdr").is_null ());
    CHECK (j.at ("delay_avg_s").is_null ());
    CHECK (j.at ("in_flight") == 1);
    std::ostringstream os;
    WritePacketsCsv (os, l.Records ());
    CHECK (os.str ().rfind ("packet_id,send_s,outcome,recv_s,delay_s,drop_reason,hops\n", 0) == 0);
  }
}
