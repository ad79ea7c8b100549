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

#include "support/test-network.h"

#include "vexsim/mac/csma-ca-mac.h"
#include "vexsim/mac/lr-wpan-mac.h"
#include "vexsim/mac/smac-mac.h"
#include "vexsim/mac/tdma-mac.h"
#include "vexsim/phy/reception.h"

#include <doctest.h>

#include <cmath>
#include <map>

using namespace vexsim;

namespace {

ChannelParams
ShortSensing ()
{
  // sensing reaches no further than decoding, so 400 m apart is hidden
  ChannelParams p;
  p.rxRangeM = 250.0;
  p.csRangeM = 250.0;
  return p;
}

} // namespace

TEST_SUITE ("mac-protocols")
{
  TEST_CASE ("interface queue drops the 51st frame")
  {
    TxQueue q;
    for (int i = 0; i < 50; ++i)
      {
        CHECK (q.Push (test::DataFrame (0, 1, i)));
      }
    CHECK_FALSE (q.Push (test::DataFrame (0, 1, 50)));
    CHECK (q.Size () == 50);
    CHECK (q.Overflows () == 1);
    CHECK (std::get<DataBody> (q.Pop ().packet.body).packetId == 0);
  }

  TEST_CASE ("mac queue takes routing frames beyond the data limit")
  {
    test::StaticRig rig ({{0, 0}, {100, 0}});
    CsmaCaMac mac (0, rig.scheduler, *rig.channel, RngStream (1, "mac/0"), rig.tracer);
    test::RecordingUpper up;
    mac.SetUpper (&up);
    rig.channel->Attach (0, &mac);
    // the frame in service (if any) no longer occupies the queue
    int accepted = 0;
    while (mac.Enqueue (test::DataFrame (0, 1, accepted)) && accepted < 100)
      {
        ++accepted;
      }
    CHECK (mac.DataQueueLength () == 50);
    CHECK (accepted >= 50);
    CHECK (accepted <= 51);
    CHECK (mac.Counters ().ifqDrops == 1);
    Frame rreq;
    rreq.kind = FrameKind::Routing;
    rreq.receiver = kBroadcast;
    rreq.packet.body = Rreq{};
    CHECK (mac.Enqueue (rreq));
  }

  TEST_CASE ("contention window doubles up to its cap")
  {
    CHECK (ContentionWindow (0) == 31);
    CHECK (ContentionWindow (1) == 63);
    CHECK (ContentionWindow (4) == 511);
    CHECK (ContentionWindow (5) == 1023);
    CHECK (ContentionWindow (9) == 1023);
    RngStream r (1, "cw");
    for (int i = 0; i < 2000; ++i)
      {
        CHECK (CsmaBackoffSlots (0, r) <= 31);
        CHECK (CsmaBackoffSlots (9, r) <= 1023);
      }
  }

  TEST_CASE ("backoff draws are uniform over the first window")
  {
    RngStream r (2024, "chi-square");
    const int n = 100000;
    std::vector<int> bins (32, 0);
    for (int i = 0; i < n; ++i)
      {
        ++bins.at (CsmaBackoffSlots (0, r));
      }
    const double expected = n / 32.0;
    double chi2 = 0.0;
    for (int b : bins)
      {
        chi2 += (b - expected) * (b - expected) / expected;
      }
    // 99th percentile of chi-square with 31 degrees of freedom
    CHECK (chi2 < 52.191);
  }

  TEST_CASE ("idle channel: transmit after DIFS plus the drawn backoff")
  {
    test::StaticRig rig ({{0, 0}, {100, 0}});
    CsmaConfig cfg;
    CsmaCaMac a (0, rig.scheduler, *rig.channel, RngStream (3, "mac/0"), rig.tracer, cfg);
    CsmaCaMac b (1, rig.scheduler, *rig.channel, RngStream (3, "mac/1"), rig.tracer, cfg);
    test::RecordingUpper ua;
    test::RecordingUpper ub;
    a.SetUpper (&ua);
    b.SetUpper (&ub);
    rig.channel->Attach (0, &a);
    rig.channel->Attach (1, &b);
    a.Enqueue (test::DataFrame (0, 1, 1));
    rig.scheduler.RunUntil (1.0);
    REQUIRE (!rig.transmissions.empty ());
    REQUIRE (a.BackoffHistory ().size () == 1);
    CHECK (rig.transmissions[0].start
           == doctest::Approx (cfg.difs + a.BackoffHistory ()[0] * cfg.slot).epsilon (1e-12));
    REQUIRE (ub.received.size () == 1);
    REQUIRE (ua.done.size () == 1);
    CHECK (ua.done[0].second == TxStatus::Acked);
    CHECK (rig.transmissions.size () == 2); // data and ACK
    CHECK (rig.transmissions[1].frame.kind == FrameKind::Ack);
  }

  TEST_CASE ("hidden senders collide and retry with the doubled window")
  {
    test::StaticRig rig ({{0, 0}, {200, 0}, {400, 0}}, ShortSensing ());
    std::vector<std::unique_ptr<CsmaCaMac>> macs;
    std::vector<test::RecordingUpper> ups (3);
    for (NodeId n = 0; n < 3; ++n)
      {
        macs.push_back (std::make_unique<CsmaCaMac> (n, rig.scheduler, *rig.channel,
                                                     RngStream (5, "mac/" + std::to_string (n)),
                                                     rig.tracer));
        macs[n]->SetUpper (&ups[n]);
        rig.channel->Attach (n, macs[n].get ());
      }
    macs[0]->Enqueue (test::DataFrame (0, 1, 1));
    macs[2]->Enqueue (test::DataFrame (2, 1, 2));
    rig.scheduler.RunUntil (5.0);

    // first attempts overlap at the middle node, so both need a retry
    REQUIRE (rig.transmissions.size () >= 2);
    const auto &t0 = rig.transmissions[0];
    const auto &t1 = rig.transmissions[1];
    CHECK (t0.sender != t1.sender);
    CHECK (t1.start < t0.end);
    for (NodeId n : {0u, 2u})
      {
        const auto &h = macs[n]->BackoffHistory ();
        REQUIRE (h.size () >= 2);
        CHECK (h[0] <= 31);
        CHECK (h[1] <= 63);
      }
    CHECK (macs[0]->Counters ().retransmissions >= 1);
    CHECK (macs[2]->Counters ().retransmissions >= 1);

    // every data frame the middle node decoded is one the overlap oracle
    // says survives, with the middle node's own ACKs as blockers
    std::vector<Arrival> arrivals;
    std::vector<bool> isData;
    const double rx = rig.channel->Params ().rxThresholdW;
    const double cs = rig.channel->Params ().csThresholdW;
    for (const auto &t : rig.transmissions)
      {
        if (t.sender == 1)
          {
            // own transmission: blocks everything it overlaps
            arrivals.push_back ({t.start, t.end, 1e9});
            isData.push_back (false);
          }
        else
          {
            arrivals.push_back ({t.start, t.end, rig.channel->RxPower (t.sender, 1)});
            isData.push_back (t.frame.kind == FrameKind::Data);
          }
      }
    const auto ok = ResolveReception (arrivals, rx, cs);
    std::uint64_t decoded = 0;
    for (std::size_t i = 0; i < ok.size (); ++i)
      {
        decoded += (ok[i] && isData[i]) ? 1 : 0;
      }
    CHECK (decoded == ups[1].received.size () + macs[1]->Counters ().duplicates);
    CHECK (ups[1].received.size () == 2);
  }

  TEST_CASE ("retry limit exhausted drops the frame")
  {
    test::StaticRig rig ({{0, 0}, {900, 0}});
    CsmaCaMac a (0, rig.scheduler, *rig.channel, RngStream (1, "mac/0"), rig.tracer);
    test::RecordingUpper up;
    a.SetUpper (&up);
    rig.channel->Attach (0, &a);
    a.Enqueue (test::DataFrame (0, 1, 1));
    rig.scheduler.RunUntil (10.0);
    CHECK (rig.transmissions.size () == 7);
    CHECK (a.Counters ().retryDrops == 1);
    REQUIRE (up.done.size () == 1);
    CHECK (up.done[0].second == TxStatus::RetryExceeded);
    const auto &h = a.BackoffHistory ();
    REQUIRE (h.size () == 7);
    for (std::uint32_t i = 0; i < h.size (); ++i)
      {
        CHECK (h[i] <= ContentionWindow (i));
      }
  }

  TEST_CASE ("802.15.4 backoff exponent rules")
  {
    LrWpanConfig cfg;
    CsmaCaState s = CsmaCaStart (cfg);
    CHECK (s.nb == 0);
    CHECK (s.be == 3);
    RngStream r (1, "be");
    for (int i = 0; i < 1000; ++i)
      {
        CHECK (LrWpanBackoffUnits (3, r) <= 7);
      }
    for (int busy = 1; busy <= 4; ++busy)
      {
        s = CsmaCaAfterBusy (s, cfg);
        CHECK (s.be <= 5);
        CHECK_FALSE (CsmaCaFailed (s, cfg));
      }
    s = CsmaCaAfterBusy (s, cfg);
    CHECK (s.be == 5);
    CHECK (CsmaCaFailed (s, cfg));
  }

  TEST_CASE ("802.15.4 gives up on a jammed channel")
  {
    test::StaticRig rig ({{0, 0}, {100, 0}, {50, 50}});
    LrWpanMac a (0, rig.scheduler, *rig.channel, RngStream (1, "mac/0"), rig.tracer);
    test::RecordingUpper up;
    a.SetUpper (&up);
    rig.channel->Attach (0, &a);
    a.Start ();
    rig.channel->BeginTransmission (2, test::DataFrame (2, kBroadcast, 9), 30.0);
    a.Enqueue (test::DataFrame (0, 1, 1));
    rig.scheduler.RunUntil (10.0);
    REQUIRE (up.done.size () == 1);
    CHECK (up.done[0].second == TxStatus::ChannelAccessFailure);
    const auto &h = a.AttemptHistory ();
    REQUIRE (h.size () == 5);
    const std::uint32_t be[] = {3, 4, 5, 5, 5};
    for (std::uint32_t i = 0; i < 5; ++i)
      {
        CHECK (h[i].nb == i);
        CHECK (h[i].be == be[i]);
      }
    CHECK (a.Counters ().accessFailures == 1);
  }

  TEST_CASE ("802.15.4 delivers with an acknowledgement")
  {
    test::StaticRig rig ({{0, 0}, {100, 0}});
    LrWpanMac a (0, rig.scheduler, *rig.channel, RngStream (1, "mac/0"), rig.tracer);
    LrWpanMac b (1, rig.scheduler, *rig.channel, RngStream (1, "mac/1"), rig.tracer);
    test::RecordingUpper ua;
    test::RecordingUpper ub;
    a.SetUpper (&ua);
    b.SetUpper (&ub);
    rig.channel->Attach (0, &a);
    rig.channel->Attach (1, &b);
    a.Start ();
    b.Start ();
    a.Enqueue (test::DataFrame (0, 1, 1));
    rig.scheduler.RunUntil (1.0);
    CHECK (ub.received.size () == 1);
    REQUIRE (ua.done.size () == 1);
    CHECK (ua.done[0].second == TxStatus::Acked);
  }

  TEST_CASE ("tdma slot ownership")
  {
    TdmaConfig cfg;
    std::vector<std::optional<NodeId>> assign (cfg.dataSlots);
    assign[0] = 0;
    assign[1] = 1;
    CHECK (TdmaSlotOwner (0, 0, cfg, assign).kind == SlotOwner::Kind::Preamble);
    CHECK (TdmaSlotOwner (0, 1, cfg, assign).kind == SlotOwner::Kind::Preamble);
    CHECK (TdmaSlotOwner (0, 3, cfg, assign) == SlotOwner{SlotOwner::Kind::Node, 1});
    CHECK (TdmaSlotOwner (0, 4, cfg, assign).kind == SlotOwner::Kind::Idle);
    CHECK_THROWS_AS (TdmaSlotOwner (0, cfg.SlotsPerFrame (), cfg, assign), std::out_of_range);
    CHECK (cfg.FramePeriod () == doctest::Approx (28 * 2.5e-3));
    CHECK_THROWS_AS (TdmaSchedule (cfg, 27), ConfigError);
  }

  TEST_CASE ("tdma transmissions stay inside their owners' slots")
  {
    // five mutually audible nodes with saturated queues
    std::vector<Position> pos{{0, 0}, {50, 0}, {100, 0}, {0, 50}, {50, 50}};
    test::StaticRig rig (pos);
    TdmaConfig cfg;
    auto schedule = std::make_shared<TdmaSchedule> (cfg, pos.size ());
    std::vector<std::unique_ptr<TdmaMac>> macs;
    std::vector<test::RecordingUpper> ups (pos.size ());
    RngStream pick (3, "destinations");
    std::size_t offered = 0;
    for (NodeId n = 0; n < pos.size (); ++n)
      {
        macs.push_back (std::make_unique<TdmaMac> (n, rig.scheduler, *rig.channel,
                                                   RngStream (3, "mac/" + std::to_string (n)),
                                                   rig.tracer, schedule, true));
        macs[n]->SetUpper (&ups[n]);
        rig.channel->Attach (n, macs[n].get ());
      }
    for (NodeId n = 0; n < pos.size (); ++n)
      {
        macs[n]->Start ();
        for (int k = 0; k < 30; ++k)
          {
            auto to = static_cast<NodeId> ((n + 1 + pick.UniformInt (0, 3)) % pos.size ());
            macs[n]->Enqueue (test::DataFrame (n, to, n * 100 + k));
            ++offered;
          }
      }
    rig.scheduler.RunUntil (40 * cfg.FramePeriod ());

    REQUIRE (rig.transmissions.size () == offered);
    for (const auto &t : rig.transmissions)
      {
        const double frameLen = cfg.FramePeriod ();
        const auto frameIndex = static_cast<std::uint64_t> (std::floor (t.start / frameLen + 1e-9));
        const double within = t.start - frameIndex * frameLen;
        const auto slot = static_cast<std::uint32_t> (std::floor (within / cfg.slotDuration + 1e-9));
        const SlotOwner owner = TdmaSlotOwner (frameIndex, slot, cfg, schedule->Assignment ());
        REQUIRE (owner.kind == SlotOwner::Kind::Node);
        CHECK (owner.node == t.sender);
        CHECK (t.end <= frameIndex * frameLen + (slot + 1) * cfg.slotDuration + 1e-12);
      }
    CHECK (rig.channel->Collisions () == 0);
    std::size_t received = 0;
    for (const auto &u : ups)
      {
        received += u.received.size ();
      }
    CHECK (received == offered);
  }

  TEST_CASE ("smac listen state")
  {
    SmacConfig cfg;
    CHECK (SmacState (0.05, 0.0, cfg) == SmacPhase::Awake);
    CHECK (SmacState (0.5, 0.0, cfg) == SmacPhase::Asleep);
    CHECK (SmacState (0.55, 0.5, cfg) == SmacPhase::Awake);
    CHECK (SmacState (1.05, 0.0, cfg) == SmacPhase::Awake);
    const auto w = CurrentOrNextWindow (0.2, 0.5, cfg);
    CHECK (w.start == doctest::Approx (0.5));
    CHECK (w.end == doctest::Approx (0.6));
    CHECK (NextTxOpportunity (0.58, 0.5, 0.03, cfg) == doctest::Approx (1.5));
    CHECK (NextTxOpportunity (0.52, 0.5, 0.03, cfg) == doctest::Approx (0.52));
  }

  TEST_CASE ("smac wait for an unsynchronised receiver")
  {
    // frames appear at random times at a phase-0 sender whose receiver
    // listens from 0.5 s in every 1 s period
    SmacConfig cfg;
    cfg.discoveryEvery = 1000000; // only the opening discovery listen
    test::StaticRig rig ({{0, 0}, {100, 0}});
    SmacMac tx (0, rig.scheduler, *rig.channel, RngStream (1, "mac/0"), rig.tracer, cfg, 0.0);
    SmacMac rx (1, rig.scheduler, *rig.channel, RngStream (1, "mac/1"), rig.tracer, cfg, 0.5);
    test::RecordingUpper utx;
    test::RecordingUpper urx;
    tx.SetUpper (&utx);
    rx.SetUpper (&urx);
    rig.channel->Attach (0, &tx);
    rig.channel->Attach (1, &rx);
    tx.Start ();
    rx.Start ();

    RngStream arrivals (8, "arrivals");
    const int frames = 10000;
    const double spacing = 3.0;
    std::map<std::uint64_t, double> sentAt;
    std::map<std::uint64_t, double> gotAt;
    for (int k = 0; k < frames; ++k)
      {
        const double t = 5.0 + k * spacing + arrivals.Uniform (0.0, 2.0);
        sentAt[k] = t;
        rig.scheduler.Schedule (t, 0, EventKind::TrafficTick,
                                [&tx, k] () { tx.Enqueue (test::DataFrame (0, 1, k)); });
      }
    rx.SetUpper (nullptr);
    struct Timed : MacUpper
    {
      Scheduler *s;
      std::map<std::uint64_t, double> *log;
      void
      MacReceive (const Frame &f) override
      {
        if (f.kind == FrameKind::Data)
          {
            (*log)[std::get<DataBody> (f.packet.body).packetId] = s->Now ();
          }
      }
      void MacTxDone (const Frame &, TxStatus) override {}
    } timed;
    timed.s = &rig.scheduler;
    timed.log = &gotAt;
    rx.SetUpper (&timed);
    rig.scheduler.RunUntil (5.0 + frames * spacing + 5.0);

    REQUIRE (gotAt.size () == static_cast<std::size_t> (frames));
    double sum = 0.0;
    for (const auto &[id, at] : gotAt)
      {
        sum += at - sentAt[id];
        // the receiver only ever hears data inside its own window
        CHECK (SmacState (at - 1e-9, 0.5, cfg) == SmacPhase::Awake);
      }
    const double mean = sum / frames;
    // closed form: a frame needs [t, t + air] inside [0.5, 0.6); with the
    // usable stretch u = listen - air the residual wait averages (1-u)^2/2
    const double air = tx.FrameAirtime (test::DataFrame (0, 1, 0));
    const double u = cfg.ListenTime () - air;
    const double expected = (cfg.period - u) * (cfg.period - u) / (2.0 * cfg.period);
    CHECK (std::abs (mean - expected) / expected < 0.10);
  }
}
