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

#include "vexsim/phy/reception.h"
#include "vexsim/phy/two-ray-ground.h"

#include <doctest.h>

#include <algorithm>

#include <cmath>

using namespace vexsim;

namespace {

/// Literal two-ray ground expression, no crossover switch.
double
TwoRayFormula (const ChannelParams &p, double d)
{
  return p.txPowerW * p.gainTx * p.gainRx * std::pow (p.heightTx, 2) * std::pow (p.heightRx, 2)
         / (std::pow (d, 4) * p.systemLoss);
}

/// Arrival i survives iff it clears rx and no other arrival at or above
/// cs shares any instant with it.
std::vector<bool>
OverlapOracle (const std::vector<Arrival> &a, double rx, double cs)
{
  std::vector<bool> out (a.size ());
  for (std::size_t i = 0; i < a.size (); ++i)
    {
      bool ok = a[i].powerW >= rx;
      for (std::size_t j = 0; j < a.size () && ok; ++j)
        {
          if (j != i && a[j].powerW >= cs && a[j].start < a[i].end && a[i].start < a[j].end)
            {
              ok = false;
            }
        }
      out[i] = ok;
    }
  return out;
}

class Recorder : public ChannelListener
{
public:
  void OnReceive (const Frame &frame, double) override { got.push_back (frame.seq); }
  void OnTransmitEnd (const Frame &) override {}
  void OnCarrierBusy () override { ++busy; }
  void OnCarrierIdle () override { ++idle; }

  std::vector<std::uint32_t> got;
  int busy = 0;
  int idle = 0;
};

} // namespace

TEST_SUITE ("phy-channel")
{
  TEST_CASE ("two-ray value beyond the crossover")
  {
    ChannelParams p;
    REQUIRE (CrossoverDistance (p) < 100.0);
    CHECK (RxPowerTwoRay (p, 100.0) == doctest::Approx (1.0125e-7).epsilon (1e-12));
    CHECK_THROWS_AS (RxPowerTwoRay (p, 0.0), std::domain_error);
  }

  TEST_CASE ("free space and two-ray agree at the crossover")
  {
    RngStream r (1, "crossover");
    for (int i = 0; i < 100; ++i)
      {
        ChannelParams p;
        p.heightTx = r.Uniform (0.5, 30.0);
        p.heightRx = r.Uniform (0.5, 30.0);
        p.frequencyHz = r.Uniform (1e8, 6e9);
        p.txPowerW = r.Uniform (0.01, 10.0);
        p.systemLoss = r.Uniform (1.0, 3.0);
        const double dc = CrossoverDistance (p);
        const double friis = RxPowerFriis (p, dc);
        const double tworay = TwoRayFormula (p, dc);
        CHECK (std::abs (friis - tworay) / tworay < 1e-12);
      }
  }

  TEST_CASE ("received power falls with distance")
  {
    ChannelParams p;
    double last = RxPowerTwoRay (p, 1.0);
    for (double d = 2.0; d < 2000.0; d *= 1.1)
      {
        const double now = RxPowerTwoRay (p, d);
        CHECK (now < last);
        last = now;
      }
  }

  TEST_CASE ("threshold and range are inverse")
  {
    ChannelParams p;
    for (double d : {10.0, 50.0, 86.0, 100.0, 250.0, 550.0, 1200.0})
      {
        CHECK (RangeForThreshold (p, RxPowerTwoRay (p, d)) == doctest::Approx (d).epsilon (1e-9));
      }
  }

  TEST_CASE ("channel parameter checks")
  {
    ChannelParams p;
    p.csRangeM = 100.0; // sensing shorter than decoding
    CHECK_THROWS_AS (p.Finalize (), ConfigError);
    ChannelParams q;
    q.bitrate = 0.0;
    CHECK_THROWS_AS (q.Finalize (), ConfigError);
    ChannelParams ok;
    ok.Finalize ();
    CHECK (ok.rxThresholdW > ok.csThresholdW);
  }

  TEST_CASE ("airtime")
  {
    CHECK (Airtime (512, 1e6) >= 4.096e-3);
    CHECK (Airtime (512, 1e6) == doctest::Approx (4.096e-3));
    CHECK (Airtime (100, 2e6, 192e-6) == doctest::Approx (400e-6 + 192e-6));
  }

  TEST_CASE ("reception rule basics")
  {
    const double rx = 1.0;
    const double cs = 0.1;
    std::vector<Arrival> one{{0.0, 1.0, 2.0}};
    CHECK (ResolveReception (one, rx, cs) == std::vector<bool>{true});
    std::vector<Arrival> two{{0.0, 1.0, 2.0}, {0.5, 1.5, 2.0}};
    CHECK (ResolveReception (two, rx, cs) == std::vector<bool>{false, false});
    std::vector<Arrival> touching{{0.0, 1.0, 2.0}, {1.0, 2.0, 2.0}};
    CHECK (ResolveReception (touching, rx, cs) == std::vector<bool>{true, true});
    std::vector<Arrival> faint{{0.0, 1.0, 2.0}, {0.5, 1.5, 0.05}};
    CHECK (ResolveReception (faint, rx, cs) == std::vector<bool>{true, false});
    std::vector<Arrival> sensedOnly{{0.0, 1.0, 2.0}, {0.5, 1.5, 0.5}};
    CHECK (ResolveReception (sensedOnly, rx, cs) == std::vector<bool>{false, false});
  }

  TEST_CASE ("reception rule matches the pairwise overlap oracle")
  {
    RngStream r (7, "reception");
    const double rx = 1.0;
    const double cs = 0.1;
    for (int trial = 0; trial < 5000; ++trial)
      {
        const auto n = r.UniformInt (1, 6);
        std::vector<Arrival> a;
        for (std::uint64_t i = 0; i < n; ++i)
          {
            const double start = r.Uniform (0.0, 10.0);
            const double powers[] = {0.05, 0.5, 2.0};
            a.push_back ({start, start + r.Uniform (0.1, 3.0), powers[r.UniformInt (0, 2)]});
          }
        REQUIRE (ResolveReception (a, rx, cs) == OverlapOracle (a, rx, cs));
      }
  }

  TEST_CASE ("channel deliveries match the oracle on random schedules")
  {
    ChannelParams params;
    params.Finalize ();
    RngStream r (17, "channel-oracle");
    for (int trial = 0; trial < 300; ++trial)
      {
        // listener at the origin; six senders at mixed distances
        std::vector<Position> pos{{0, 0}};
        const double dists[] = {60, 120, 200, 240, 400, 700};
        for (int i = 0; i < 6; ++i)
          {
            const double a = r.Uniform (0.0, 6.283);
            const double d = dists[r.UniformInt (0, 5)];
            pos.push_back ({d * std::cos (a), d * std::sin (a)});
          }
        test::StaticRig rig (pos, params);
        Recorder listener;
        rig.channel->Attach (0, &listener);

        const auto n = r.UniformInt (1, 6);
        std::vector<Arrival> arrivals;
        std::vector<std::uint32_t> seqOf;
        for (std::uint64_t i = 0; i < n; ++i)
          {
            const auto sender = static_cast<NodeId> (i + 1);
            const double start = r.Uniform (0.0, 0.01);
            const double air = r.Uniform (0.0005, 0.004);
            Frame f = test::DataFrame (sender, 0, i);
            f.seq = static_cast<std::uint32_t> (i + 1);
            rig.scheduler.Schedule (start, sender, EventKind::Timer,
                                    [&rig, sender, f, air] () {
                                      rig.channel->BeginTransmission (sender, f, air);
                                    });
            const double p = rig.channel->RxPower (sender, 0);
            if (p >= params.csThresholdW)
              {
                arrivals.push_back ({start, start + air, p});
                seqOf.push_back (f.seq);
              }
          }
        rig.scheduler.RunUntil (1.0);

        const auto expect = ResolveReception (arrivals, params.rxThresholdW, params.csThresholdW);
        REQUIRE (expect == OverlapOracle (arrivals, params.rxThresholdW, params.csThresholdW));
        std::vector<std::uint32_t> want;
        for (std::size_t i = 0; i < arrivals.size (); ++i)
          {
            if (expect[i])
              {
                want.push_back (seqOf[i]);
              }
          }
        std::sort (want.begin (), want.end ());
        auto got = listener.got;
        std::sort (got.begin (), got.end ());
        REQUIRE (got == want);
        CHECK (listener.busy == listener.idle);
      }
  }

  TEST_CASE ("sleeping radios neither sense nor receive")
  {
    test::StaticRig rig ({{0, 0}, {100, 0}});
    Recorder a;
    Recorder b;
    rig.channel->Attach (0, &a);
    rig.channel->Attach (1, &b);
    rig.channel->SetRadioOn (1, false);
    CHECK (rig.channel->Mode (1) == RadioMode::Sleep);
    rig.channel->BeginTransmission (0, test::DataFrame (0, 1, 1), 0.001);
    CHECK (rig.channel->Mode (0) == RadioMode::Tx);
    rig.scheduler.RunUntil (1.0);
    CHECK (b.got.empty ());
    CHECK (b.busy == 0);
    CHECK_THROWS_AS (rig.channel->CarrierBusy (1), std::logic_error);
  }

  TEST_CASE ("carrier sense edges")
  {
    ChannelParams params;
    params.Finalize ();
    const double edge = RangeForThreshold (params, params.csThresholdW);
    test::StaticRig rig ({{0, 0}, {edge * (1.0 - 1e-6), 0}, {edge * (1.0 + 1e-6), 0}}, params);
    CHECK_FALSE (rig.channel->CarrierBusy (1));
    rig.channel->BeginTransmission (0, test::DataFrame (0, 1, 1), 0.001);
    CHECK (rig.channel->CarrierBusy (1));
    CHECK (rig.channel->Mode (1) == RadioMode::Rx);
    CHECK_FALSE (rig.channel->CarrierBusy (2));
    CHECK (rig.channel->Mode (2) == RadioMode::Idle);
    rig.scheduler.RunUntil (1.0);
    CHECK_FALSE (rig.channel->CarrierBusy (1));
  }

  TEST_CASE ("a transmitter hears nothing while it sends")
  {
    test::StaticRig rig ({{0, 0}, {100, 0}});
    Recorder a;
    Recorder b;
    rig.channel->Attach (0, &a);
    rig.channel->Attach (1, &b);
    rig.channel->BeginTransmission (0, test::DataFrame (0, 1, 1), 0.002);
    rig.scheduler.Schedule (0.001, 1, EventKind::Timer, [&] () {
      rig.channel->BeginTransmission (1, test::DataFrame (1, 0, 2), 0.002);
    });
    rig.scheduler.RunUntil (1.0);
    CHECK (a.got.empty ());
    CHECK (b.got.empty ());
    CHECK_THROWS_AS (rig.channel->BeginTransmission (0, test::DataFrame (0, 1, 3), 0.0),
                     std::logic_error);
  }
}
