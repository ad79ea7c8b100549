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

#include "vexsim/phy/two-ray-ground.h"

#include "vexsim/mobility/topology.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vexsim {

void
ChannelParams::Finalize ()
{
  auto positive = [] (double v, const char *name) {
    if (!(v > 0.0))
      {
        throw ConfigError (std::string ("channel.") + name + " must be positive");
      }
  };
  positive (txPowerW, "tx_power_w");
  positive (gainTx, "gain_tx");
  positive (gainRx, "gain_rx");
  positive (heightTx, "height_tx_m");
  positive (heightRx, "height_rx_m");
  positive (systemLoss, "system_loss");
  positive (frequencyHz, "frequency_hz");
  positive (bitrate, "bitrate_bps");
  if (rxThresholdW == 0.0)
    {
      positive (rxRangeM, "rx_range_m");
      rxThresholdW = RxPowerTwoRay (*this, rxRangeM);
    }
  if (csThresholdW == 0.0)
    {
      positive (csRangeM, "cs_range_m");
      csThresholdW = RxPowerTwoRay (*this, csRangeM);
    }
  positive (rxThresholdW, "rx_threshold_w");
  positive (csThresholdW, "cs_threshold_w");
  if (csThresholdW > rxThresholdW)
    {
      throw ConfigError ("channel.cs_threshold_w must not exceed channel.rx_threshold_w");
    }
}

double
Wavelength (const ChannelParams &p)
{
  return kSpeedOfLight / p.frequencyHz;
}

double
CrossoverDistance (const ChannelParams &p)
{
  return 4.0 * std::numbers::pi * p.heightTx * p.heightRx / Wavelength (p);
}

double
RxPowerFriis (const ChannelParams &p, double d)
{
  const double lambda = Wavelength (p);
  const double m = 4.0 * std::numbers::pi * d;
  return p.txPowerW * p.gainTx * p.gainRx * lambda * lambda / (m * m * p.systemLoss);
}

double
RxPowerTwoRay (const ChannelParams &p, double d)
{
  if (!(d > 0.0))
    {
      throw std::domain_error ("RxPowerTwoRay: distance must be positive");
    }
  if (d < CrossoverDistance (p))
    {
      return RxPowerFriis (p, d);
    }
  const double h2 = p.heightTx * p.heightTx * p.heightRx * p.heightRx;
  return p.txPowerW * p.gainTx * p.gainRx * h2 / (d * d * d * d * p.systemLoss);
}

double
RangeForThreshold (const ChannelParams &p, double thresholdW)
{
  const double dc = CrossoverDistance (p);
  if (thresholdW <= RxPowerTwoRay (p, dc))
    {
      const double h2 = p.heightTx * p.heightTx * p.heightRx * p.heightRx;
      return std::pow (p.txPowerW * p.gainTx * p.gainRx * h2 / (thresholdW * p.systemLoss), 0.25);
    }
  const double lambda = Wavelength (p);
  return lambda / (4.0 * std::numbers::pi)
         * std::sqrt (p.txPowerW * p.gainTx * p.gainRx / (thresholdW * p.systemLoss));
}

double
Airtime (double bytes, double bitrate, double phyOverheadS)
{
  return bytes * 8.0 / bitrate + phyOverheadS;
}

} // namespace vexsim
