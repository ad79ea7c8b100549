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

#ifndef VEXSIM_PHY_TWO_RAY_GROUND_H
#define VEXSIM_PHY_TWO_RAY_GROUND_H

namespace vexsim {

inline constexpr double kSpeedOfLight = 299792458.0;

/// Radio and propagation parameters shared by every node.
struct ChannelParams
{
  double txPowerW = 2.0;
  double gainTx = 1.0;
  double gainRx = 1.0;
  double heightTx = 1.5; // m
  double heightRx = 1.5; // m
  double systemLoss = 1.0;
  double frequencyHz = 914e6;
  double rxThresholdW = 0.0; // 0 means "derive from rxRangeM"
  double csThresholdW = 0.0; // 0 means "derive from csRangeM"
  double rxRangeM = 250.0;
  double csRangeM = 550.0;
  double bitrate = 2e6; // bit/s

  /// Fills derived thresholds and checks positivity and cs <= rx.
  /// Throws ConfigError naming the offending field.
  void Finalize ();

  bool operator== (const ChannelParams &) const = default;
};

double Wavelength (const ChannelParams &p);

/// 4 pi ht hr / lambda: below it the free-space term is used.
double CrossoverDistance (const ChannelParams &p);

double RxPowerFriis (const ChannelParams &p, double d);

/// Two-ray ground received power in watts. Throws std::domain_error for
/// d <= 0.
double RxPowerTwoRay (const ChannelParams &p, double d);

/// Distance at which RxPowerTwoRay falls to `thresholdW` (inverse of the
/// monotone model).
double RangeForThreshold (const ChannelParams &p, double thresholdW);

/// Seconds on air for `bytes` at `bitrate` plus a fixed PHY preamble.
double Airtime (double bytes, double bitrate, double phyOverheadS = 0.0);

} // namespace vexsim

#endif // VEXSIM_PHY_TWO_RAY_GROUND_H
