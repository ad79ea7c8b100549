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

#ifndef VEXSIM_CORE_RNG_STREAM_H
#define VEXSIM_CORE_RNG_STREAM_H

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace vexsim {

/**
 * Named random stream. The generator state is a pure function of
 * (master seed, stream id), so components draw independently: extra
 * draws in one MAC never shift the mobility trajectory.
 */
class RngStream
{
public:
  RngStream (std::uint64_t masterSeed, std::string_view streamId);

  std::uint64_t NextU64 ();
  /// [0, 1)
  double Uniform01 ();
  double Uniform (double lo, double hi);
  /// Inclusive on both ends.
  std::uint64_t UniformInt (std::uint64_t lo, std::uint64_t hi);
  double Normal (double mean, double stddev);

  const std::string &Id () const { return m_id; }
  std::uint64_t Calls () const { return m_calls; }

private:
  std::mt19937_64 m_engine;
  std::string m_id;
  std::uint64_t m_calls = 0;
  double m_spareNormal = 0.0;
  bool m_hasSpare = false;
};

std::uint64_t DeriveStreamSeed (std::uint64_t masterSeed, std::string_view streamId);

} // namespace vexsim

#endif // VEXSIM_CORE_RNG_STREAM_H
