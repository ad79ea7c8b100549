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

#include "vexsim/core/rng-stream.h"

#include <cmath>
#include <numbers>

namespace vexsim {

namespace {

std::uint64_t
SplitMix64 (std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t
Fnv1a (std::string_view s)
{
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s)
    {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
  return h;
}

} // namespace

std::uint64_t
DeriveStreamSeed (std::uint64_t masterSeed, std::string_view streamId)
{
  return SplitMix64 (SplitMix64 (masterSeed) ^ Fnv1a (streamId));
}

RngStream::RngStream (std::uint64_t masterSeed, std::string_view streamId)
  : m_engine (DeriveStreamSeed (masterSeed, streamId)),
    m_id (streamId)
{
}

std::uint64_t
RngStream::NextU64 ()
{
  ++m_calls;
  return m_engine ();
}

double
RngStream::Uniform01 ()
{
  return static_cast<double> (NextU64 () >> 11) * 0x1.0p-53;
}

double
RngStream::Uniform (double lo, double hi)
{
  return lo + (hi - lo) * Uniform01 ();
}

std::uint64_t
RngStream::UniformInt (std::uint64_t lo, std::uint64_t hi)
{
  if (hi <= lo)
    {
      return lo;
    }
  const std::uint64_t span = hi - lo;
  if (span == ~0ULL)
    {
      return NextU64 ();
    }
  const std::uint64_t range = span + 1;
  // rejection keeps every value equally likely
  const std::uint64_t limit = ~0ULL - (~0ULL % range);
  std::uint64_t x;
  do
    {
      x = NextU64 ();
    }
  while (x >= limit);
  return lo + x % range;
}

double
RngStream::Normal (double mean, double stddev)
{
  if (m_hasSpare)
    {
      m_hasSpare = false;
      return mean + stddev * m_spareNormal;
    }
  double u1;
  do
    {
      u1 = Uniform01 ();
    }
  while (u1 <= 0.0);
  const double u2 = Uniform01 ();
  const double r = std::sqrt (-2.0 * std::log (u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  m_spareNormal = r * std::sin (theta);
  m_hasSpare = true;
  return mean + stddev * r * std::cos (theta);
}

} // namespace vexsim
