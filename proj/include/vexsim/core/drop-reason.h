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

#ifndef VEXSIM_CORE_DROP_REASON_H
#define VEXSIM_CORE_DROP_REASON_H

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace vexsim {

/// Terminal loss causes for DATA packets. Each lost packet carries exactly
/// one of these.
enum class DropReason : std::uint8_t
{
  IfqOverflow,
  RetryExceeded,
  ChannelAccessFailure,
  NoRoute,
  CollisionCorruption,
  LinkLoss, // unacknowledged frame the next hop never decoded (out of range or asleep)
};

inline constexpr std::array<DropReason, 6> kAllDropReasons = {
    DropReason::IfqOverflow,        DropReason::RetryExceeded, DropReason::ChannelAccessFailure,
    DropReason::NoRoute,            DropReason::CollisionCorruption, DropReason::LinkLoss};

constexpr std::string_view
ToString (DropReason r)
{
  switch (r)
    {
    case DropReason::IfqOverflow:
      return "IFQ-overflow";
    case DropReason::RetryExceeded:
      return "retry-exceeded";
    case DropReason::ChannelAccessFailure:
      return "channel-access-failure";
    case DropReason::NoRoute:
      return "no-route";
    case DropReason::CollisionCorruption:
      return "collision-corruption";
    case DropReason::LinkLoss:
      return "link-loss";
    }
  return "unknown";
}

std::optional<DropReason> ParseDropReason (std::string_view s);

} // namespace vexsim

#endif // VEXSIM_CORE_DROP_REASON_H
