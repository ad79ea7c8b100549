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

#ifndef VEXSIM_CORE_TRACE_H
#define VEXSIM_CORE_TRACE_H

#include "vexsim/core/types.h"

#include <ostream>
#include <string_view>

namespace vexsim {

enum class Layer : std::uint8_t
{
  Phy,
  Mac,
  Rtg,
  App,
  Energy,
};

const char *ToString (Layer layer);

/// One line per event: time_s node layer event details. A default
/// constructed tracer is disabled and costs one branch per call site.
class Tracer
{
public:
  Tracer () = default;
  explicit Tracer (std::ostream &out) : m_out (&out) {}

  bool Enabled () const { return m_out != nullptr; }
  void Log (SimTime time, NodeId node, Layer layer, std::string_view event,
            std::string_view details = {});

private:
  std::ostream *m_out = nullptr;
};

} // namespace vexsim

#endif // VEXSIM_CORE_TRACE_H
