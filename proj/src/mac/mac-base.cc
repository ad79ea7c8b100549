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

#include "vexsim/mac/mac-base.h"

#include <sstream>
#include <stdexcept>

namespace vexsim {

const char *
ToString (TxStatus status)
{
  switch (status)
    {
    case TxStatus::Acked:
      return "acked";
    case TxStatus::Sent:
      return "sent";
    case TxStatus::RetryExceeded:
      return "retry-exceeded";
    case TxStatus::ChannelAccessFailure:
      return "channel-access-failure";
    }
  return "?";
}

std::string
Describe (const Frame &frame)
{
  std::ostringstream os;
  os << ToString (frame.kind) << " seq=" << frame.seq << " to=";
  if (frame.IsBroadcast ())
    {
      os << '*';
    }
  else
    {
      os << frame.receiver;
    }
  if (frame.kind == FrameKind::Data && frame.packet.IsData ())
    {
      os << " pkt=" << std::get<DataBody> (frame.packet.body).packetId;
    }
  return os.str ();
}

Mac::Mac (NodeId self, Scheduler &scheduler, WirelessChannel &channel, RngStream rng,
          Tracer &tracer, std::size_t queueCapacity)
  : m_self (self),
    m_scheduler (scheduler),
    m_channel (channel),
    m_rng (std::move (rng)),
    m_tracer (tracer),
    m_queue (queueCapacity)
{
}

bool
Mac::Enqueue (Frame frame)
{
  if (m_dead)
    {
      return false;
    }
  if (frame.kind != FrameKind::Data && frame.kind != FrameKind::Routing)
    {
      throw std::logic_error ("only data and routing frames are queued");
    }
  frame.transmitter = m_self;
  frame.seq = m_nextSeq++;
  Prepare (frame);
  if (frame.kind == FrameKind::Routing)
    {
      Trace ("enqueue", Describe (frame));
      m_priority.push_back (std::move (frame));
    }
  else
    {
      const std::string what = m_tracer.Enabled () ? Describe (frame) : std::string ();
      if (!m_queue.Push (std::move (frame)))
        {
          ++m_counters.ifqDrops;
          Trace ("ifq-drop", what);
          return false;
        }
      Trace ("enqueue", what);
    }
  Kick ();
  return true;
}

std::vector<Frame>
Mac::Reclaim (NodeId nextHop)
{
  auto match = [nextHop] (const Frame &f) { return f.receiver == nextHop; };
  std::vector<Frame> out = m_queue.RemoveIf (match);
  for (auto it = m_priority.begin (); it != m_priority.end ();)
    {
      if (match (*it))
        {
          out.push_back (std::move (*it));
          it = m_priority.erase (it);
        }
      else
        {
          ++it;
        }
    }
  return out;
}

void
Mac::Shutdown ()
{
  m_dead = true;
  m_queue.RemoveIf ([] (const Frame &) { return true; });
  m_priority.clear ();
}

const Frame &
Mac::PeekFrame () const
{
  return m_priority.empty () ? m_queue.Front () : m_priority.front ();
}

Frame
Mac::PopFrame ()
{
  if (!m_priority.empty ())
    {
      Frame f = std::move (m_priority.front ());
      m_priority.pop_front ();
      return f;
    }
  return m_queue.Pop ();
}

void
Mac::OnReceive (const Frame &frame, double rxPowerW)
{
  if (m_dead)
    {
      return;
    }
  if (frame.receiver != m_self && !frame.IsBroadcast ())
    {
      return;
    }
  HandleFrame (frame, rxPowerW);
}

void
Mac::HandleFrame (const Frame &frame, double)
{
  DeliverUp (frame);
}

bool
Mac::DeliverUp (const Frame &frame)
{
  if (frame.kind != FrameKind::Data && frame.kind != FrameKind::Routing)
    {
      return false;
    }
  if (!frame.IsBroadcast ())
    {
      auto [it, fresh] = m_lastSeqFrom.try_emplace (frame.transmitter, frame.seq);
      if (!fresh)
        {
          if (it->second == frame.seq)
            {
              ++m_counters.duplicates;
              Trace ("rx-duplicate", Describe (frame));
              return false;
            }
          it->second = frame.seq;
        }
    }
  if (m_upper)
    {
      m_upper->MacReceive (frame);
    }
  return true;
}

void
Mac::Complete (const Frame &frame, TxStatus status)
{
  if (status == TxStatus::RetryExceeded)
    {
      ++m_counters.retryDrops;
    }
  else if (status == TxStatus::ChannelAccessFailure)
    {
      ++m_counters.accessFailures;
    }
  if (status != TxStatus::Acked && status != TxStatus::Sent)
    {
      Trace (ToString (status), Describe (frame));
    }
  if (m_upper)
    {
      m_upper->MacTxDone (frame, status);
    }
}

void
Mac::Trace (std::string_view event, std::string_view details) const
{
  if (m_tracer.Enabled ())
    {
      m_tracer.Log (m_scheduler.Now (), m_self, Layer::Mac, event, details);
    }
}

} // namespace vexsim
