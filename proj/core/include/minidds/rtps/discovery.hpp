// Copyright 2026 The minidds Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MINIDDS__RTPS__DISCOVERY_HPP_
#define MINIDDS__RTPS__DISCOVERY_HPP_

#include <cstdint>
#include <map>
#include <vector>

#include "minidds/dcps/endpoint.hpp"
#include "minidds/rtps/wire.hpp"
#include "minidds/time.hpp"

namespace minidds::rtps
{

/// Announcements a remote endpoint may be absent from before it is dropped;
/// also the number of silent periods after which a participant is dropped.
inline constexpr int kDiscoveryMissLimit = 3;

struct DiscoveryEvent
{
  enum class Kind : std::uint8_t {kEndpointAdded, kEndpointRemoved};
  Kind kind = Kind::kEndpointAdded;
  dcps::EndpointDescriptor endpoint;
  /// Unicast locator of the owning participant.
  Locator locator;
};

/// Remote participants and endpoints learned from ANNOUNCE floods.
class DiscoveryDb
{
public:
  explicit DiscoveryDb(std::uint32_t local_domain) : domain_(local_domain) {}

  /// `from` is the datagram source and becomes the participant locator.
  /// ANNOUNCEs of other domains are ignored.
  std::vector<DiscoveryEvent> on_announce(const GuidPrefix & sender, const Locator & from,
    const Announce & announce, Timestamp now);

  /// Drops participants silent for kDiscoveryMissLimit announce periods.
  std::vector<DiscoveryEvent> expire(Timestamp now, Duration announce_period);

  std::vector<Locator> participant_locators() const;
  std::size_t participant_count() const noexcept {return participants_.size();}
  std::size_t endpoint_count() const;

private:
  struct RemoteEndpoint
  {
    dcps::EndpointDescriptor descriptor;
    int missed = 0;
  };
  struct RemoteParticipant
  {
    Locator locator;
    Timestamp last_heard{0};
    std::map<Guid, RemoteEndpoint> endpoints;
  };

  std::uint32_t domain_;
  std::map<GuidPrefix, RemoteParticipant> participants_;
};

}  // namespace minidds::rtps

#endif  // MINIDDS__RTPS__DISCOVERY_HPP_
