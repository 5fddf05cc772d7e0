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

#include "minidds/rtps/discovery.hpp"

#include <set>

namespace minidds::rtps
{

std::vector<DiscoveryEvent> DiscoveryDb::on_announce(const GuidPrefix & sender,
  const Locator & from, const Announce & announce, Timestamp now)
{
  std::vector<DiscoveryEvent> events;
  if (announce.domain_id != domain_) {
    return events;
  }
  auto & p = participants_[sender];
  p.last_heard = now;
  if (p.locator != from) {
    // A moved participant is re-matched at its new locator.
    for (auto & [guid, remote] : p.endpoints) {
      events.push_back({DiscoveryEvent::Kind::kEndpointRemoved, remote.descriptor, p.locator});
    }
    p.endpoints.clear();
    p.locator = from;
  }

  std::set<Guid> present;
  for (const auto & e : announce.endpoints) {
    if (e.guid.prefix != sender || !present.insert(e.guid).second) {
      continue;
    }
    auto it = p.endpoints.find(e.guid);
    if (it == p.endpoints.end()) {
      p.endpoints[e.guid] = {e, 0};
      events.push_back({DiscoveryEvent::Kind::kEndpointAdded, e, p.locator});
      continue;
    }
    it->second.missed = 0;
    if (!(it->second.descriptor == e)) {
      events.push_back({DiscoveryEvent::Kind::kEndpointRemoved, it->second.descriptor,
          p.locator});
      it->second.descriptor = e;
      events.push_back({DiscoveryEvent::Kind::kEndpointAdded, e, p.locator});
    }
  }
  for (auto it = p.endpoints.begin(); it != p.endpoints.end(); ) {
    if (!present.count(it->first) && ++it->second.missed >= kDiscoveryMissLimit) {
      events.push_back({DiscoveryEvent::Kind::kEndpointRemoved, it->second.descriptor,
          p.locator});
      it = p.endpoints.erase(it);
    } else {
      ++it;
    }
  }
  return events;
}

std::vector<DiscoveryEvent> DiscoveryDb::expire(Timestamp now, Duration announce_period)
{
  std::vector<DiscoveryEvent> events;
  const Duration silence = announce_period * kDiscoveryMissLimit;
  for (auto it = participants_.begin(); it != participants_.end(); ) {
    if (now - it->second.last_heard >= silence) {
      for (auto & [guid, remote] : it->second.endpoints) {
        events.push_back({DiscoveryEvent::Kind::kEndpointRemoved, remote.descriptor,
            it->second.locator});
      }
      it = participants_.erase(it);
    } else {
      ++it;
    }
  }
  return events;
}

std::vector<Locator> DiscoveryDb::participant_locators() const
{
  std::vector<Locator> out;
  for (const auto & [prefix, p] : participants_) {
    out.push_back(p.locator);
  }
  return out;
}

std::size_t DiscoveryDb::endpoint_count() const
{
  std::size_t n = 0;
  for (const auto & [prefix, p] : participants_) {
    n += p.endpoints.size();
  }
  return n;
}

}  // namespace minidds::rtps
