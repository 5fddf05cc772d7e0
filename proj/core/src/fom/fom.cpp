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

#include "minidds/fom/fom.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "minidds/idl/parser.hpp"

namespace minidds::fom
{

std::string_view to_string(Transportation t)
{
  return t == Transportation::kReliable ? "HLAreliable" : "HLAbestEffort";
}

std::string_view to_string(Order o)
{
  return o == Order::kTimeStamp ? "TimeStamp" : "Receive";
}

namespace
{

std::string read_file(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::kInvalidArgument, "cannot open " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class ModelBuilder
{
public:
  explicit ModelBuilder(ObjectModel & model) : model_(model) {}

  void root(const XmlElement & e)
  {
    if (e.name != "objectModel") {
      throw FomError(e.line, "root element must be <objectModel>, found <" + e.name + ">");
    }
    for (const auto & a : e.attributes) {
      if (a.name == "name") {
        model_.name = a.value;
      } else if (a.name == "type") {
        if (a.value == "FOM") {
          model_.type = ModelType::kFom;
        } else if (a.value == "SOM") {
          model_.type = ModelType::kSom;
        } else {
          throw FomError(a.line, "objectModel type must be FOM or SOM, got '" + a.value + "'");
        }
      } else if (a.name == "version") {
        model_.version = a.value;
      } else if (a.name != "DTDversion" && a.name != "date" && a.name != "author" &&
        a.name != "sponsor")
      {
        warn(a.line, "ignoring attribute " + a.name + " of <objectModel>");
      }
    }
    bool seen_objects = false;
    bool seen_interactions = false;
    for (const auto & c : e.children) {
      if (c.name == "objects") {
        once(c, seen_objects);
        section(c, "objectClass", "attribute", model_.objects);
      } else if (c.name == "interactions") {
        once(c, seen_interactions);
        section(c, "interactionClass", "parameter", model_.interactions);
      } else {
        warn(c.line, "ignoring element <" + c.name + ">");
      }
    }
  }

private:
  void warn(int line, const std::string & what)
  {
    model_.warnings.push_back("line " + std::to_string(line) + ": " + what);
  }

  void once(const XmlElement & e, bool & seen)
  {
    if (seen) {
      throw FomError(e.line, "duplicate <" + e.name + "> section");
    }
    seen = true;
  }

  static const XmlAttribute & required(const XmlElement & e, std::string_view name)
  {
    const auto * a = e.attribute(name);
    if (!a) {
      throw FomError(e.line, "<" + e.name + "> requires a " + std::string(name) + " attribute");
    }
    if (a->value.empty()) {
      throw FomError(a->line, "<" + e.name + "> " + std::string(name) + " must not be empty");
    }
    return *a;
  }

  void section(const XmlElement & e, std::string_view class_tag, std::string_view member_tag,
    std::vector<ClassDef> & out)
  {
    std::set<std::string> names;
    for (const auto & c : e.children) {
      if (c.name != class_tag) {
        warn(c.line, "ignoring element <" + c.name + "> in <" + e.name + ">");
        continue;
      }
      ClassDef def;
      const auto & name = required(c, "name");
      def.name = name.value;
      if (!names.insert(def.name).second) {
        throw FomError(name.line, "duplicate " + std::string(class_tag) + " " + def.name);
      }
      for (const auto & a : c.attributes) {
        if (a.name != "name") {
          warn(a.line, "ignoring attribute " + a.name + " of <" + c.name + ">");
        }
      }
      std::set<std::string> members;
      for (const auto & m : c.children) {
        if (m.name != member_tag) {
          warn(m.line, "ignoring element <" + m.name + "> in <" + c.name + ">");
          continue;
        }
        auto member = parse_member(m);
        if (!members.insert(member.name).second) {
          throw FomError(m.line, "duplicate " + std::string(member_tag) + " " + member.name +
                  " in " + def.name);
        }
        // Object and interaction classes may share a name but not a topic.
        if (!topics_.insert(def.name + "." + member.name).second) {
          throw FomError(m.line, "topic " + def.name + "." + member.name +
                  " is declared by both an object and an interaction class");
        }
        def.members.push_back(std::move(member));
      }
      out.push_back(std::move(def));
    }
  }

  Member parse_member(const XmlElement & m)
  {
    Member member;
    member.name = required(m, "name").value;
    const auto & t = required(m, "transportation");
    if (t.value == "HLAreliable") {
      member.transportation = Transportation::kReliable;
    } else if (t.value == "HLAbestEffort") {
      member.transportation = Transportation::kBestEffort;
    } else {
      throw FomError(t.line, "transportation must be HLAreliable or HLAbestEffort, got '" +
              t.value + "'");
    }
    if (const auto * o = m.attribute("order")) {
      if (o->value == "TimeStamp") {
        member.order = Order::kTimeStamp;
      } else if (o->value == "Receive") {
        member.order = Order::kReceive;
      } else {
        throw FomError(o->line, "order must be TimeStamp or Receive, got '" + o->value + "'");
      }
    }
    for (const auto & a : m.attributes) {
      if (a.name != "name" && a.name != "transportation" && a.name != "order") {
        warn(a.line, "ignoring attribute " + a.name + " of <" + m.name + ">");
      }
    }
    for (const auto & c : m.children) {
      warn(c.line, "ignoring element <" + c.name + "> in <" + m.name + ">");
    }
    return member;
  }

  ObjectModel & model_;
  std::set<std::string> topics_;
};

std::string trim(std::string_view s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) {
    return {};
  }
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

ObjectModel parse_fom(std::string_view xml)
{
  auto doc = parse_xml(xml);
  ObjectModel model;
  model.warnings = std::move(doc.warnings);
  ModelBuilder(model).root(doc.root);
  return model;
}

ObjectModel load_fom(const std::filesystem::path & path)
{
  return parse_fom(read_file(path));
}

TypeMap parse_type_map(std::string_view text)
{
  TypeMap map;
  int line = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const auto content = trim(std::string_view(raw).substr(0, hash));
    if (content.empty()) {
      continue;
    }
    const auto eq = content.find('=');
    if (eq == std::string::npos) {
      throw FomError(line, "expected 'topic_name = idl_type_name'");
    }
    auto topic = trim(std::string_view(content).substr(0, eq));
    auto type = trim(std::string_view(content).substr(eq + 1));
    if (topic.empty() || type.empty()) {
      throw FomError(line, "expected 'topic_name = idl_type_name'");
    }
    if (!idl::is_identifier(type)) {
      throw FomError(line, "'" + type + "' is not an IDL type name");
    }
    if (!map.emplace(topic, type).second) {
      throw FomError(line, "duplicate mapping for topic " + topic);
    }
  }
  return map;
}

TypeMap load_type_map(const std::filesystem::path & path)
{
  return parse_type_map(read_file(path));
}

idl::TypeDescriptor blob_type()
{
  return idl::parse_idl("struct HlaBlob { string payload; };").front();
}

std::vector<TopicMapping> map_to_topics(const ObjectModel & model, const TypeMap & types)
{
  std::vector<TopicMapping> out;
  auto emit = [&](const std::vector<ClassDef> & classes) {
      for (const auto & c : classes) {
        for (const auto & m : c.members) {
          TopicMapping t;
          t.topic_name = c.name + "." + m.name;
          auto it = types.find(t.topic_name);
          t.type_name = it == types.end() ? std::string(kBlobTypeName) : it->second;
          t.qos = qos::QosProfile(qos::EntityKind::kTopic);
          t.qos.put(qos::ReliabilityQos{m.transportation == Transportation::kReliable ?
              qos::ReliabilityKind::kReliable : qos::ReliabilityKind::kBestEffort});
          t.qos.put(qos::DestinationOrderQos{m.order == Order::kTimeStamp ?
              qos::DestinationOrderKind::kBySourceTimestamp :
              qos::DestinationOrderKind::kByReceptionTimestamp});
          out.push_back(std::move(t));
        }
      }
    };
  emit(model.objects);
  emit(model.interactions);
  return out;
}

}  // namespace minidds::fom
