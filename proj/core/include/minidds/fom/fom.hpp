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

#ifndef MINIDDS__FOM__FOM_HPP_
#define MINIDDS__FOM__FOM_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "minidds/fom/xml.hpp"
#include "minidds/idl/types.hpp"
#include "minidds/qos/profile.hpp"

namespace minidds::fom
{

enum class Transportation : std::uint8_t {kReliable, kBestEffort};
enum class Order : std::uint8_t {kTimeStamp, kReceive};

std::string_view to_string(Transportation t);
std::string_view to_string(Order o);

enum class ModelType : std::uint8_t {kFom, kSom};

/// An object class attribute or an interaction class parameter.
struct Member
{
  std::string name;
  Transportation transportation = Transportation::kReliable;
  std::optional<Order> order;

  friend bool operator==(const Member &, const Member &) = default;
};

struct ClassDef
{
  std::string name;
  std::vector<Member> members;

  friend bool operator==(const ClassDef &, const ClassDef &) = default;
};

struct ObjectModel
{
  std::string name;
  ModelType type = ModelType::kFom;
  std::string version;
  std::vector<ClassDef> objects;
  std::vector<ClassDef> interactions;
  /// Ignored elements and attributes, with line numbers.
  std::vector<std::string> warnings;
};

/// Reads the objectModel / objects / objectClass / attribute and
/// interactions / interactionClass / parameter subset of HLA-OMT. Throws
/// FomError on malformed XML, missing names, duplicates, or values outside
/// the transportation and order enumerations.
ObjectModel parse_fom(std::string_view xml);
ObjectModel load_fom(const std::filesystem::path & path);

/// Topic name -> IDL type name overrides.
using TypeMap = std::map<std::string, std::string>;

/// Lines of `topic_name = idl_type_name`; '#' starts a comment. Throws
/// FomError for malformed lines or duplicate topics.
TypeMap parse_type_map(std::string_view text);
TypeMap load_type_map(const std::filesystem::path & path);

/// Type of FOM-derived topics without an override.
inline constexpr std::string_view kBlobTypeName = "HlaBlob";
idl::TypeDescriptor blob_type();

struct TopicMapping
{
  std::string topic_name;
  std::string type_name;
  qos::QosProfile qos;
};

/// One topic per (class, member) named `Class.member`, objects first, in
/// document order. HLAreliable maps to RELIABLE, HLAbestEffort to
/// BEST_EFFORT; TimeStamp order maps to BY_SOURCE_TIMESTAMP, Receive or no
/// order to BY_RECEPTION_TIMESTAMP.
std::vector<TopicMapping> map_to_topics(const ObjectModel & model, const TypeMap & types = {});

}  // namespace minidds::fom

#endif  // MINIDDS__FOM__FOM_HPP_
