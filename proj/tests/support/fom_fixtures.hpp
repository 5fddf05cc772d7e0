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

#ifndef SUPPORT__FOM_FIXTURES_HPP_
#define SUPPORT__FOM_FIXTURES_HPP_

namespace minidds::test
{

// Reference object model, verbatim including the misspelled attribute.
inline constexpr const char * kPlatsimFom =
  R"(<?xml version="1.0" encoding="UTF-8"?>
<objectModel
  DTDversion="1516.2" name="Platsim.xml"
  type="FOM" version="1.0" date="11-11-2009"
  Auhter="Hakiri Akram" sponsor="LAAS-CNRS">
  <objects>
    <objectClass name="Vehicule">
      <attribute name="VehiculeATT"
        transportation="HLAreliable"/>
    </objectClass>
  </objects>
  <interactions>
    <interactionClass name="Global_Interaction">
      <parameter name="Global"
        transportation="HLAreliable"
        order="TimeStamp"/>
    </interactionClass>
  </interactions>
</objectModel>
)";

}  // namespace minidds::test

#endif  // SUPPORT__FOM_FIXTURES_HPP_
