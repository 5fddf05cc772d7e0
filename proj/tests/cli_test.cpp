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

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace
{

struct Result
{
  int status = -1;
  std::string output;
};

Result run(const std::string & args)
{
  Result r;
  const std::string command = std::string(MINIDDS_CLI_PATH) + " " + args + " 2>&1";
  FILE * pipe = popen(command.c_str(), "r");
  if (!pipe) {
    return r;
  }
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) {
    r.output.append(buf, n);
  }
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string data(const char * name)
{
  return std::string(MINIDDS_DATA_DIR) + "/" + name;
}

std::string scratch(const char * name, const std::string & content)
{
  auto path = std::filesystem::temp_directory_path() /
    ("minidds_cli_" + std::to_string(::getpid()) + "_" + name);
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST(Cli, IdlCheck)
{
  auto r = run("idl check " + data("climat.idl"));
  EXPECT_EQ(r.status, 0) << r.output;
  EXPECT_NE(r.output.find("struct Climat: 8 fields, 32 bytes encoded, keyed"), std::string::npos)
    << r.output;
  r = run("idl check " + scratch("bad.idl", "struct X { long; };"));
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.output.find("1:"), std::string::npos) << r.output;
}

TEST(Cli, FomMap)
{
  auto r = run("fom map " + data("platsim.xml") + " --types " + data("platsim.types"));
  EXPECT_EQ(r.status, 0) << r.output;
  EXPECT_NE(r.output.find("Vehicule.VehiculeATT       Climat      RELIABLE      "
    "BY_RECEPTION_TIMESTAMP"), std::string::npos) << r.output;
  EXPECT_NE(r.output.find("Global_Interaction.Global  HlaBlob     RELIABLE      "
    "BY_SOURCE_TIMESTAMP"), std::string::npos) << r.output;
  EXPECT_NE(r.output.find("warning: line 5: ignoring attribute Auhter"), std::string::npos);

  r = run("fom map " + scratch("bad.xml",
    "<objectModel>\n<objects><objectClass name=\"A\">\n"
    "<attribute name=\"x\" transportation=\"HLAwhatever\"/></objectClass></objects>\n"
    "</objectModel>\n"));
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.output.find("line 3"), std::string::npos) << r.output;
}

TEST(Cli, ConfigErrorsExitTwo)
{
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("bench latency --selftest --rate 0").status, 2);
  EXPECT_EQ(run("bench latency --selftest --payload 70000").status, 2);
  EXPECT_EQ(run("bench latency --selftest --reference table2").status, 2);
  EXPECT_EQ(run("bench latency --count 5").status, 2);
  EXPECT_EQ(run("bench throughput --duration 0").status, 2);
  EXPECT_EQ(run("bench throughput --sizes 10,0").status, 2);
  EXPECT_EQ(run("bench latency --selftest --qos /nonexistent.qos").status, 2);
  auto r = run("bench latency --selftest --qos " + scratch("bad.qos", "reliability.kind = X\n"));
  EXPECT_EQ(r.status, 2) << r.output;
}

TEST(Cli, NoPeerExitsThree)
{
  auto r = run("bench latency --role ping --count 3 --domain 77 --port 17677 --timeout 0.3");
  EXPECT_EQ(r.status, 3) << r.output;
  EXPECT_NE(r.output.find("NoMatchWithinTimeout"), std::string::npos) << r.output;
}

TEST(Cli, SelftestWritesTrace)
{
  const auto csv = scratch("trace.csv", "");
  auto r = run("bench latency --selftest --count 50 --rate 1000 --payload 10 --csv " + csv +
      " --qos " + data("reliable.qos"));
  EXPECT_EQ(r.status, 0) << r.output;
  EXPECT_NE(r.output.find("padded to 12"), std::string::npos);
  EXPECT_NE(r.output.find("sent 50, received 50, lost 0"), std::string::npos) << r.output;
  std::ifstream in(csv);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    rows += !line.empty() && line[0] != '#' && line[0] != 's';
  }
  EXPECT_EQ(rows, 50);
}
