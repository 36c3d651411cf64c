// Copyright 2026 The spencerkit Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <string>

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome cli(const std::string& args) {
  const std::string cmd = std::string("\"") + SPENCERKIT_CLI_PATH + "\" " + args + " 2>/dev/null";
  Outcome o;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return o;
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) o.out.append(buf, n);
  const int status = pclose(pipe);
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return o;
}

std::string temp_file(const std::string& name, const std::string& text) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << text;
  return path;
}

TEST(Cli, Version) {
  const Outcome o = cli("version");
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.out.rfind("spencerkit ", 0), 0u);
}

TEST(Cli, PassingTaskExitsZero) {
  const Outcome o = cli("run builtin:std_c1 --task cr_z");
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("\"overall\": \"pass\""), std::string::npos);
}

TEST(Cli, FailingTaskExitsOne) {
  const Outcome o = cli("run builtin:std_c1 --task cr_zbar --tol tol_cr=3");
  EXPECT_EQ(o.code, 1);
  EXPECT_NE(o.out.find("\"overall\": \"fail\""), std::string::npos);
}

TEST(Cli, InvalidInputExitsTwo) {
  EXPECT_EQ(cli("run builtin:nope").code, 2);
  EXPECT_EQ(cli("run /nonexistent/file.json").code, 2);
  EXPECT_EQ(cli("run builtin:std_c1 --tol tol_nothing=1").code, 2);
  EXPECT_EQ(cli("run builtin:std_c1 --tol tol_cr").code, 2);
  EXPECT_EQ(cli("run builtin:std_c1 --task missing").code, 2);
  EXPECT_EQ(cli("run builtin:std_c1 --format xml").code, 2);
  EXPECT_EQ(cli("frobnicate").code, 2);
  EXPECT_EQ(cli("run " + temp_file("broken.json", "{\"name\": ")).code, 2);
}

TEST(Cli, BuiltinRoundTripsThroughAFile) {
  const Outcome shown = cli("builtin std_c2");
  ASSERT_EQ(shown.code, 0);
  const std::string path = temp_file("std_c2.json", shown.out);
  const Outcome a = cli("run " + path + " --task cr_z1");
  const Outcome b = cli("run builtin:std_c2 --task cr_z1");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, TextFormat) {
  const Outcome o = cli("run builtin:std_c1 --task cr_z --format text");
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("[pass] cr_z"), std::string::npos);
}

}  // namespace
