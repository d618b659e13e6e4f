// Copyright 2026 The wefpe Authors.
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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "wefpe/cli/commands.hpp"
#include "wefpe/grid_file.hpp"

namespace wefpe::cli {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  nlohmann::json out;
  std::string raw_out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  CliRun r{code, nullptr, out.str(), err.str()};
  if (!r.raw_out.empty() && (r.raw_out[0] == '{' || r.raw_out[0] == '[')) {
    r.out = nlohmann::json::parse(r.raw_out);
  }
  return r;
}

std::string tmp(const std::string& name) {
  return (fs::path(::testing::TempDir()) / ("wefpe_cli_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

TEST(CliGen, WritesGridAndChecksum) {
  const std::string a = tmp("a.wef"), b = tmp("b.wef");
  const CliRun r = run({"gen", "--height", "14", "--width", "14", "--dim", "192", "--seed", "42", "-o", a});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(fs::file_size(a), 302608u);
  EXPECT_EQ(r.out["rows"], 197);
  EXPECT_EQ(r.out["cols"], 192);
  EXPECT_EQ(r.out["crc32"].get<std::string>().size(), 8u);
  const CliRun r2 = run({"gen", "--height", "14", "--width", "14", "--dim", "192", "--seed", "42", "-o", b});
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_EQ(r.out["crc32"], r2.out["crc32"]);
}

TEST(CliGen, LargerGrid) {
  const std::string a = tmp("g24.wef");
  ASSERT_EQ(run({"gen", "--height", "24", "--width", "24", "-o", a}).code, kExitOk);
  EXPECT_EQ(read_grid_file(a).rows(), 577u);
}

TEST(CliGen, Errors) {
  EXPECT_EQ(run({"gen", "--height", "0", "-o", tmp("x.wef")}).code, kExitUsage);
  EXPECT_EQ(run({"gen"}).code, kExitUsage);
  EXPECT_EQ(run({"gen", "-o", "/nonexistent_dir_wefpe/g.wef"}).code, kExitIo);
  EXPECT_EQ(run({"gen", "--config", tmp("missing.json"), "-o", tmp("x.wef")}).code, kExitIo);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({}).code, kExitUsage);
}

TEST(CliGen, ConfigPrecedence) {
  const std::string cfg = tmp("cfg.json");
  std::ofstream(cfg) << R"({"height": 5, "width": 6, "model_dim": 32})";
  const CliRun a = run({"gen", "--config", cfg, "-o", tmp("p.wef")});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out["rows"], 31);
  EXPECT_EQ(a.out["cols"], 32);
  const CliRun b = run({"gen", "--config", cfg, "--height", "2", "-o", tmp("p.wef")});
  EXPECT_EQ(b.out["rows"], 13);

  std::ofstream(cfg) << R"({"hieght": 5})";
  EXPECT_EQ(run({"gen", "--config", cfg, "-o", tmp("p.wef")}).code, kExitUsage);
}

TEST(CliVerify, DefaultsPass) {
  const CliRun r = run({"verify"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_LT(r.out["max_diffeq_residual"].get<double>(), 1e-2);
  EXPECT_TRUE(r.out["pass"].get<bool>());
}

TEST(CliVerify, CoarseTruncationReportsLargerResiduals) {
  const CliRun fine = run({"verify"});
  const CliRun coarse = run({"verify", "--truncation", "2"});
  ASSERT_TRUE(coarse.code == kExitOk || coarse.code == kExitCheckFailed);
  EXPECT_GT(coarse.out["max_diffeq_residual"].get<double>(),
            fine.out["max_diffeq_residual"].get<double>());
}

TEST(CliVerify, ZeroSamplesIsUsageError) {
  EXPECT_EQ(run({"verify", "--samples", "0"}).code, kExitUsage);
}

TEST(CliDecay, CsvAndJson) {
  const std::string csv = tmp("decay.csv");
  const CliRun r = run({"decay", "--bins", "80", "-o", csv});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  for (const char* k : {"rho", "monotonicity", "decay_magnitude"}) EXPECT_TRUE(r.out.contains(k));
  const auto rows = lines(slurp(csv));
  ASSERT_GE(rows.size(), 2u);
  EXPECT_EQ(rows[0], "bin_center,mean_similarity,mapped_similarity,count");
  std::size_t total = 0;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    total += std::stoul(rows[k].substr(rows[k].rfind(',') + 1));
  }
  EXPECT_EQ(total, 19110u);
}

TEST(CliDecay, SingleBin) {
  const std::string csv = tmp("decay1.csv");
  const CliRun r = run({"decay", "--bins", "1", "-o", csv});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(lines(slurp(csv)).size(), 2u);
  EXPECT_TRUE(r.out["rho"].is_null());
}

TEST(CliDecay, FusedNoise) {
  const CliRun r = run({"decay", "--fuse-noise", "3"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(r.out["fused_noise"].get<bool>());
}

TEST(CliBench, SortedBeatsLexicographicAndBoundsHold) {
  const std::string csv = tmp("bench.csv");
  const CliRun r = run({"bench", "-k", "24,100,624", "-o", csv});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = lines(slurp(csv));
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows[0], "k,ordering,mean_abs_error,max_abs_error,bound");
  const auto& jr = r.out["rows"];
  double sorted100 = 0, lex100 = 0, sorted624 = 0, lex624 = 0;
  for (const auto& row : jr) {
    const auto k = row["k"].get<int>();
    const bool sorted = row["ordering"] == "sorted";
    const double mean = row["mean_abs_error"].get<double>();
    if (k == 100) (sorted ? sorted100 : lex100) = mean;
    if (k == 624) (sorted ? sorted624 : lex624) = mean;
    if (!row["bound"].is_null()) {
      EXPECT_LE(row["max_abs_error"].get<double>(), row["bound"].get<double>());
    }
  }
  EXPECT_LE(sorted100, lex100);
  EXPECT_NEAR(sorted624, lex624, 1e-12);
}

TEST(CliBench, BadKList) {
  EXPECT_EQ(run({"bench", "-k", "0"}).code, kExitUsage);
  EXPECT_EQ(run({"bench", "-k", "100000"}).code, kExitUsage);
}

TEST(CliSimilarity, DiagonalAndStability) {
  const std::string a = tmp("sim_a.csv"), b = tmp("sim_b.csv");
  ASSERT_EQ(run({"similarity", "-o", a}).code, kExitOk);
  ASSERT_EQ(run({"similarity", "-o", b}).code, kExitOk);
  EXPECT_EQ(slurp(a), slurp(b));
  const auto rows = lines(slurp(a));
  ASSERT_EQ(rows.size(), 196u);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::vector<std::string> cells;
    std::istringstream in(rows[r]);
    for (std::string c; std::getline(in, c, ',');) cells.push_back(c);
    ASSERT_EQ(cells.size(), 196u);
    EXPECT_EQ(std::stod(cells[r]), 1.0);
  }
}

TEST(CliPca, RowsAndStability) {
  const std::string a = tmp("pca_a.csv"), b = tmp("pca_b.csv");
  const CliRun r = run({"pca", "-o", a});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  ASSERT_EQ(run({"pca", "-o", b}).code, kExitOk);
  EXPECT_EQ(slurp(a), slurp(b));
  const auto rows = lines(slurp(a));
  EXPECT_EQ(rows[0], "i,j,pc1,pc2");
  EXPECT_EQ(rows.size(), 197u);
}

TEST(CliHybrid, BlendsAndChecksShape) {
  const std::string wef = tmp("h_wef.wef"), learned = tmp("h_learned.wef"), out = tmp("h_out.wef");
  ASSERT_EQ(run({"gen", "-o", wef}).code, kExitOk);
  ASSERT_EQ(run({"gen", "--seed", "7", "-o", learned}).code, kExitOk);
  ASSERT_EQ(run({"hybrid", "--wef", wef, "--learned", learned, "--lambda-raw", "0", "-o", out}).code, kExitOk);
  const EncodingGrid w = read_grid_file(wef), l = read_grid_file(learned), o = read_grid_file(out);
  for (std::size_t c = 0; c < o.cols(); ++c) EXPECT_EQ(o(0, c), l(0, c));
  for (std::size_t r = 1; r < o.rows(); ++r) {
    for (std::size_t c = 0; c < o.cols(); ++c) EXPECT_DOUBLE_EQ(o(r, c), 0.5 * (w(r, c) + l(r, c)));
  }
  ASSERT_EQ(run({"hybrid", "--wef", wef, "--learned", learned, "--lambda-raw", "20", "-o", out}).code, kExitOk);
  const EncodingGrid sat = read_grid_file(out);
  const double gap = 1.0 - 1.0 / (1.0 + std::exp(-20.0));
  for (std::size_t r = 1; r < sat.rows(); ++r) {
    for (std::size_t c = 0; c < sat.cols(); ++c) {
      EXPECT_LE(std::abs(sat(r, c) - w(r, c)), gap * std::abs(w(r, c) - l(r, c)) + 1e-15);
    }
  }

  const std::string small = tmp("h_small.wef");
  ASSERT_EQ(run({"gen", "--height", "3", "-o", small}).code, kExitOk);
  EXPECT_EQ(run({"hybrid", "--wef", wef, "--learned", small, "-o", out}).code, kExitUsage);
  EXPECT_EQ(run({"hybrid", "--wef", tmp("nope.wef"), "--learned", small, "-o", out}).code, kExitIo);
}

TEST(CliConfig, PrintsParsableDefaults) {
  const CliRun r = run({"config"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out["height"], 14);
  EXPECT_EQ(r.out["decay"]["bins"], 80);
}

}  // namespace
}  // namespace wefpe::cli
