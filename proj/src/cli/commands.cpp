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

#include "wefpe/cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <zlib.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "wefpe/analysis.hpp"
#include "wefpe/convergence.hpp"
#include "wefpe/errors.hpp"
#include "wefpe/grid_file.hpp"
#include "wefpe/identities.hpp"
#include "wefpe/run_config.hpp"

namespace wefpe::cli {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

struct CommonOptions {
  std::string config_path;
  int height = 0;
  int width = 0;
  int dim = 0;
  std::uint64_t seed = 0;
  std::string mode;
  std::string order;
  int truncation = 0;
  double alpha_u = 0.0;
  double alpha_v = 0.0;
  double beta_pos = 0.0;
  std::string output;

  CLI::Option* o_height = nullptr;
  CLI::Option* o_width = nullptr;
  CLI::Option* o_dim = nullptr;
  CLI::Option* o_seed = nullptr;
  CLI::Option* o_mode = nullptr;
  CLI::Option* o_order = nullptr;
  CLI::Option* o_truncation = nullptr;
  CLI::Option* o_alpha_u = nullptr;
  CLI::Option* o_alpha_v = nullptr;
  CLI::Option* o_beta_pos = nullptr;
  CLI::Option* o_output = nullptr;
};

void add_common(CLI::App* app, CommonOptions& o, bool with_output) {
  app->add_option("-c,--config", o.config_path, "JSON run configuration");
  o.o_height = app->add_option("--height", o.height, "Patch grid height");
  o.o_width = app->add_option("--width", o.width, "Patch grid width");
  o.o_dim = app->add_option("--dim", o.dim, "Model dimension");
  o.o_seed = app->add_option("--seed", o.seed, "Projection seed");
  o.o_mode = app->add_option("--mode", o.mode, "direct | fast");
  o.o_order = app->add_option("--order", o.order, "sorted | lexicographic");
  o.o_truncation = app->add_option("--truncation", o.truncation, "Lattice box half-width (max_m = max_n)");
  o.o_alpha_u = app->add_option("--alpha-u", o.alpha_u, "Horizontal coordinate scale");
  o.o_alpha_v = app->add_option("--alpha-v", o.alpha_v, "Vertical coordinate scale");
  o.o_beta_pos = app->add_option("--beta-pos", o.beta_pos, "Positional gain");
  if (with_output) o.o_output = app->add_option("-o,--output", o.output, "Output path");
}

RunConfig resolve_config(const CommonOptions& o, std::ostream& err) {
  RunConfig cfg = o.config_path.empty() ? parse_run_config("{}") : load_run_config(o.config_path);
  EncodingConfig& e = cfg.encoding;
  if (o.o_height->count()) e.height = o.height;
  if (o.o_width->count()) e.width = o.width;
  if (o.o_dim->count()) e.model_dim = o.dim;
  if (o.o_seed->count()) e.projection_seed = o.seed;
  if (o.o_mode->count()) {
    if (o.mode == "direct") e.mode = EncodingMode::DirectLattice;
    else if (o.mode == "fast") e.mode = EncodingMode::FastApprox;
    else throw ConfigError("--mode must be direct or fast");
  }
  if (o.o_order->count()) {
    if (o.order == "sorted") e.order = SummationOrder::ModulusSorted;
    else if (o.order == "lexicographic") e.order = SummationOrder::Lexicographic;
    else throw ConfigError("--order must be sorted or lexicographic");
  }
  if (o.o_truncation->count()) {
    e.lattice.max_m = o.truncation;
    e.lattice.max_n = o.truncation;
  }
  if (o.o_alpha_u->count()) e.alpha_u = o.alpha_u;
  if (o.o_alpha_v->count()) e.alpha_v = o.alpha_v;
  if (o.o_beta_pos->count()) e.beta_pos = o.beta_pos;
  if (o.o_output && o.o_output->count()) cfg.output = o.output;
  e.validate();
  if (cfg.general_case_periods) {
    err << "warning: g3 != 0, using placeholder half-periods (1, i)\n";
  }
  return cfg;
}

std::string require_output(const RunConfig& cfg, const char* what) {
  if (!cfg.output || cfg.output->empty()) throw ArgumentError(std::string(what) + " requires -o/--output");
  return *cfg.output;
}

std::string csv_matrix(const Matrix& m) {
  std::string s;
  s.reserve(m.rows * m.cols * 24);
  for (std::size_t r = 0; r < m.rows; ++r) {
    for (std::size_t c = 0; c < m.cols; ++c) {
      if (c) s += ',';
      s += fmt17(m(r, c));
    }
    s += '\n';
  }
  return s;
}

int cmd_gen(const CommonOptions& o, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = resolve_config(o, err);
  const std::string path = require_output(cfg, "gen");
  const EncodingGrid grid = generate_encoding_grid(cfg.encoding);
  const std::vector<std::uint8_t> bytes = encode_grid(grid);
  write_file_atomic(path, bytes);
  const uLong crc = crc32(crc32(0L, Z_NULL, 0), bytes.data(), static_cast<uInt>(bytes.size()));
  char hex[9];
  std::snprintf(hex, sizeof hex, "%08lx", static_cast<unsigned long>(crc));
  out << json{{"rows", grid.rows()},
              {"cols", grid.cols()},
              {"bytes", bytes.size()},
              {"crc32", hex},
              {"output", path}}
             .dump()
      << "\n";
  return kExitOk;
}

int cmd_verify(const CommonOptions& o, std::size_t samples, bool samples_set, std::uint64_t vseed,
               bool vseed_set, std::ostream& out, std::ostream& err) {
  RunConfig cfg = resolve_config(o, err);
  if (samples_set) cfg.verify_samples = samples;
  if (vseed_set) cfg.verify_seed = vseed;
  const LatticeConfig lattice = cfg.encoding.effective_lattice();
  const IdentityReport r = identity_report(lattice, cfg.verify_samples, cfg.verify_seed);
  const IdentityThresholds t;
  const bool pass = identity_report_passes(r, t);
  out << json{{"max_diffeq_residual", r.max_diffeq_residual},
              {"max_diffeq_residual_nominal", r.max_diffeq_residual_nominal},
              {"max_addition_residual", r.max_addition_residual},
              {"max_periodicity_residual", r.max_periodicity_residual},
              {"max_parity_residual", r.max_parity_residual},
              {"laurent_coeff_estimate", r.laurent_coeff_estimate},
              {"samples_used", r.samples_used},
              {"addition_pairs_used", r.addition_pairs_used},
              {"lattice_g2", complex_json(r.lattice.g2)},
              {"lattice_g3", complex_json(r.lattice.g3)},
              {"nominal_g2", r.nominal_g2},
              {"nominal_g3", r.nominal_g3},
              {"truncation", lattice.max_m},
              {"thresholds",
               {{"diffeq", t.diffeq},
                {"addition", t.addition},
                {"periodicity", t.periodicity},
                {"parity", t.parity},
                {"laurent", t.laurent}}},
              {"pass", pass}}
             .dump()
      << "\n";
  return pass ? kExitOk : kExitCheckFailed;
}

int cmd_decay(const CommonOptions& o, int bins, bool bins_set, std::uint64_t noise_seed,
              bool fuse, std::ostream& out, std::ostream& err) {
  RunConfig cfg = resolve_config(o, err);
  if (bins_set) cfg.decay_bins = bins;
  const EncodingConfig& e = cfg.encoding;
  EncodingGrid grid = generate_encoding_grid(e);
  if (fuse) grid = fuse_with_noise(grid, noise_seed, e.model_dim);

  const std::vector<PairSample> samples = pairwise_samples(grid, e.height, e.width);
  const std::vector<BinStat> stats = bin_and_aggregate(samples, cfg.decay_bins);

  if (cfg.output) {
    std::string csv = "bin_center,mean_similarity,mapped_similarity,count\n";
    for (const BinStat& b : stats) {
      csv += fmt17(b.center) + ',' + fmt17(b.mean_similarity) + ',' + fmt17(b.mapped_similarity) +
             ',' + std::to_string(b.count) + '\n';
    }
    write_file_atomic(*cfg.output, csv);
  }

  json j{{"n_pairs", samples.size()},
         {"n_bins", cfg.decay_bins},
         {"non_empty_bins", stats.size()},
         {"fused_noise", fuse}};
  try {
    const DecayReport r = decay_report(grid, e.height, e.width, cfg.decay_bins);
    j["rho"] = r.pearson_rho;
    j["raw_rho"] = r.raw_pearson_rho;
    j["monotonicity"] = r.monotonicity;
    j["decay_magnitude"] = r.decay_magnitude;
    j["first_bin_mean"] = r.first_bin_mean;
    j["last_bin_mean"] = r.last_bin_mean;
  } catch (const InsufficientDataError& ex) {
    err << "note: " << ex.what() << "\n";
    for (const char* k : {"rho", "raw_rho", "monotonicity", "decay_magnitude"}) j[k] = nullptr;
  }
  if (cfg.output) j["output"] = *cfg.output;
  out << j.dump() << "\n";
  return kExitOk;
}

int cmd_bench(const CommonOptions& o, const std::vector<std::size_t>& k_list, bool k_set,
              std::size_t points, bool points_set, std::ostream& out, std::ostream& err) {
  RunConfig cfg = resolve_config(o, err);
  if (k_set) cfg.bench_k_list = k_list;
  if (points_set) cfg.bench_points = points;
  if (cfg.bench_k_list.empty()) throw ArgumentError("bench requires a non-empty k list");
  const LatticeConfig lattice = cfg.encoding.effective_lattice();
  const std::vector<Complex> z = sample_fundamental_cell(lattice, cfg.bench_points, cfg.bench_seed);
  const std::vector<OrderingRow> rows =
      ordering_benchmark(lattice, cfg.bench_k_list, z, cfg.bench_oracle_truncation);

  std::string csv = "k,ordering,mean_abs_error,max_abs_error,bound\n";
  json jrows = json::array();
  for (const OrderingRow& r : rows) {
    const char* name = r.order == SummationOrder::ModulusSorted ? "sorted" : "lexicographic";
    const double bound = r.bound.value_or(std::nan(""));
    csv += std::to_string(r.k) + ',' + name + ',' + fmt17(r.mean_abs_error) + ',' +
           fmt17(r.max_abs_error) + ',' + fmt17(bound) + '\n';
    jrows.push_back({{"k", r.k},
                     {"ordering", name},
                     {"mean_abs_error", r.mean_abs_error},
                     {"max_abs_error", r.max_abs_error},
                     {"bound", r.bound ? json(*r.bound) : json(nullptr)}});
  }
  if (cfg.output) write_file_atomic(*cfg.output, csv);
  json j{{"points", z.size()}, {"oracle_truncation", cfg.bench_oracle_truncation}, {"rows", jrows}};
  if (cfg.output) j["output"] = *cfg.output;
  out << j.dump() << "\n";
  return kExitOk;
}

int cmd_similarity(const CommonOptions& o, bool include_cls, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = resolve_config(o, err);
  const std::string path = require_output(cfg, "similarity");
  const EncodingGrid grid = generate_encoding_grid(cfg.encoding);
  const Matrix s = cosine_similarity_matrix(grid, include_cls);
  write_file_atomic(path, csv_matrix(s));
  out << json{{"rows", s.rows}, {"cols", s.cols}, {"output", path}}.dump() << "\n";
  return kExitOk;
}

int cmd_pca(const CommonOptions& o, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = resolve_config(o, err);
  const std::string path = require_output(cfg, "pca");
  const EncodingConfig& e = cfg.encoding;
  const EncodingGrid grid = generate_encoding_grid(e);
  const PcaResult p = pca_top2(patch_rows(grid));
  std::string csv = "i,j,pc1,pc2\n";
  for (std::size_t r = 0; r < p.coordinates.rows; ++r) {
    const auto i = r / static_cast<std::size_t>(e.width);
    const auto jj = r % static_cast<std::size_t>(e.width);
    csv += std::to_string(i) + ',' + std::to_string(jj) + ',' + fmt17(p.coordinates(r, 0)) + ',' +
           fmt17(p.coordinates(r, 1)) + '\n';
  }
  write_file_atomic(path, csv);
  out << json{{"rows", p.coordinates.rows},
              {"eigenvalues", p.eigenvalues},
              {"explained_ratio", p.explained_ratio},
              {"output", path}}
             .dump()
      << "\n";
  return kExitOk;
}

int cmd_hybrid(const std::string& wef_path, const std::string& learned_path, double lambda_raw,
               const std::string& out_path, std::ostream& out) {
  const EncodingGrid wef = read_grid_file(wef_path);
  HybridParams h;
  h.lambda_raw = lambda_raw;
  h.learned_grid = read_grid_file(learned_path);
  const EncodingGrid blended = hybrid_blend(wef, h);
  write_grid_file(out_path, blended);
  out << json{{"rows", blended.rows()},
              {"cols", blended.cols()},
              {"lambda", h.lambda()},
              {"output", out_path}}
             .dump()
      << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weierstrass elliptic function positional encodings"};
  app.name("wefpe");
  app.require_subcommand(1);

  CommonOptions gen_o, verify_o, decay_o, bench_o, sim_o, pca_o, cfg_o;

  CLI::App* gen = app.add_subcommand("gen", "Generate an encoding grid file");
  add_common(gen, gen_o, true);

  CLI::App* verify = app.add_subcommand("verify", "Check the classical identities of the lattice sum");
  add_common(verify, verify_o, false);
  std::size_t samples = 0;
  std::uint64_t vseed = 0;
  CLI::Option* o_samples = verify->add_option("--samples", samples, "Sample points");
  CLI::Option* o_vseed = verify->add_option("--verify-seed", vseed, "Sampling seed");

  CLI::App* decay = app.add_subcommand("decay", "Distance-decay analysis of patch similarities");
  add_common(decay, decay_o, true);
  int bins = 0;
  std::uint64_t noise_seed = 0;
  CLI::Option* o_bins = decay->add_option("--bins", bins, "Number of distance bins");
  CLI::Option* o_noise = decay->add_option("--fuse-noise", noise_seed, "Add seeded normal content noise");

  CLI::App* bench = app.add_subcommand("bench", "Summation-order convergence benchmark");
  add_common(bench, bench_o, true);
  std::vector<std::size_t> k_list;
  std::size_t points = 0;
  CLI::Option* o_k = bench->add_option("-k,--k-list", k_list, "Term counts")->delimiter(',');
  CLI::Option* o_points = bench->add_option("--points", points, "Sample points");

  CLI::App* sim = app.add_subcommand("similarity", "Cosine similarity matrix CSV");
  add_common(sim, sim_o, true);
  bool include_cls = false;
  sim->add_flag("--include-cls", include_cls, "Include the class row");

  CLI::App* pca = app.add_subcommand("pca", "Top-2 principal component CSV of patch rows");
  add_common(pca, pca_o, true);

  CLI::App* hybrid = app.add_subcommand("hybrid", "Blend an encoding grid with a learned grid");
  std::string wef_path, learned_path, hybrid_out;
  double lambda_raw = 0.0;
  hybrid->add_option("--wef", wef_path, "Encoding grid file")->required();
  hybrid->add_option("--learned", learned_path, "Learned grid file")->required();
  hybrid->add_option("--lambda-raw", lambda_raw, "Gate logit");
  hybrid->add_option("-o,--output", hybrid_out, "Output grid file")->required();

  CLI::App* config = app.add_subcommand("config", "Print the resolved configuration as JSON");
  add_common(config, cfg_o, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(gen_o, out, err);
    if (verify->parsed())
      return cmd_verify(verify_o, samples, o_samples->count() > 0, vseed, o_vseed->count() > 0, out, err);
    if (decay->parsed())
      return cmd_decay(decay_o, bins, o_bins->count() > 0, noise_seed, o_noise->count() > 0, out, err);
    if (bench->parsed())
      return cmd_bench(bench_o, k_list, o_k->count() > 0, points, o_points->count() > 0, out, err);
    if (sim->parsed()) return cmd_similarity(sim_o, include_cls, out, err);
    if (pca->parsed()) return cmd_pca(pca_o, out, err);
    if (hybrid->parsed()) return cmd_hybrid(wef_path, learned_path, lambda_raw, hybrid_out, out);
    if (config->parsed()) {
      out << dump_run_config(resolve_config(cfg_o, err));
      return kExitOk;
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace wefpe::cli
