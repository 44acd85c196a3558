// Copyright 2026 The corrwitness authors
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

// corrwitness — command-line front end.
//
// Subcommands: witness, saturate, sweep, chain-demo, env-corr,
// tomography-demo, validate.  Options may also be supplied through a JSON
// config file (--config); command-line flags win over config values, and
// unknown config keys are rejected.  Exit codes: 0 ok, 2 input error,
// 3 domain refusal, 4 internal error.  Errors carry a JSON body on stderr.

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "corrwitness/algebra.hpp"
#include "corrwitness/dynamics.hpp"
#include "corrwitness/json_io.hpp"
#include "corrwitness/protocols.hpp"
#include "corrwitness/random.hpp"
#include "corrwitness/tomography.hpp"
#include "corrwitness/types.hpp"
#include "corrwitness/witness.hpp"

namespace {

using corrwitness::DensityOperator;
using corrwitness::HermitianOperator;
using corrwitness::Index;
using corrwitness::Matrix;
using corrwitness::SpaceDims;
using corrwitness::Tolerances;
using corrwitness::UnitaryOperator;
using corrwitness::domain_refusal;
using nlohmann::json;

// All options for every subcommand; each subcommand registers its subset.
struct Opts {
  std::string config;
  std::string input;
  std::string sigma;
  std::string hamiltonian;
  std::string unitary;
  std::string out;
  std::string format = "json";
  std::string control = "none";
  std::string kind = "density";
  std::uint64_t seed = 1;
  double t_max = 10.0;
  long long steps = 200;
  double tol_det = 1e-9;
  long long n_spins = 3;
  long long split_spin = 2;
  long long trials = 10;
  long long d_s = 2;
  long long d_b = 2;
  long long d_c = 2;
};

// Maps a config-file key to the CLI option it mirrors, so that explicit
// flags win and unknown keys are rejected.
struct ConfigBinding {
  std::string key;
  CLI::Option* option;
  std::function<void(const json&)> apply;
};

class Bindings {
 public:
  void add_string(const std::string& key, CLI::Option* opt, std::string* target) {
    items_.push_back({key, opt, [key, target](const json& v) {
                        if (!v.is_string())
                          throw std::invalid_argument("config: \"" + key +
                                                      "\" must be a string");
                        *target = v.get<std::string>();
                      }});
  }
  void add_uint(const std::string& key, CLI::Option* opt, std::uint64_t* target) {
    items_.push_back({key, opt, [key, target](const json& v) {
                        if (!v.is_number_unsigned())
                          throw std::invalid_argument("config: \"" + key +
                                                      "\" must be a non-negative integer");
                        *target = v.get<std::uint64_t>();
                      }});
  }
  void add_int(const std::string& key, CLI::Option* opt, long long* target) {
    items_.push_back({key, opt, [key, target](const json& v) {
                        if (!v.is_number_integer())
                          throw std::invalid_argument("config: \"" + key +
                                                      "\" must be an integer");
                        *target = v.get<long long>();
                      }});
  }
  void add_double(const std::string& key, CLI::Option* opt, double* target) {
    items_.push_back({key, opt, [key, target](const json& v) {
                        if (!v.is_number())
                          throw std::invalid_argument("config: \"" + key +
                                                      "\" must be a number");
                        *target = v.get<double>();
                      }});
  }

  // Applies config values for options the user did not pass explicitly.
  void apply(const std::string& path) const {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    json j;
    try {
      in >> j;
    } catch (const json::parse_error& e) {
      throw std::invalid_argument("config file " + path + ": " + e.what());
    }
    if (!j.is_object())
      throw std::invalid_argument("config file " + path + ": top level must be an object");
    for (const auto& item : j.items()) {
      const ConfigBinding* found = nullptr;
      for (const auto& b : items_) {
        if (b.key == item.key()) {
          found = &b;
          break;
        }
      }
      if (found == nullptr)
        throw std::invalid_argument("config: unknown key \"" + item.key() + "\"");
      if (found->option->count() == 0) found->apply(item.value());
    }
  }

 private:
  std::vector<ConfigBinding> items_;
};

Tolerances make_tolerances(const Opts& o) {
  Tolerances tol = corrwitness::default_tolerances();
  tol.det = o.tol_det;
  return tol;
}

void require_format_json(const Opts& o) {
  if (o.format != "json")
    throw std::invalid_argument("--format csv is only available for sweep");
}

void write_output(const Opts& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.out, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + o.out);
  out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

DensityOperator load_density(const std::string& path, bool need_bipartite,
                             const Tolerances& tol) {
  if (path.empty()) throw std::invalid_argument("--input is required");
  corrwitness::io::OperatorFile file = corrwitness::io::load_operator(path);
  if (need_bipartite && !file.dims.has_value())
    throw std::invalid_argument(path + ": \"dims\" must name both factors, [d_system, d_env]");
  return DensityOperator::validated(std::move(file.matrix), file.dims, tol);
}

void fill_report(json& j, const corrwitness::witness::DetectionReport& rep,
                 const std::optional<SpaceDims>& dims, double tol_det) {
  j["bound"] = rep.bound;
  j["achieved"] = rep.achieved;
  j["witness_value"] = rep.witness_value;
  j["detectable"] = rep.detectable;
  j["saturable"] = rep.saturable;
  j["n"] = rep.n;
  j["m"] = rep.m;
  j["r"] = rep.r;
  j["tol_det"] = tol_det;
  j["unitary_id"] = rep.unitary_id;
  j["unitary"] = corrwitness::io::operator_to_json(rep.unitary, dims);
}

// ------------------------------ subcommands ------------------------------

int cmd_witness(const Opts& o) {
  require_format_json(o);
  const Tolerances tol = make_tolerances(o);
  const DensityOperator rho = load_density(o.input, /*need_bipartite=*/true, tol);
  const corrwitness::witness::DetectionReport rep =
      corrwitness::witness::detect_initial_correlation(rho, tol);
  json j;
  j["command"] = "witness";
  j["dims"] = {rho.bipartite().d_system, rho.bipartite().d_env};
  fill_report(j, rep, rho.space(), o.tol_det);
  write_output(o, dump(j));
  return 0;
}

int cmd_saturate(const Opts& o) {
  require_format_json(o);
  const Tolerances tol = make_tolerances(o);
  const DensityOperator rho = load_density(o.input, /*need_bipartite=*/true, tol);
  if (o.sigma.empty()) throw std::invalid_argument("--sigma is required");
  corrwitness::io::OperatorFile sf = corrwitness::io::load_operator(o.sigma);
  if (sf.dims.has_value() && !(*sf.dims == rho.bipartite()))
    throw std::invalid_argument(o.sigma + ": dims differ from --input");
  const DensityOperator sigma =
      DensityOperator::validated(std::move(sf.matrix), rho.bipartite(), tol);
  const auto [u, rep] = corrwitness::witness::saturate_pair(rho, sigma, tol);
  json j;
  j["command"] = "saturate";
  j["dims"] = {rho.bipartite().d_system, rho.bipartite().d_env};
  fill_report(j, rep, rho.space(), o.tol_det);
  write_output(o, dump(j));
  return 0;
}

int cmd_sweep(const Opts& o) {
  const Tolerances tol = make_tolerances(o);
  const DensityOperator rho = load_density(o.input, /*need_bipartite=*/true, tol);
  const SpaceDims dims = rho.bipartite();

  if (o.hamiltonian.empty()) throw std::invalid_argument("--hamiltonian is required");
  corrwitness::io::OperatorFile hf = corrwitness::io::load_operator(o.hamiltonian);
  if (hf.dims.has_value() && !(*hf.dims == dims))
    throw std::invalid_argument(o.hamiltonian + ": dims differ from --input");
  const HermitianOperator h = HermitianOperator::validated(std::move(hf.matrix), dims, tol);

  DensityOperator sigma = [&] {
    if (o.sigma.empty()) {
      // Default comparison state: the product of the input's marginals.
      const Matrix rho_s = corrwitness::partial_trace_env(rho.matrix(), dims);
      const Matrix rho_e = corrwitness::partial_trace_system(rho.matrix(), dims);
      return DensityOperator::unchecked(corrwitness::tensor(rho_s, rho_e), dims);
    }
    corrwitness::io::OperatorFile sf = corrwitness::io::load_operator(o.sigma);
    if (sf.dims.has_value() && !(*sf.dims == dims))
      throw std::invalid_argument(o.sigma + ": dims differ from --input");
    return DensityOperator::validated(std::move(sf.matrix), dims, tol);
  }();

  const corrwitness::dynamics::TimeGrid grid(o.t_max, static_cast<Index>(o.steps));
  const corrwitness::dynamics::SweepResult res =
      corrwitness::dynamics::sweep(h, rho, sigma, grid, tol);

  json summary;
  summary["command"] = "sweep";
  summary["t_max"] = o.t_max;
  summary["steps"] = o.steps;
  summary["tol_det"] = o.tol_det;
  summary["detected_fraction"] = res.detected_fraction;
  summary["max_witness_norm"] = res.max_witness_norm;
  if (res.first_detection_time.has_value()) {
    summary["first_detection_time"] = *res.first_detection_time;
  } else {
    summary["first_detection_time"] = nullptr;
  }

  if (o.format == "csv") {
    // Per-time table to --out (required), summary JSON to stdout.
    if (o.out.empty())
      throw std::invalid_argument("--format csv requires --out for the per-time table");
    std::ostringstream csv;
    csv << "t,witness_norm,trace_distance,td_rate\n";
    for (std::size_t i = 0; i < res.times.size(); ++i) {
      csv << corrwitness::io::format_double(res.times[i]) << ','
          << corrwitness::io::format_double(res.witness_norms[i]) << ','
          << corrwitness::io::format_double(res.trace_distances[i]) << ','
          << corrwitness::io::format_double(res.td_rates[i]) << '\n';
    }
    std::ofstream out(o.out, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file: " + o.out);
    out << csv.str();
    std::cout << dump(summary);
    return 0;
  }

  summary["times"] = res.times;
  summary["witness_norms"] = res.witness_norms;
  summary["trace_distances"] = res.trace_distances;
  summary["td_rates"] = res.td_rates;
  write_output(o, dump(summary));
  return 0;
}

int cmd_chain_demo(const Opts& o) {
  require_format_json(o);
  const Tolerances tol = make_tolerances(o);
  corrwitness::dynamics::ChainControl control;
  if (o.control == "none") {
    control = corrwitness::dynamics::ChainControl::none;
  } else if (o.control == "bloch-z") {
    control = corrwitness::dynamics::ChainControl::bloch_z;
  } else if (o.control == "z-correlated") {
    control = corrwitness::dynamics::ChainControl::z_correlated;
  } else {
    throw std::invalid_argument("--control must be none, bloch-z, or z-correlated");
  }
  const corrwitness::dynamics::TimeGrid grid(o.t_max, static_cast<Index>(o.steps));
  const corrwitness::dynamics::ChainSuiteReport rep = corrwitness::dynamics::verify_undetectable(
      static_cast<int>(o.n_spins), static_cast<int>(o.split_spin), static_cast<int>(o.trials),
      grid, o.seed, control, tol);
  json j;
  j["command"] = "chain-demo";
  j["n_spins"] = rep.n_spins;
  j["split_spin"] = rep.split_spin;
  j["trials"] = rep.trials;
  j["control"] = o.control;
  j["seed"] = o.seed;
  j["t_max"] = o.t_max;
  j["steps"] = o.steps;
  j["tol_det"] = o.tol_det;
  j["max_witness_norm_rho"] = rep.max_witness_norm_rho;
  j["max_witness_norm_sigma"] = rep.max_witness_norm_sigma;
  j["max_gain"] = rep.max_gain;
  j["detected_trials"] = rep.detected_trials;
  j["schmidt_rank_at_probe"] = rep.schmidt_rank_at_probe;
  j["probe_time"] = rep.probe_time;
  j["undetectable"] = rep.undetectable;
  write_output(o, dump(j));
  return 0;
}

int cmd_env_corr(const Opts& o) {
  require_format_json(o);
  const Tolerances tol = make_tolerances(o);
  if (o.input.empty()) throw std::invalid_argument("--input is required");
  corrwitness::io::OperatorFile file = corrwitness::io::load_operator(o.input);
  if (file.dims.has_value() &&
      !(*file.dims == SpaceDims{static_cast<Index>(o.d_s),
                                static_cast<Index>(o.d_b) * static_cast<Index>(o.d_c)}))
    throw std::invalid_argument(o.input + ": dims disagree with --d-s/--d-b/--d-c");
  const corrwitness::protocols::TripartiteState tri = corrwitness::protocols::TripartiteState::validated(
      std::move(file.matrix), static_cast<Index>(o.d_s), static_cast<Index>(o.d_b),
      static_cast<Index>(o.d_c), tol);

  corrwitness::witness::DetectionReport rep;
  if (o.unitary.empty()) {
    rep = corrwitness::protocols::detect_env_correlation(tri, tol);
  } else {
    corrwitness::io::OperatorFile uf = corrwitness::io::load_operator(o.unitary);
    const UnitaryOperator u = UnitaryOperator::validated(std::move(uf.matrix), tol);
    rep = corrwitness::protocols::detect_env_correlation(tri, u, tol);
  }
  json j;
  j["command"] = "env-corr";
  j["d_s"] = o.d_s;
  j["d_b"] = o.d_b;
  j["d_c"] = o.d_c;
  fill_report(j, rep,
              SpaceDims{static_cast<Index>(o.d_s),
                        static_cast<Index>(o.d_b) * static_cast<Index>(o.d_c)},
              o.tol_det);
  write_output(o, dump(j));
  return 0;
}

int cmd_tomography_demo(const Opts& o) {
  require_format_json(o);
  const Tolerances tol = make_tolerances(o);
  const DensityOperator rho = load_density(o.input, /*need_bipartite=*/true, tol);
  const SpaceDims dims = rho.bipartite();

  const Matrix r = corrwitness::witness::correlation_operator(rho).matrix();
  const bool correlated = r.cwiseAbs().maxCoeff() > tol.zero_scale;

  UnitaryOperator u = UnitaryOperator::unchecked(Matrix::Identity(dims.total(), dims.total()));
  std::string unitary_id;
  if (!o.unitary.empty()) {
    corrwitness::io::OperatorFile uf = corrwitness::io::load_operator(o.unitary);
    u = UnitaryOperator::validated(std::move(uf.matrix), tol);
    unitary_id = "supplied";
  } else if (correlated) {
    const corrwitness::witness::EigenSplit split = corrwitness::witness::split_spectrum(
        HermitianOperator::unchecked(r, dims), dims.d_env, tol);
    u = corrwitness::witness::witness_unitary(split);
    std::ostringstream os;
    os << "witness(n=" << split.n << ",m=" << split.m << ",r=" << split.r << ")";
    unitary_id = os.str();
  } else {
    u = corrwitness::random_unitary(dims.total(), o.seed);
    std::ostringstream os;
    os << "random(seed=" << o.seed << ")";
    unitary_id = os.str();
  }

  const corrwitness::tomography::TomographyRecord record =
      corrwitness::tomography::run_tomography(rho, u, tol);

  double max_basis_y = 0.0;
  for (double y : record.y_norms) max_basis_y = std::max(max_basis_y, y);

  const double query_y =
      corrwitness::tomography::correlation_residual_norm(record, rho.matrix(), tol);
  const Matrix rho_s = corrwitness::partial_trace_env(rho.matrix(), dims);
  const corrwitness::tomography::LinearPrediction pred =
      corrwitness::tomography::predict_linear(record, rho_s, tol);
  const Matrix truth = corrwitness::partial_trace_env(
      u.matrix() * rho.matrix() * u.matrix().adjoint(), dims);

  json j;
  j["command"] = "tomography-demo";
  j["dims"] = {dims.d_system, dims.d_env};
  j["basis_size"] = record.basis.states.size();
  j["unitary_id"] = unitary_id;
  j["input_correlated"] = correlated;
  j["max_basis_y_norm"] = max_basis_y;
  j["query_y_norm"] = query_y;
  j["linear"] = query_y <= o.tol_det;
  j["prediction_error"] = corrwitness::half_trace_norm(pred.matrix - truth, tol);
  j["prediction_min_eigenvalue"] = pred.min_eigenvalue;
  j["prediction_trace_error"] = pred.trace_error;
  j["prediction_positive"] = pred.positive;
  j["tol_det"] = o.tol_det;
  write_output(o, dump(j));
  return 0;
}

int cmd_validate(const Opts& o) {
  require_format_json(o);
  const Tolerances tol = make_tolerances(o);
  if (o.input.empty()) throw std::invalid_argument("--input is required");
  corrwitness::io::OperatorFile file = corrwitness::io::load_operator(o.input);
  json j;
  j["command"] = "validate";
  j["kind"] = o.kind;
  if (file.dims.has_value()) {
    j["dims"] = {file.dims->d_system, file.dims->d_env};
  } else {
    j["dims"] = {file.matrix.rows()};
  }
  if (o.kind == "density") {
    DensityOperator::validated(std::move(file.matrix), file.dims, tol);
  } else if (o.kind == "hermitian") {
    HermitianOperator::validated(std::move(file.matrix), file.dims, tol);
  } else if (o.kind == "unitary") {
    UnitaryOperator::validated(std::move(file.matrix), tol);
  } else {
    throw std::invalid_argument("--kind must be density, hermitian, or unitary");
  }
  j["valid"] = true;
  write_output(o, dump(j));
  return 0;
}

void print_error(int code, const std::string& message) {
  json j;
  j["error"]["code"] = code;
  j["error"]["message"] = message;
  std::cerr << j.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"corrwitness — witness unitaries for initial system-environment correlations"};
  app.require_subcommand(1);
  app.footer("Environment: CORRWITNESS_THREADS caps worker threads.");

  Opts o;
  Bindings bindings;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "JSON config file; explicit flags win");
    bindings.add_string("out", sub->add_option("--out", o.out, "output file (default: stdout)"),
                        &o.out);
    bindings.add_double(
        "tol_det",
        sub->add_option("--tol-det", o.tol_det, "detection threshold on witness norms"),
        &o.tol_det);
    bindings.add_string(
        "format",
        sub->add_option("--format", o.format, "output format: json or csv (sweep only)")
            ->check(CLI::IsMember({"json", "csv"})),
        &o.format);
  };
  auto add_input = [&](CLI::App* sub) {
    bindings.add_string("input", sub->add_option("--input", o.input, "operator JSON file"),
                        &o.input);
  };
  auto add_grid = [&](CLI::App* sub) {
    bindings.add_double("t_max", sub->add_option("--t-max", o.t_max, "largest time on the grid"),
                        &o.t_max);
    bindings.add_int("steps", sub->add_option("--steps", o.steps, "number of grid intervals"),
                     &o.steps);
  };
  auto add_seed = [&](CLI::App* sub) {
    bindings.add_uint("seed", sub->add_option("--seed", o.seed, "random seed"), &o.seed);
  };

  CLI::App* witness = app.add_subcommand(
      "witness", "build the witness unitary for a correlated bipartite state");
  add_common(witness);
  add_input(witness);

  CLI::App* saturate =
      app.add_subcommand("saturate", "optimal unitary distinguishing two equal-dimension states");
  add_common(saturate);
  add_input(saturate);
  bindings.add_string("sigma",
                      saturate->add_option("--sigma", o.sigma, "second state JSON file"),
                      &o.sigma);

  CLI::App* sweep = app.add_subcommand(
      "sweep", "witness norms and trace distances along e^{-iHt} for a time grid");
  add_common(sweep);
  add_input(sweep);
  bindings.add_string("sigma",
                      sweep->add_option("--sigma", o.sigma,
                                        "comparison state (default: product of marginals)"),
                      &o.sigma);
  bindings.add_string(
      "hamiltonian", sweep->add_option("--hamiltonian", o.hamiltonian, "Hermitian JSON file"),
      &o.hamiltonian);
  add_grid(sweep);

  CLI::App* chain = app.add_subcommand(
      "chain-demo", "undetectable-family suite on the nearest-neighbour ZZ chain");
  add_common(chain);
  add_grid(chain);
  add_seed(chain);
  bindings.add_int("n_spins", chain->add_option("--n-spins", o.n_spins, "chain length (2..12)"),
                   &o.n_spins);
  bindings.add_int(
      "split_spin",
      chain->add_option("--split-spin", o.split_spin,
                        "spin carrying the product factor; system = spins left of it"),
      &o.split_spin);
  bindings.add_int("trials", chain->add_option("--trials", o.trials, "random family members"),
                   &o.trials);
  bindings.add_string(
      "control",
      chain->add_option("--control", o.control, "none, bloch-z, or z-correlated")
          ->check(CLI::IsMember({"none", "bloch-z", "z-correlated"})),
      &o.control);

  CLI::App* env = app.add_subcommand(
      "env-corr", "witness correlations between two environment parts of rho_SBC");
  add_common(env);
  add_input(env);
  bindings.add_int("d_s", env->add_option("--d-s", o.d_s, "system dimension"), &o.d_s);
  bindings.add_int("d_b", env->add_option("--d-b", o.d_b, "first environment part dimension"),
                   &o.d_b);
  bindings.add_int("d_c", env->add_option("--d-c", o.d_c, "second environment part dimension"),
                   &o.d_c);
  bindings.add_string("unitary",
                      env->add_option("--unitary", o.unitary, "evolution unitary JSON file"),
                      &o.unitary);

  CLI::App* tomo = app.add_subcommand(
      "tomography-demo", "linear process tomography and its failure on correlated inputs");
  add_common(tomo);
  add_input(tomo);
  add_seed(tomo);
  bindings.add_string("unitary",
                      tomo->add_option("--unitary", o.unitary, "evolution unitary JSON file"),
                      &o.unitary);

  CLI::App* validate =
      app.add_subcommand("validate", "check an operator file against its invariants");
  add_common(validate);
  add_input(validate);
  bindings.add_string(
      "kind",
      validate->add_option("--kind", o.kind, "density, hermitian, or unitary")
          ->check(CLI::IsMember({"density", "hermitian", "unitary"})),
      &o.kind);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error(2, e.what());
    return 2;
  }

  try {
    if (!o.config.empty()) bindings.apply(o.config);
    if (witness->parsed()) return cmd_witness(o);
    if (saturate->parsed()) return cmd_saturate(o);
    if (sweep->parsed()) return cmd_sweep(o);
    if (chain->parsed()) return cmd_chain_demo(o);
    if (env->parsed()) return cmd_env_corr(o);
    if (tomo->parsed()) return cmd_tomography_demo(o);
    if (validate->parsed()) return cmd_validate(o);
    print_error(2, "no subcommand selected");
    return 2;
  } catch (const domain_refusal& e) {
    print_error(3, e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    print_error(2, e.what());
    return 2;
  } catch (const std::exception& e) {
    print_error(4, e.what());
    return 4;
  }
}
