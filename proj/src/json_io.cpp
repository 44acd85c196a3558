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

#include "corrwitness/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace corrwitness::io {

namespace {

using nlohmann::json;

// Reads one real dim x dim block ("re" or "im") into out.
void read_block(const json& j, const char* key, Index dim, Eigen::MatrixXd& out) {
  const json& block = j.at(key);
  if (!block.is_array() || static_cast<Index>(block.size()) != dim) {
    throw std::invalid_argument(std::string("operator file: \"") + key + "\" must be a " +
                                std::to_string(dim) + "-row array");
  }
  out.resize(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    const json& row = block[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != dim) {
      throw std::invalid_argument(std::string("operator file: \"") + key + "\" row " +
                                  std::to_string(i) + " must have " + std::to_string(dim) +
                                  " entries");
    }
    for (Index k = 0; k < dim; ++k) {
      const json& cell = row[static_cast<std::size_t>(k)];
      if (!cell.is_number()) {
        throw std::invalid_argument(std::string("operator file: \"") + key +
                                    "\" entries must be numbers");
      }
      out(i, k) = cell.get<double>();
    }
  }
}

}  // namespace

OperatorFile parse_operator(const json& j) {
  if (!j.is_object()) {
    throw std::invalid_argument("operator file: top level must be a JSON object");
  }
  for (const auto& item : j.items()) {
    const std::string& key = item.key();
    if (key != "dims" && key != "re" && key != "im") {
      throw std::invalid_argument("operator file: unknown key \"" + key + "\"");
    }
  }
  if (!j.contains("dims") || !j.contains("re")) {
    throw std::invalid_argument("operator file: \"dims\" and \"re\" are required");
  }

  const json& jdims = j.at("dims");
  if (!jdims.is_array() || jdims.empty() || jdims.size() > 2) {
    throw std::invalid_argument("operator file: \"dims\" must be [d] or [d_system, d_env]");
  }
  Index factors[2] = {0, 0};
  for (std::size_t i = 0; i < jdims.size(); ++i) {
    if (!jdims[i].is_number_integer() || jdims[i].get<long long>() <= 0) {
      throw std::invalid_argument("operator file: \"dims\" entries must be positive integers");
    }
    factors[i] = static_cast<Index>(jdims[i].get<long long>());
  }

  OperatorFile file;
  Index dim = factors[0];
  if (jdims.size() == 2) {
    file.dims = SpaceDims{factors[0], factors[1]};
    dim = file.dims->total();
  }

  Eigen::MatrixXd re;
  read_block(j, "re", dim, re);
  Eigen::MatrixXd im = Eigen::MatrixXd::Zero(dim, dim);
  if (j.contains("im")) {
    read_block(j, "im", dim, im);
  }
  file.matrix = re.cast<Complex>() + Complex(0.0, 1.0) * im.cast<Complex>();
  return file;
}

OperatorFile load_operator(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open operator file: " + path);
  }
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("operator file " + path + ": " + e.what());
  }
  return parse_operator(j);
}

nlohmann::json operator_to_json(const Matrix& m, const std::optional<SpaceDims>& dims) {
  json j;
  if (dims.has_value()) {
    j["dims"] = {dims->d_system, dims->d_env};
  } else {
    j["dims"] = {m.rows()};
  }
  json re = json::array();
  json im = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json re_row = json::array();
    json im_row = json::array();
    for (Index k = 0; k < m.cols(); ++k) {
      re_row.push_back(m(i, k).real());
      im_row.push_back(m(i, k).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.16e", x);
  return buf;
}

}  // namespace corrwitness::io
