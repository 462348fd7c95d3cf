// Copyright 2026 The gsdof Authors. All Rights Reserved.
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

#ifndef GSDOF_COMMON_HPP_
#define GSDOF_COMMON_HPP_

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <locale>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gsdof {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using CRow = Eigen::RowVectorXcd;
using Row2 = Eigen::Matrix<cplx, 1, 2>;
using Vec2 = Eigen::Matrix<cplx, 2, 1>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// start:stop:step, inclusive of stop when it lands on the grid.
inline std::vector<double> parse_range(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw Error("bad number");
    } catch (const std::exception&) {
      throw Error("range '" + text + "' is not start:stop:step");
    }
  }
  if (parts.size() != 3) throw Error("range '" + text + "' is not start:stop:step");
  const double a = parts[0], b = parts[1], s = parts[2];
  if (!(s > 0.0) || b < a) throw Error("range '" + text + "' must have step > 0 and stop >= start");
  std::vector<double> out;
  const long n = static_cast<long>(std::floor((b - a) / s + 1e-9));
  for (long k = 0; k <= n; ++k) {
    double v = a + static_cast<double>(k) * s;
    // Snap to a short decimal so 0.05*k prints as 0.35, not 0.35000000000000003.
    v = std::round(v * 1e9) / 1e9;
    out.push_back(v);
  }
  return out;
}

// SplitMix64; used only to derive independent per-trial seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Shortest round-trip text for a double; keeps CSVs byte-stable.
inline std::string fmt_num(double v) {
  if (v == 0.0) return "0";
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace gsdof

#endif  // GSDOF_COMMON_HPP_
