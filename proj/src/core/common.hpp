// Copyright 2026 The qstbc authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QSTBC_CORE_COMMON_HPP
#define QSTBC_CORE_COMMON_HPP

#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qstbc {

using cxd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Error categories; they map one-to-one onto the C API status codes.
enum class ErrorCode {
  invalid_argument = 1,
  invalid_config = 2,
  parse = 3,
  io = 4,
  verify_failed = 5,
  internal = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

template <typename... Args>
[[noreturn]] inline void fail(ErrorCode code, Args&&... args) {
  std::ostringstream os;
  (os << ... << args);
  throw Error(code, os.str());
}

template <typename... Args>
inline void require(bool cond, ErrorCode code, Args&&... args) {
  if (!cond) fail(code, std::forward<Args>(args)...);
}

}  // namespace qstbc

#endif  // QSTBC_CORE_COMMON_HPP
