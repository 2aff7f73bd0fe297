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

#include "core/textio.hpp"

#include <charconv>
#include <system_error>

#include "core/common.hpp"

namespace qstbc {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view token) {
  double v = 0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  require(res.ec == std::errc{} && res.ptr == token.data() + token.size(),
          ErrorCode::parse, "malformed number: '", std::string(token), "'");
  return v;
}

long long parse_int(std::string_view token) {
  long long v = 0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  require(res.ec == std::errc{} && res.ptr == token.data() + token.size(),
          ErrorCode::parse, "malformed integer: '", std::string(token), "'");
  return v;
}

}  // namespace qstbc
