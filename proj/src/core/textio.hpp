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

#ifndef QSTBC_CORE_TEXTIO_HPP
#define QSTBC_CORE_TEXTIO_HPP

#include <string>
#include <string_view>

namespace qstbc {

// Shortest decimal representation that round-trips the exact double.
std::string format_double(double v);

// Strict parse of a whole token; throws Error{parse} on anything else.
double parse_double(std::string_view token);
long long parse_int(std::string_view token);

}  // namespace qstbc

#endif  // QSTBC_CORE_TEXTIO_HPP
