// Copyright 2026 The coalloc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COALLOC_IO_HPP
#define COALLOC_IO_HPP

#include <string>

#include "coalloc/decomposition.hpp"

namespace coalloc::io {

/// Decimal with 17 significant digits, enough to round-trip any double.
/// Negative zero is normalized to "0".
std::string format_double(double x);

// JSON documents. Writers emit one canonical compact line with a fixed key
// order, so writing what was just parsed is byte-identical for canonical
// input. Parsers also accept the document nested inside a result object
// (under "game", "allocation" or "certificate"), which lets command outputs
// feed straight back into other commands.
//
//   game          {"n":3,"values":[...2^n numbers...]}
//                 optional "labels": coalition names giving the position of
//                 every value; normalized to bitmask order on load
//   allocation    {"n":3,"rows":[[...2^n...],...n rows...]}
//   certificate   {"n":3,"terms":[{"perm":[1,2,3],"weight":0.5},...]}

game parse_game(const std::string& text);
std::string write_game(const game& g);

allocation_matrix parse_allocation(const std::string& text);
std::string write_allocation(const allocation_matrix& a);

decomposition parse_decomposition(const std::string& text);
std::string write_decomposition(const decomposition& d);

}  // namespace coalloc::io

#endif  // COALLOC_IO_HPP
