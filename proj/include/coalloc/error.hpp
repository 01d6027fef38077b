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

#ifndef COALLOC_ERROR_HPP
#define COALLOC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace coalloc {

enum class errc {
  invalid_argument,
  precondition_failed,
  parse_error,
  internal,
};

/// Library errors carry a coarse code so the C boundary can translate them
/// without string matching.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace coalloc

#endif  // COALLOC_ERROR_HPP
