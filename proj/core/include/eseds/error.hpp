// Copyright 2026 The ESEDS Authors.
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

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace eseds {

/// Error categories shared by every module. The numeric values travel on the
/// wire inside ERROR frames, so they must stay stable.
enum class ErrorCode : std::uint16_t {
  kInvalidArgument = 1,
  kOutOfDomain = 2,
  kOutOfRange = 3,
  kAuthentication = 4,
  kWrongMode = 5,
  kCollision = 6,
  kCapacity = 7,
  kFormat = 8,
  kProtocol = 9,
  kTransport = 10,
  kEmptyStore = 11,
  kInapplicable = 12,
  kInternal = 13,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by DecoupledStore::insert_between when neighbouring sparse indices
/// leave no room for a midpoint.
class CollisionError : public Error {
 public:
  explicit CollisionError(const std::string& what)
      : Error(ErrorCode::kCollision, what) {}
};

}  // namespace eseds
