// Copyright 2026 The imlca Authors
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

#include <stdexcept>
#include <string>

namespace imlca {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A value was requested for a bundle the backing report set does not contain.
class UnsupportedBundleError : public Error {
 public:
  using Error::Error;
};

// Efficiency or relative revenue against a zero-welfare instance.
class DegenerateInstanceError : public Error {
 public:
  using Error::Error;
};

// A refinement tried to widen an interval or broke 0 <= lower <= upper.
class RefinementViolationError : public Error {
 public:
  using Error::Error;
};

class FrozenBidderError : public Error {
 public:
  using Error::Error;
};

class DuplicateQueryError : public Error {
 public:
  using Error::Error;
};

// Bundle space too small for the requested number of distinct queries, or
// a bidder has already reported every bundle.
class BundleSpaceError : public Error {
 public:
  using Error::Error;
};

class InvalidSpecError : public Error {
 public:
  using Error::Error;
};

// Instance beyond the exact-enumeration guard.
class TooLargeError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace imlca
