// Copyright 2026 The Authors.
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

#ifndef OCRS_ERRORS_H_
#define OCRS_ERRORS_H_

#include <stdexcept>
#include <string>

namespace ocrs {

// Raised when an internal guarantee is broken: an oracle that disagrees with
// a matroid axiom, a scheme that outputs a dependent set, and so on. Callers
// should treat it as fatal for the whole experiment.
class ContractViolation : public std::logic_error {
 public:
  explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

// An exact routine was asked to work on an instance larger than it can
// enumerate.
class UnsupportedSize : public std::runtime_error {
 public:
  explicit UnsupportedSize(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace ocrs

#endif  // OCRS_ERRORS_H_
