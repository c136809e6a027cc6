// Copyright 2026 The dpadmm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DPADMM_ERROR_HPP_
#define DPADMM_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace dpadmm {

enum class ErrorCode {
  kDisconnectedGraph,
  kSelfLoop,
  kUnknownNode,
  kIterOutOfRange,
  kInfeasibleDegree,
  kParseError,
  kSchemaError,
  kEmptyInput,
  kTooFewSamples,
  kDimensionMismatch,
  kEmptyDataset,
  kSolverDidNotConverge,
  kInvalidAlpha,
  kInvalidZeta,
  kNotNeighbors,
  kDegenerateFit,
  kAlphaOutOfDomain,
  kInfeasibleConstraint,
  kMissingClass,
  kMissingNode,
  kConfigError,
  kIoError,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace dpadmm

#endif  // DPADMM_ERROR_HPP_
