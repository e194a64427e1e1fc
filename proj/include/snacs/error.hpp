// include/snacs/error.hpp

// Copyright 2026 The snacs-zh Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace snacs {

enum class ErrorCode {
  kIo,
  kMissingVersion,
  kBadColumnCount,
  kBadField,
  kDuplicateLabel,
  kUnknownParent,
  kCycle,
  kSubhierarchyMismatch,
  kRootCount,
  kNodeCount,
  kUnknownSupersense,
  kUnknownSpecial,
  kDanglingGroup,
  kOverlap,
  kNonContiguousIndex,
  kInconsistentToken,
  kDuplicateSentence,
  kDuplicateGroup,
  kUnknownSentence,
  kBadSpan,
  kKindPosMismatch,
  kUnknownUnit,
  kDanglingTarget,
  kMissingAlignments,
  kTooFewAnnotators,
  kEmptyItems,
};

// Short kebab-case code, used in `file:line: code: message` listings.
std::string_view to_string(ErrorCode code);

// All recoverable library failures. `line` is 1-based, 0 when the error is
// not tied to an input line.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, std::size_t line = 0);

  ErrorCode code() const { return code_; }
  std::size_t line() const { return line_; }

 private:
  ErrorCode code_;
  std::size_t line_;
};

}  // namespace snacs
