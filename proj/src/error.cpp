// src/error.cpp

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

#include "snacs/error.hpp"

namespace snacs {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo: return "io";
    case ErrorCode::kMissingVersion: return "missing-version";
    case ErrorCode::kBadColumnCount: return "bad-column-count";
    case ErrorCode::kBadField: return "bad-field";
    case ErrorCode::kDuplicateLabel: return "duplicate-label";
    case ErrorCode::kUnknownParent: return "unknown-parent";
    case ErrorCode::kCycle: return "cycle";
    case ErrorCode::kSubhierarchyMismatch: return "subhierarchy-mismatch";
    case ErrorCode::kRootCount: return "root-count";
    case ErrorCode::kNodeCount: return "node-count";
    case ErrorCode::kUnknownSupersense: return "unknown-supersense";
    case ErrorCode::kUnknownSpecial: return "unknown-special";
    case ErrorCode::kDanglingGroup: return "dangling-group";
    case ErrorCode::kOverlap: return "overlap";
    case ErrorCode::kNonContiguousIndex: return "non-contiguous-index";
    case ErrorCode::kInconsistentToken: return "inconsistent-token";
    case ErrorCode::kDuplicateSentence: return "duplicate-sentence";
    case ErrorCode::kDuplicateGroup: return "duplicate-group";
    case ErrorCode::kUnknownSentence: return "unknown-sentence";
    case ErrorCode::kBadSpan: return "bad-span";
    case ErrorCode::kKindPosMismatch: return "kind-pos-mismatch";
    case ErrorCode::kUnknownUnit: return "unknown-unit";
    case ErrorCode::kDanglingTarget: return "dangling-target";
    case ErrorCode::kMissingAlignments: return "missing-alignments";
    case ErrorCode::kTooFewAnnotators: return "too-few-annotators";
    case ErrorCode::kEmptyItems: return "empty-items";
  }
  return "unknown";
}

Error::Error(ErrorCode code, std::string message, std::size_t line)
    : std::runtime_error(std::move(message)), code_(code), line_(line) {}

}  // namespace snacs
