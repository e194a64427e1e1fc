// include/snacs/agreement.hpp

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

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "snacs/corpus.hpp"

namespace snacs {

// Which part of a label two annotators are compared on. kConstrual compares
// the (scene, function) pair as one category. Special labels are ordinary
// categories under every projection.
enum class Projection { kSceneRole, kFunction, kConstrual };

inline constexpr Projection kProjections[] = {Projection::kSceneRole, Projection::kFunction,
                                              Projection::kConstrual};

std::string_view to_string(Projection p);  // "scene", "function", "construal"
std::optional<Projection> parse_projection(std::string_view s);
std::string project(const Label& label, Projection p);

struct AgreementItem {
  std::string sentence_id;
  std::vector<int> token_indices;
  std::map<std::string, Label> labels;  // annotator -> label
};

struct ComparableItems {
  std::vector<std::string> annotators;
  std::vector<AgreementItem> items;
  std::size_t excluded = 0;  // spans not marked identically by every annotator
};

/// Target spans that every listed annotator marked with identical token
/// indices. Throws kTooFewAnnotators with fewer than two annotators.
ComparableItems comparable_items(const AnnotatedDocument& doc,
                                 std::span<const std::string> annotators);

/// Cohen's kappa of two parallel label sequences: (p_o - p_e) / (1 - p_e),
/// with p_e from the two marginal distributions. 1.0 when both annotators
/// use one and the same label throughout. Throws kEmptyItems on empty input.
double cohen_kappa(std::span<const std::string> a, std::span<const std::string> b);

double cohen_kappa(const ComparableItems& items, std::string_view annotator_a,
                   std::string_view annotator_b, Projection p);

/// Mean over annotator pairs of the exact-match fraction.
double raw_agreement(const ComparableItems& items, Projection p);

/// Fraction of items on which all annotators agree.
double all_agree_fraction(const ComparableItems& items, Projection p);

double average_pairwise_kappa(const ComparableItems& items, Projection p);

struct AgreementReport {
  Projection projection = Projection::kSceneRole;
  std::size_t n_items = 0;
  std::size_t excluded_items = 0;
  double raw = 0.0;            // mean pairwise
  double raw_all_agree = 0.0;  // every annotator identical
  std::map<std::pair<std::string, std::string>, double> kappa_pairwise;
  double kappa_mean = 0.0;
};

AgreementReport agreement_report(const ComparableItems& items, Projection p);

}  // namespace snacs
