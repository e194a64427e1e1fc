// include/snacs/alignment.hpp

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

#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "snacs/corpus.hpp"

namespace snacs {

/// A pair of sentence-aligned sentences. Sentence ids carry a language
/// prefix ("en_lpp_1943.2", "zh_lpp_1943.2"); the unit id drops it.
struct BitextUnit {
  std::string unit_id;
  std::string en_sentence_id;
  std::string zh_sentence_id;
  friend bool operator==(const BitextUnit&, const BitextUnit&) = default;
};

// "zh_lpp_1943.2" -> "lpp_1943.2"; ids without a known prefix pass through.
std::string unit_id_of(std::string_view sentence_id);

/// Units whose id occurs in both documents, in Chinese document order.
std::vector<BitextUnit> derive_units(const AnnotatedDocument& en, const AnnotatedDocument& zh);

enum class AlignmentSource { kManual, kHeuristic };
std::string_view to_string(AlignmentSource s);

/// Several Chinese targets (a coverb and its localizer) may pair with the
/// same English target.
struct AlignmentPair {
  std::string unit_id;
  TargetAnnotation en_target;
  TargetAnnotation zh_target;
  AlignmentSource source = AlignmentSource::kManual;
  std::string evidence;
};

/// Lines `unit_id  en_annotator  en_group  zh_annotator  zh_group`. Throws
/// kUnknownUnit or kDanglingTarget with the offending line number.
std::vector<AlignmentPair> load_manual_alignments(std::istream& in, const AnnotatedDocument& en,
                                                  const AnnotatedDocument& zh);

/// 1-based (en token, zh token) links per unit.
using WordAlignments = std::map<std::string, std::set<std::pair<int, int>>>;

/// Lines `unit_id <TAB> e-z e-z ...`, indices matching the TSV token column.
WordAlignments load_word_alignments(std::istream& in);

/// Head of the NP governed by an adposition target, inferred from POS tags.
/// Chinese coverbs look rightward up to their localizer (or the next
/// verb/coverb/punctuation), localizers leftward back to the preceding
/// coverb or clause punctuation; English prepositions look rightward up to the next
/// preposition, verb or punctuation. The head is the last nominal token of
/// that region, else its last token; nullopt for an empty region.
std::optional<int> governed_head(const Sentence& sentence, const TargetAnnotation& target,
                                 Language language);

/// Tokens standing for the governed NP: the annotated NP span when present,
/// otherwise the inferred head.
std::vector<int> governed_tokens(const Sentence& sentence, const TargetAnnotation& target,
                                 Language language);

struct AlignOptions {
  // Annotator layer per side; unset picks the first annotator id in sort order.
  std::optional<std::string> en_annotator;
  std::optional<std::string> zh_annotator;
};

/// Proposes (en, zh) target pairs whose governed NPs are connected by at
/// least one word-alignment link. No pair is proposed twice. Throws
/// kMissingAlignments when no word alignments are supplied.
std::vector<AlignmentPair> heuristic_align(const AnnotatedDocument& en, const AnnotatedDocument& zh,
                                           const std::vector<BitextUnit>& units,
                                           const WordAlignments* links,
                                           const AlignOptions& options = {});

struct MatchReport {
  // Pair counting: every pair once.
  std::size_t n_pairs = 0;  // pairs with construals on both sides
  std::size_t n_special_excluded = 0;
  std::size_t scene_matches = 0;
  std::size_t function_matches = 0;
  std::optional<double> scene_match_rate;
  std::optional<double> function_match_rate;

  // English-target counting: pairs sharing an English target count once and
  // match when any of their Chinese targets matches.
  std::size_t n_en_targets = 0;
  std::size_t en_scene_matches = 0;
  std::size_t en_function_matches = 0;
  std::optional<double> en_scene_match_rate;
  std::optional<double> en_function_match_rate;
};

MatchReport match_rates(const std::vector<AlignmentPair>& pairs);

}  // namespace snacs
