// include/snacs/targets.hpp

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

#include <filesystem>
#include <istream>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "snacs/corpus.hpp"

namespace snacs {

/// Surface forms of coverbs and localizers. The sets may overlap; the POS
/// tag decides which role a token plays.
struct Lexicons {
  std::set<std::string> coverbs;
  std::set<std::string> localizers;

  /// Forms attested in the annotated examples, in pinyin and in characters.
  static Lexicons defaults();
  /// `[coverbs]` / `[localizers]` sections, one form per line, `#` comments.
  static Lexicons load(std::istream& in);
  static Lexicons load_file(const std::filesystem::path& path);
};

namespace rationale {
inline constexpr const char* kLocalizerLexicon = "lc-lexicon";
inline constexpr const char* kLocalizerPosOnly = "lc-pos-only";
inline constexpr const char* kPreverbalCoverb = "p-lexicon-preverbal";
}  // namespace rationale

struct TargetCandidate {
  std::string sentence_id;
  std::vector<int> token_indices;
  TargetKind kind = TargetKind::kCoverb;  // kCoverb or kLocalizer
  std::string rationale;

  friend bool operator==(const TargetCandidate&, const TargetCandidate&) = default;
};

// A verbal tag is any tag beginning with 'V' (VV, VA, VC, VE; VB* in PTB).
bool is_verbal_tag(std::string_view pos);

/// True iff a V*-tagged token occurs after `index` in the sentence. The
/// sentence stands in for the clause; there is no clause segmentation.
bool is_preverbal(std::span<const Token> tokens, int index);

/// Localizers: every LC token (flagged lc-pos-only when the form is not in
/// the lexicon). Coverbs: P tokens whose form is in the lexicon and that
/// precede a verb. A coverb and its localizer stay separate candidates.
/// Ordered by token index.
std::vector<TargetCandidate> identify_targets(const Sentence& sentence, const Lexicons& lex);
std::vector<TargetCandidate> identify_targets(const AnnotatedDocument& doc, const Lexicons& lex);

struct TargetSpan {
  std::string sentence_id;
  std::vector<int> token_indices;
  friend auto operator<=>(const TargetSpan&, const TargetSpan&) = default;
};

struct TargetDiff {
  std::size_t gold_count = 0;
  std::size_t predicted_count = 0;
  std::size_t true_positives = 0;
  double precision = 1.0;
  double recall = 1.0;
  double f1 = 1.0;
  std::vector<TargetSpan> missing;   // in gold only
  std::vector<TargetSpan> spurious;  // predicted only
};

/// Span-exact comparison; duplicate spans count once. With nothing on
/// either side precision and recall are 1.0.
TargetDiff diff_targets(std::span<const TargetAnnotation> gold,
                        std::span<const TargetCandidate> predicted);

}  // namespace snacs
