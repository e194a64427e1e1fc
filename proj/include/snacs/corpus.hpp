// include/snacs/corpus.hpp

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
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "snacs/error.hpp"
#include "snacs/hierarchy.hpp"

namespace snacs {

enum class Language { kZh, kEn };
enum class TargetKind { kCoverb, kLocalizer, kOther };

std::string_view to_string(Language lang);
std::string_view to_string(TargetKind kind);  // COVERB, LOCALIZER, OTHER
std::optional<Language> parse_language(std::string_view s);
std::optional<TargetKind> parse_target_kind(std::string_view s);

struct Token {
  int index = 0;  // 1-based
  std::string form;
  std::string pos;  // CTB tag for zh, PTB tag for en

  friend bool operator==(const Token&, const Token&) = default;
};

struct Sentence {
  std::string id;
  std::vector<Token> tokens;

  const Token* token(int index) const;
  friend bool operator==(const Sentence&, const Sentence&) = default;
};

/// Scene role and function, both canonical hierarchy labels.
struct Construal {
  std::string scene;
  std::string function;

  bool is_identity() const { return scene == function; }
  friend auto operator<=>(const Construal&, const Construal&) = default;
};

/// A non-construal annotation such as DISCOURSE.
struct SpecialLabel {
  std::string name;
  friend auto operator<=>(const SpecialLabel&, const SpecialLabel&) = default;
};

using Label = std::variant<Construal, SpecialLabel>;

inline bool is_special(const Label& l) { return std::holds_alternative<SpecialLabel>(l); }
inline const Construal* as_construal(const Label& l) { return std::get_if<Construal>(&l); }
// Scene label, or the special label's name.
const std::string& scene_value(const Label& l);
// Function label, or the special label's name.
const std::string& function_value(const Label& l);
// "Topic⇝Locus" or "DISCOURSE".
std::string display(const Label& l);

/// Inclusive token range of the NP governed by a target.
struct TokenSpan {
  int first = 0;
  int last = 0;

  bool contains(int i) const { return i >= first && i <= last; }
  friend auto operator<=>(const TokenSpan&, const TokenSpan&) = default;
};

struct TargetAnnotation {
  std::string sentence_id;
  std::vector<int> token_indices;  // strictly increasing, gaps allowed
  TargetKind kind = TargetKind::kOther;
  Label label;
  std::string annotator;
  int group = 0;                   // serialized as "T<group>"
  std::optional<TokenSpan> np_span;

  friend bool operator==(const TargetAnnotation&, const TargetAnnotation&) = default;
};

struct AnnotatedDocument {
  std::string doc_id;
  Language language = Language::kZh;
  std::vector<Sentence> sentences;
  std::vector<TargetAnnotation> annotations;

  const Sentence* sentence(std::string_view id) const;
  // Sorted, distinct annotator ids.
  std::vector<std::string> annotators() const;
  // One annotator's targets in canonical order.
  std::vector<TargetAnnotation> layer(std::string_view annotator) const;
  // Surface string of a target: token forms joined by single spaces.
  std::string target_form(const TargetAnnotation& t) const;

  // Structural equality; annotation list order is not significant.
  friend bool operator==(const AnnotatedDocument& a, const AnnotatedDocument& b);
};

// Sorts annotations by sentence position, annotator, then token indices.
void canonicalize(AnnotatedDocument& doc);

struct CorpusOptions {
  // Closed set of accepted special labels (matched case-insensitively).
  std::set<std::string> special_labels = {"DISCOURSE"};
};

/// Line numbers recorded while parsing, for located diagnostics.
struct SourceMap {
  // (sentence_id, annotator, group) -> line of the group's first token line
  std::map<std::tuple<std::string, std::string, int>, std::size_t> target_lines;
  // (sentence_id, token index) -> first line of that token
  std::map<std::pair<std::string, int>, std::size_t> token_lines;
  std::map<std::string, std::size_t> sentence_lines;

  std::size_t line_for(std::string_view sentence_id, int token_index,
                       std::string_view annotator) const;
};

/// Reads the annotation TSV. Throws snacs::Error carrying the 1-based line
/// on malformed input: bad column counts or fields, non-contiguous indices,
/// unknown supersenses or specials, groups without a label line, one
/// annotator on the same token twice.
AnnotatedDocument parse_document(std::istream& in, const Hierarchy& h,
                                 const CorpusOptions& options = {},
                                 SourceMap* source_map = nullptr);

/// Canonical serialization; parse_document(write_document(d)) == d.
void write_document(std::ostream& out, const AnnotatedDocument& doc);
std::string write_document(const AnnotatedDocument& doc);

struct Violation {
  ErrorCode code;
  std::string sentence_id;
  int token_index = 0;  // 0 when not token-specific
  std::string annotator;
  std::string message;

  friend auto operator<=>(const Violation&, const Violation&) = default;
};

/// Every invariant of the data model plus the target criteria: coverb
/// tokens must be tagged P and localizer tokens LC. Empty means valid.
/// The result is sorted, so it does not depend on annotation order.
std::vector<Violation> validate_document(const AnnotatedDocument& doc, const Hierarchy& h,
                                         const CorpusOptions& options = {});

}  // namespace snacs
