// src/targets.cpp

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

#include "snacs/targets.hpp"

#include <algorithm>
#include <fstream>

#include "snacs/error.hpp"
#include "text_util.hpp"

namespace snacs {

Lexicons Lexicons::defaults() {
  Lexicons lex;
  lex.coverbs = {"zài", "duì", "在", "对"};
  lex.localizers = {"shàng", "zhōng", "lǐmiàn", "láishuō", "上", "中", "里面", "来说"};
  return lex;
}

Lexicons Lexicons::load(std::istream& in) {
  Lexicons lex;
  std::set<std::string>* section = nullptr;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    detail::strip_cr(line);
    const std::string_view text = detail::trim(line);
    if (text.empty() || text.front() == '#') continue;
    if (text == "[coverbs]") {
      section = &lex.coverbs;
    } else if (text == "[localizers]") {
      section = &lex.localizers;
    } else if (text.front() == '[') {
      throw Error(ErrorCode::kBadField, "unknown lexicon section " + std::string(text), line_no);
    } else if (section == nullptr) {
      throw Error(ErrorCode::kBadField, "form outside a [coverbs]/[localizers] section", line_no);
    } else {
      section->insert(std::string(text));
    }
  }
  if (lex.coverbs.empty() || lex.localizers.empty()) {
    throw Error(ErrorCode::kBadField, "lexicon needs non-empty [coverbs] and [localizers] sections");
  }
  return lex;
}

Lexicons Lexicons::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return load(in);
}

bool is_verbal_tag(std::string_view pos) { return !pos.empty() && pos.front() == 'V'; }

bool is_preverbal(std::span<const Token> tokens, int index) {
  return std::any_of(tokens.begin(), tokens.end(), [index](const Token& t) {
    return t.index > index && is_verbal_tag(t.pos);
  });
}

std::vector<TargetCandidate> identify_targets(const Sentence& sentence, const Lexicons& lex) {
  std::vector<TargetCandidate> out;
  for (const Token& tok : sentence.tokens) {
    if (tok.pos == "LC") {
      out.push_back({sentence.id, {tok.index}, TargetKind::kLocalizer,
                     lex.localizers.count(tok.form) != 0 ? rationale::kLocalizerLexicon
                                                         : rationale::kLocalizerPosOnly});
    } else if (tok.pos == "P" && lex.coverbs.count(tok.form) != 0 &&
               is_preverbal(sentence.tokens, tok.index)) {
      out.push_back({sentence.id, {tok.index}, TargetKind::kCoverb, rationale::kPreverbalCoverb});
    }
  }
  return out;
}

std::vector<TargetCandidate> identify_targets(const AnnotatedDocument& doc, const Lexicons& lex) {
  std::vector<TargetCandidate> out;
  for (const Sentence& s : doc.sentences) {
    auto part = identify_targets(s, lex);
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

TargetDiff diff_targets(std::span<const TargetAnnotation> gold,
                        std::span<const TargetCandidate> predicted) {
  std::set<TargetSpan> g, p;
  for (const TargetAnnotation& t : gold) g.insert({t.sentence_id, t.token_indices});
  for (const TargetCandidate& c : predicted) p.insert({c.sentence_id, c.token_indices});

  TargetDiff d;
  d.gold_count = g.size();
  d.predicted_count = p.size();
  std::set_difference(g.begin(), g.end(), p.begin(), p.end(), std::back_inserter(d.missing));
  std::set_difference(p.begin(), p.end(), g.begin(), g.end(), std::back_inserter(d.spurious));
  d.true_positives = d.gold_count - d.missing.size();

  const auto ratio = [](std::size_t num, std::size_t den, bool other_empty) {
    if (den == 0) return other_empty ? 1.0 : 0.0;
    return static_cast<double>(num) / static_cast<double>(den);
  };
  d.precision = ratio(d.true_positives, d.predicted_count, d.gold_count == 0);
  d.recall = ratio(d.true_positives, d.gold_count, d.predicted_count == 0);
  d.f1 = d.precision + d.recall == 0.0 ? 0.0
                                       : 2.0 * d.precision * d.recall / (d.precision + d.recall);
  return d;
}

}  // namespace snacs
