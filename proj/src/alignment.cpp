// src/alignment.cpp

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

#include "snacs/alignment.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "snacs/error.hpp"
#include "snacs/targets.hpp"
#include "text_util.hpp"

namespace snacs {

std::string unit_id_of(std::string_view sentence_id) {
  static constexpr std::string_view kPrefixes[] = {"en_", "eng_", "zh_", "zho_", "cmn_"};
  for (std::string_view p : kPrefixes) {
    if (sentence_id.substr(0, p.size()) == p && sentence_id.size() > p.size()) {
      return std::string(sentence_id.substr(p.size()));
    }
  }
  return std::string(sentence_id);
}

std::vector<BitextUnit> derive_units(const AnnotatedDocument& en, const AnnotatedDocument& zh) {
  std::unordered_map<std::string, std::string> en_ids;
  for (const Sentence& s : en.sentences) en_ids.emplace(unit_id_of(s.id), s.id);
  std::vector<BitextUnit> out;
  for (const Sentence& s : zh.sentences) {
    std::string unit = unit_id_of(s.id);
    if (const auto it = en_ids.find(unit); it != en_ids.end()) {
      out.push_back({std::move(unit), it->second, s.id});
    }
  }
  return out;
}

std::string_view to_string(AlignmentSource s) {
  return s == AlignmentSource::kManual ? "manual" : "heuristic";
}

namespace {

const TargetAnnotation* find_target(const AnnotatedDocument& doc, std::string_view sentence_id,
                                    std::string_view annotator, int group) {
  for (const TargetAnnotation& t : doc.annotations) {
    if (t.sentence_id == sentence_id && t.annotator == annotator && t.group == group) return &t;
  }
  return nullptr;
}

int parse_group(std::string_view field, std::size_t line_no) {
  int group = 0;
  if (field.size() < 2 || field.front() != 'T' || !detail::parse_positive(field.substr(1), group)) {
    throw Error(ErrorCode::kBadField, "bad target group '" + std::string(field) + "'", line_no);
  }
  return group;
}

}  // namespace

std::vector<AlignmentPair> load_manual_alignments(std::istream& in, const AnnotatedDocument& en,
                                                  const AnnotatedDocument& zh) {
  std::unordered_map<std::string, BitextUnit> units;
  for (BitextUnit& u : derive_units(en, zh)) units.emplace(u.unit_id, std::move(u));

  std::vector<AlignmentPair> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    detail::strip_cr(line);
    if (detail::trim(line).empty() || line.front() == '#') continue;
    const auto f = detail::split(line, '\t');
    if (f.size() != 5) {
      throw Error(ErrorCode::kBadColumnCount,
                  "expected 5 tab-separated fields, got " + std::to_string(f.size()), line_no);
    }
    const auto unit = units.find(std::string(f[0]));
    if (unit == units.end()) {
      throw Error(ErrorCode::kUnknownUnit,
                  "unit " + std::string(f[0]) + " not present in both documents", line_no);
    }
    const TargetAnnotation* e =
        find_target(en, unit->second.en_sentence_id, f[1], parse_group(f[2], line_no));
    const TargetAnnotation* z =
        find_target(zh, unit->second.zh_sentence_id, f[3], parse_group(f[4], line_no));
    if (e == nullptr || z == nullptr) {
      throw Error(ErrorCode::kDanglingTarget,
                  "no " + std::string(e == nullptr ? "English" : "Chinese") + " target " +
                      std::string(e == nullptr ? f[2] : f[4]) + " of annotator " +
                      std::string(e == nullptr ? f[1] : f[3]) + " in unit " + std::string(f[0]),
                  line_no);
    }
    out.push_back({unit->first, *e, *z, AlignmentSource::kManual, ""});
  }
  if (in.bad()) throw Error(ErrorCode::kIo, "read failure on alignment stream");
  return out;
}

WordAlignments load_word_alignments(std::istream& in) {
  WordAlignments out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    detail::strip_cr(line);
    if (detail::trim(line).empty() || line.front() == '#') continue;
    const auto f = detail::split(line, '\t');
    if (f.size() != 2) {
      throw Error(ErrorCode::kBadColumnCount,
                  "expected unit id and links separated by a tab", line_no);
    }
    const std::string unit(detail::trim(f[0]));
    auto& links = out[unit];
    for (std::string_view link : detail::split(detail::trim(f[1]), ' ')) {
      if (link.empty()) continue;
      const auto ends = detail::split(link, '-');
      int e = 0, z = 0;
      if (ends.size() != 2 || !detail::parse_positive(ends[0], e) ||
          !detail::parse_positive(ends[1], z)) {
        throw Error(ErrorCode::kBadField, "bad link '" + std::string(link) + "'", line_no);
      }
      links.emplace(e, z);
    }
  }
  if (in.bad()) throw Error(ErrorCode::kIo, "read failure on word-alignment stream");
  return out;
}

namespace {

bool is_nominal(std::string_view pos, Language lang) {
  if (lang == Language::kZh) return pos.substr(0, 1) == "N" || pos == "PN";
  return pos.substr(0, 2) == "NN" || pos == "PRP" || pos == "CD";
}

bool is_punct(std::string_view pos, Language lang) {
  if (lang == Language::kZh) return pos == "PU";
  return pos == "," || pos == "." || pos == ":" || pos == "``" || pos == "''" ||
         pos == "-LRB-" || pos == "-RRB-";
}

// Rightward boundary for English: next preposition, verb, clause word, punctuation.
bool ends_english_np(std::string_view pos) {
  return pos == "IN" || pos == "TO" || pos == "CC" || pos == "MD" || pos == "WDT" ||
         pos == "WP" || pos == "WRB" || is_verbal_tag(pos) || is_punct(pos, Language::kEn);
}

// Quotation marks and brackets may sit inside an NP; these end a clause.
bool is_clause_punct(const Token& t) {
  static const std::set<std::string_view> kForms = {"，", "。", "！", "？", "；", "：", "、",
                                                    ",", ".", "!", "?", ";", ":"};
  return t.pos == "PU" && kForms.count(t.form) != 0;
}

std::optional<int> last_head(const Sentence& s, int first, int last, Language lang) {
  if (first > last) return std::nullopt;
  for (int i = last; i >= first; --i) {
    if (is_nominal(s.tokens[static_cast<std::size_t>(i - 1)].pos, lang)) return i;
  }
  return last;
}

}  // namespace

std::optional<int> governed_head(const Sentence& sentence, const TargetAnnotation& target,
                                 Language language) {
  if (target.token_indices.empty()) return std::nullopt;
  const int n = static_cast<int>(sentence.tokens.size());
  const auto pos = [&sentence](int i) -> std::string_view {
    return sentence.tokens[static_cast<std::size_t>(i - 1)].pos;
  };
  const auto clause_end = [&sentence](int i) {
    return is_clause_punct(sentence.tokens[static_cast<std::size_t>(i - 1)]);
  };
  const int first = target.token_indices.front();
  const int last = target.token_indices.back();
  if (first < 1 || last > n) return std::nullopt;

  if (language == Language::kEn) {
    int end = last + 1;
    while (end <= n && !ends_english_np(pos(end))) ++end;
    return last_head(sentence, last + 1, end - 1, language);
  }

  const bool localizer = target.kind == TargetKind::kLocalizer ||
                         (target.kind == TargetKind::kOther && pos(first) == "LC");
  if (localizer) {
    int start = first - 1;
    while (start >= 1 && pos(start) != "P" && pos(start) != "LC" && !clause_end(start)) --start;
    return last_head(sentence, start + 1, first - 1, language);
  }

  // Coverb: the NP runs up to a localizer that comes before any other coverb
  // or clause break; relative clauses inside it may contain verbs.
  for (int i = last + 1; i <= n; ++i) {
    if (pos(i) == "P" || clause_end(i)) break;
    if (pos(i) == "LC") return last_head(sentence, last + 1, i - 1, language);
  }
  int end = last + 1;
  while (end <= n && pos(end) != "P" && pos(end) != "LC" && !clause_end(end) &&
         !is_verbal_tag(pos(end))) {
    ++end;
  }
  return last_head(sentence, last + 1, end - 1, language);
}

std::vector<int> governed_tokens(const Sentence& sentence, const TargetAnnotation& target,
                                 Language language) {
  std::vector<int> out;
  if (target.np_span) {
    for (int i = target.np_span->first; i <= target.np_span->last; ++i) out.push_back(i);
  } else if (auto head = governed_head(sentence, target, language)) {
    out.push_back(*head);
  }
  return out;
}

namespace {

std::string pick_annotator(const AnnotatedDocument& doc, const std::optional<std::string>& wanted) {
  if (wanted) return *wanted;
  const auto ids = doc.annotators();
  return ids.empty() ? std::string() : ids.front();
}

}  // namespace

std::vector<AlignmentPair> heuristic_align(const AnnotatedDocument& en, const AnnotatedDocument& zh,
                                           const std::vector<BitextUnit>& units,
                                           const WordAlignments* links,
                                           const AlignOptions& options) {
  if (links == nullptr) {
    throw Error(ErrorCode::kMissingAlignments,
                "heuristic alignment needs word alignments; NP spans alone cannot be "
                "matched across languages");
  }
  const std::string en_annotator = pick_annotator(en, options.en_annotator);
  const std::string zh_annotator = pick_annotator(zh, options.zh_annotator);
  const auto en_layer = en.layer(en_annotator);
  const auto zh_layer = zh.layer(zh_annotator);

  std::vector<AlignmentPair> out;
  for (const BitextUnit& unit : units) {
    const Sentence* es = en.sentence(unit.en_sentence_id);
    const Sentence* zs = zh.sentence(unit.zh_sentence_id);
    if (es == nullptr || zs == nullptr) {
      throw Error(ErrorCode::kUnknownUnit, "unit " + unit.unit_id + " does not resolve");
    }
    const auto link_it = links->find(unit.unit_id);
    if (link_it == links->end()) continue;

    // en token -> zh tokens
    std::multimap<int, int> by_en(link_it->second.begin(), link_it->second.end());

    // zh token -> zh targets whose governed NP contains it
    std::multimap<int, std::size_t> zh_owner;
    std::vector<const TargetAnnotation*> zh_targets;
    for (const TargetAnnotation& t : zh_layer) {
      if (t.sentence_id != unit.zh_sentence_id) continue;
      for (int tok : governed_tokens(*zs, t, zh.language)) zh_owner.emplace(tok, zh_targets.size());
      zh_targets.push_back(&t);
    }
    if (zh_targets.empty()) continue;

    for (const TargetAnnotation& et : en_layer) {
      if (et.sentence_id != unit.en_sentence_id) continue;
      std::map<std::size_t, std::pair<int, int>> matched;  // zh target -> witness link
      for (int etok : governed_tokens(*es, et, en.language)) {
        const auto [lo, hi] = by_en.equal_range(etok);
        for (auto l = lo; l != hi; ++l) {
          const auto [zlo, zhi] = zh_owner.equal_range(l->second);
          for (auto z = zlo; z != zhi; ++z) matched.emplace(z->second, std::make_pair(etok, l->second));
        }
      }
      for (const auto& [zi, link] : matched) {
        const TargetAnnotation& zt = *zh_targets[zi];
        const bool spans = et.np_span.has_value() && zt.np_span.has_value();
        out.push_back({unit.unit_id, et, zt, AlignmentSource::kHeuristic,
                       std::string(spans ? "np-span" : "np-head") + " link " +
                           std::to_string(link.first) + "-" + std::to_string(link.second)});
      }
    }
  }
  return out;
}

MatchReport match_rates(const std::vector<AlignmentPair>& pairs) {
  MatchReport r;
  // English target identity -> (any scene match, any function match)
  std::map<std::tuple<std::string, std::string, int>, std::pair<bool, bool>> per_en;
  for (const AlignmentPair& p : pairs) {
    const Construal* e = as_construal(p.en_target.label);
    const Construal* z = as_construal(p.zh_target.label);
    if (e == nullptr || z == nullptr) {
      ++r.n_special_excluded;
      continue;
    }
    ++r.n_pairs;
    const bool scene = e->scene == z->scene;
    const bool function = e->function == z->function;
    r.scene_matches += scene ? 1 : 0;
    r.function_matches += function ? 1 : 0;
    auto& agg = per_en[{p.en_target.sentence_id, p.en_target.annotator, p.en_target.group}];
    agg.first = agg.first || scene;
    agg.second = agg.second || function;
  }
  const auto rate = [](std::size_t num, std::size_t den) -> std::optional<double> {
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
  };
  r.scene_match_rate = rate(r.scene_matches, r.n_pairs);
  r.function_match_rate = rate(r.function_matches, r.n_pairs);
  r.n_en_targets = per_en.size();
  for (const auto& [key, agg] : per_en) {
    r.en_scene_matches += agg.first ? 1 : 0;
    r.en_function_matches += agg.second ? 1 : 0;
  }
  r.en_scene_match_rate = rate(r.en_scene_matches, r.n_en_targets);
  r.en_function_match_rate = rate(r.en_function_matches, r.n_en_targets);
  return r;
}

}  // namespace snacs
