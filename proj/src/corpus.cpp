// src/corpus.cpp

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

#include "snacs/corpus.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "text_util.hpp"

namespace snacs {

std::string_view to_string(Language lang) {
  return lang == Language::kZh ? "zh" : "en";
}

std::string_view to_string(TargetKind kind) {
  switch (kind) {
    case TargetKind::kCoverb: return "COVERB";
    case TargetKind::kLocalizer: return "LOCALIZER";
    case TargetKind::kOther: return "OTHER";
  }
  return "OTHER";
}

std::optional<Language> parse_language(std::string_view s) {
  if (s == "zh") return Language::kZh;
  if (s == "en") return Language::kEn;
  return std::nullopt;
}

std::optional<TargetKind> parse_target_kind(std::string_view s) {
  if (s == "COVERB") return TargetKind::kCoverb;
  if (s == "LOCALIZER") return TargetKind::kLocalizer;
  if (s == "OTHER") return TargetKind::kOther;
  return std::nullopt;
}

const std::string& scene_value(const Label& l) {
  if (const auto* c = as_construal(l)) return c->scene;
  return std::get<SpecialLabel>(l).name;
}

const std::string& function_value(const Label& l) {
  if (const auto* c = as_construal(l)) return c->function;
  return std::get<SpecialLabel>(l).name;
}

std::string display(const Label& l) {
  if (const auto* c = as_construal(l)) return c->scene + "⇝" + c->function;
  return std::get<SpecialLabel>(l).name;
}

const Token* Sentence::token(int index) const {
  if (index < 1 || static_cast<std::size_t>(index) > tokens.size()) return nullptr;
  const Token& t = tokens[static_cast<std::size_t>(index - 1)];
  return t.index == index ? &t : nullptr;
}

const Sentence* AnnotatedDocument::sentence(std::string_view id) const {
  for (const Sentence& s : sentences) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

std::vector<std::string> AnnotatedDocument::annotators() const {
  std::set<std::string> ids;
  for (const TargetAnnotation& t : annotations) ids.insert(t.annotator);
  return {ids.begin(), ids.end()};
}

namespace {

std::unordered_map<std::string, std::size_t> sentence_positions(const AnnotatedDocument& doc) {
  std::unordered_map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < doc.sentences.size(); ++i) pos.emplace(doc.sentences[i].id, i);
  return pos;
}

auto canonical_less(const std::unordered_map<std::string, std::size_t>& pos) {
  return [&pos](const TargetAnnotation& a, const TargetAnnotation& b) {
    const auto position = [&pos](const std::string& id) {
      const auto it = pos.find(id);
      return it == pos.end() ? pos.size() : it->second;
    };
    const std::size_t pa = position(a.sentence_id);
    const std::size_t pb = position(b.sentence_id);
    return std::tie(pa, a.sentence_id, a.annotator, a.token_indices, a.group) <
           std::tie(pb, b.sentence_id, b.annotator, b.token_indices, b.group);
  };
}

}  // namespace

void canonicalize(AnnotatedDocument& doc) {
  const auto pos = sentence_positions(doc);
  std::stable_sort(doc.annotations.begin(), doc.annotations.end(), canonical_less(pos));
}

std::vector<TargetAnnotation> AnnotatedDocument::layer(std::string_view annotator) const {
  std::vector<TargetAnnotation> out;
  for (const TargetAnnotation& t : annotations) {
    if (t.annotator == annotator) out.push_back(t);
  }
  const auto pos = sentence_positions(*this);
  std::stable_sort(out.begin(), out.end(), canonical_less(pos));
  return out;
}

std::string AnnotatedDocument::target_form(const TargetAnnotation& t) const {
  const Sentence* s = sentence(t.sentence_id);
  std::string out;
  for (int i : t.token_indices) {
    if (!out.empty()) out += ' ';
    const Token* tok = s == nullptr ? nullptr : s->token(i);
    out += tok == nullptr ? std::string("?") : tok->form;
  }
  return out;
}

bool operator==(const AnnotatedDocument& a, const AnnotatedDocument& b) {
  if (a.doc_id != b.doc_id || a.language != b.language || a.sentences != b.sentences ||
      a.annotations.size() != b.annotations.size()) {
    return false;
  }
  AnnotatedDocument ca = a;
  AnnotatedDocument cb = b;
  canonicalize(ca);
  canonicalize(cb);
  return ca.annotations == cb.annotations;
}

std::size_t SourceMap::line_for(std::string_view sentence_id, int token_index,
                                std::string_view annotator) const {
  const std::string sid(sentence_id);
  if (token_index > 0) {
    if (const auto it = token_lines.find({sid, token_index}); it != token_lines.end()) {
      return it->second;
    }
  }
  if (!annotator.empty()) {
    for (const auto& [key, line] : target_lines) {
      if (std::get<0>(key) == sid && std::get<1>(key) == annotator) return line;
    }
  }
  const auto it = sentence_lines.find(sid);
  return it == sentence_lines.end() ? 0 : it->second;
}

// ---------------------------------------------------------------------------
// Reader

namespace {

constexpr std::string_view kBlank = "_";

class DocumentReader {
 public:
  DocumentReader(const Hierarchy& h, const CorpusOptions& options, SourceMap* map)
      : h_(h), map_(map) {
    for (const std::string& s : options.special_labels) specials_.emplace(detail::to_lower(s), s);
  }

  AnnotatedDocument read(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
      ++line_no_;
      detail::strip_cr(line);
      handle(line);
    }
    if (in.bad()) throw Error(ErrorCode::kIo, "read failure on annotation stream");
    finish_sentence();
    if (!have_doc_id_) throw Error(ErrorCode::kBadField, "missing '# doc_id = ...' header", 1);
    if (!have_language_) throw Error(ErrorCode::kBadField, "missing '# language = ...' header", 1);
    canonicalize(doc_);
    return std::move(doc_);
  }

 private:
  struct OpenGroup {
    std::size_t annotation;  // index into doc_.annotations
    bool labelled;
  };

  [[noreturn]] void fail(ErrorCode code, const std::string& msg) const {
    throw Error(code, msg, line_no_);
  }

  static std::optional<std::string_view> comment_value(std::string_view body,
                                                       std::string_view key) {
    if (body.substr(0, key.size()) != key) return std::nullopt;
    std::string_view rest = detail::trim(body.substr(key.size()));
    if (rest.empty() || rest.front() != '=') return std::nullopt;
    return detail::trim(rest.substr(1));
  }

  void handle(const std::string& line) {
    if (detail::trim(line).empty()) {
      finish_sentence();
      return;
    }
    if (line.front() == '#') {
      const std::string_view body = detail::trim(std::string_view(line).substr(1));
      if (auto v = comment_value(body, "sent_id")) {
        start_sentence(*v);
      } else if (auto d = comment_value(body, "doc_id"); d && !in_sentence_) {
        doc_.doc_id = std::string(*d);
        have_doc_id_ = true;
      } else if (auto l = comment_value(body, "language"); l && !in_sentence_) {
        const auto lang = parse_language(*l);
        if (!lang) fail(ErrorCode::kBadField, "unknown language '" + std::string(*l) + "'");
        doc_.language = *lang;
        have_language_ = true;
      }
      return;
    }
    token_line(line);
  }

  void start_sentence(std::string_view id) {
    finish_sentence();
    if (id.empty()) fail(ErrorCode::kBadField, "empty sent_id");
    if (!sentence_ids_.insert(std::string(id)).second) {
      fail(ErrorCode::kDuplicateSentence, "duplicate sent_id " + std::string(id));
    }
    doc_.sentences.push_back({std::string(id), {}});
    in_sentence_ = true;
    groups_.clear();
    if (map_ != nullptr) map_->sentence_lines[std::string(id)] = line_no_;
  }

  void finish_sentence() {
    if (!in_sentence_) return;
    for (const auto& [key, g] : groups_) {
      if (!g.labelled) {
        const TargetAnnotation& t = doc_.annotations[g.annotation];
        throw Error(ErrorCode::kDanglingGroup,
                    "target group T" + std::to_string(t.group) + " of annotator " + t.annotator +
                        " in " + t.sentence_id + " has no label on its first token line",
                    group_lines_.at(key));
      }
    }
    groups_.clear();
    group_lines_.clear();
    in_sentence_ = false;
  }

  Label resolve_label(std::string_view scene, std::string_view function) const {
    if (const auto it = specials_.find(detail::to_lower(scene)); it != specials_.end()) {
      if (function != kBlank) {
        fail(ErrorCode::kBadField, "special label " + it->second + " takes '_' as function");
      }
      return SpecialLabel{it->second};
    }
    const Supersense* s = h_.lookup(scene);
    if (s == nullptr) fail(ErrorCode::kUnknownSupersense, "unknown supersense '" + std::string(scene) + "'");
    if (function == kBlank) {
      fail(ErrorCode::kBadField, "construal scene " + s->name + " lacks a function label");
    }
    const Supersense* f = h_.lookup(function);
    if (f == nullptr) {
      if (specials_.count(detail::to_lower(function)) != 0) {
        fail(ErrorCode::kBadField, "special label '" + std::string(function) +
                                       "' belongs in the scene column");
      }
      fail(ErrorCode::kUnknownSupersense, "unknown supersense '" + std::string(function) + "'");
    }
    return Construal{s->name, f->name};
  }

  std::optional<TokenSpan> parse_span(std::string_view field) const {
    if (field == kBlank) return std::nullopt;
    const auto parts = detail::split(field, '-');
    TokenSpan span;
    if (parts.size() != 2 || !detail::parse_positive(parts[0], span.first) ||
        !detail::parse_positive(parts[1], span.last) || span.first > span.last) {
      fail(ErrorCode::kBadField, "bad NP span '" + std::string(field) + "'");
    }
    return span;
  }

  void token_line(const std::string& line) {
    if (!in_sentence_) fail(ErrorCode::kBadField, "token line outside a sentence block");
    const auto f = detail::split(line, '\t');
    if (f.size() != 8 && f.size() != 9) {
      fail(ErrorCode::kBadColumnCount,
           "expected 8 or 9 tab-separated fields, got " + std::to_string(f.size()));
    }
    int index = 0;
    if (!detail::parse_positive(f[0], index)) {
      fail(ErrorCode::kBadField, "bad token index '" + std::string(f[0]) + "'");
    }
    if (f[1].empty() || f[2].empty()) fail(ErrorCode::kBadField, "empty form or pos");
    const std::string_view annotator = f[3], group = f[4], kind = f[5], scene = f[6],
                           function = f[7];
    const std::string_view np = f.size() == 9 ? f[8] : kBlank;
    if (annotator.empty() || group.empty() || kind.empty() || scene.empty() || function.empty() ||
        np.empty()) {
      fail(ErrorCode::kBadField, "empty field; use '_' for absent values");
    }

    Sentence& sent = doc_.sentences.back();
    const int last = sent.tokens.empty() ? 0 : sent.tokens.back().index;
    if (index == last) {
      const Token& prev = sent.tokens.back();
      if (prev.form != f[1] || prev.pos != f[2]) {
        fail(ErrorCode::kInconsistentToken,
             "token " + std::to_string(index) + " repeated with different form or pos");
      }
      if (annotator == kBlank || token_annotators_.count(std::string(kBlank)) != 0) {
        fail(ErrorCode::kInconsistentToken,
             "unannotated token line must be the only line for token " + std::to_string(index));
      }
      if (!token_annotators_.insert(std::string(annotator)).second) {
        fail(ErrorCode::kOverlap, "annotator " + std::string(annotator) + " marks token " +
                                      std::to_string(index) + " twice");
      }
    } else if (index == last + 1) {
      sent.tokens.push_back({index, std::string(f[1]), std::string(f[2])});
      token_annotators_.clear();
      token_annotators_.insert(std::string(annotator));
      if (map_ != nullptr) map_->token_lines[{sent.id, index}] = line_no_;
    } else {
      fail(ErrorCode::kNonContiguousIndex, "token index " + std::to_string(index) +
                                               " follows " + std::to_string(last));
    }

    if (annotator == kBlank) {
      if (group != kBlank || kind != kBlank || scene != kBlank || function != kBlank ||
          np != kBlank) {
        fail(ErrorCode::kBadField, "unannotated token line must have '_' in annotator fields");
      }
      return;
    }

    int group_no = 0;
    if (group.size() < 2 || group.front() != 'T' ||
        !detail::parse_positive(group.substr(1), group_no)) {
      fail(ErrorCode::kBadField, "bad target group '" + std::string(group) + "'");
    }
    std::optional<TargetKind> parsed_kind;
    if (kind != kBlank) {
      parsed_kind = parse_target_kind(kind);
      if (!parsed_kind) fail(ErrorCode::kBadField, "bad target kind '" + std::string(kind) + "'");
    }

    const auto key = std::make_pair(std::string(annotator), group_no);
    auto it = groups_.find(key);
    if (it == groups_.end()) {
      if (scene == kBlank) {
        throw Error(ErrorCode::kDanglingGroup,
                    "target group " + std::string(group) + " has no label on its first token line",
                    line_no_);
      }
      TargetAnnotation t;
      t.sentence_id = sent.id;
      t.token_indices = {index};
      t.kind = parsed_kind.value_or(TargetKind::kOther);
      t.label = resolve_label(scene, function);
      t.annotator = std::string(annotator);
      t.group = group_no;
      t.np_span = parse_span(np);
      doc_.annotations.push_back(std::move(t));
      groups_.emplace(key, OpenGroup{doc_.annotations.size() - 1, true});
      group_lines_.emplace(key, line_no_);
      if (map_ != nullptr) map_->target_lines[{sent.id, key.first, group_no}] = line_no_;
      return;
    }

    if (scene != kBlank || function != kBlank || np != kBlank) {
      fail(ErrorCode::kBadField, "label and NP span belong on the first line of group " +
                                     std::string(group));
    }
    TargetAnnotation& t = doc_.annotations[it->second.annotation];
    if (parsed_kind && *parsed_kind != t.kind) {
      fail(ErrorCode::kBadField, "kind of group " + std::string(group) + " changes mid-target");
    }
    t.token_indices.push_back(index);
  }

  const Hierarchy& h_;
  SourceMap* map_;
  std::unordered_map<std::string, std::string> specials_;  // lower -> configured

  AnnotatedDocument doc_;
  bool have_doc_id_ = false;
  bool have_language_ = false;
  bool in_sentence_ = false;
  std::size_t line_no_ = 0;
  std::set<std::string> sentence_ids_;
  std::set<std::string> token_annotators_;
  std::map<std::pair<std::string, int>, OpenGroup> groups_;
  std::map<std::pair<std::string, int>, std::size_t> group_lines_;
};

}  // namespace

AnnotatedDocument parse_document(std::istream& in, const Hierarchy& h,
                                 const CorpusOptions& options, SourceMap* source_map) {
  return DocumentReader(h, options, source_map).read(in);
}

// ---------------------------------------------------------------------------
// Writer

void write_document(std::ostream& out, const AnnotatedDocument& doc) {
  const bool with_np = std::any_of(doc.annotations.begin(), doc.annotations.end(),
                                   [](const TargetAnnotation& t) { return t.np_span.has_value(); });
  out << "# doc_id = " << doc.doc_id << '\n';
  out << "# language = " << to_string(doc.language) << '\n';

  for (const Sentence& sent : doc.sentences) {
    // token index -> (annotator -> target)
    std::map<int, std::map<std::string, const TargetAnnotation*>> cover;
    for (const TargetAnnotation& t : doc.annotations) {
      if (t.sentence_id != sent.id) continue;
      for (int i : t.token_indices) cover[i][t.annotator] = &t;
    }
    out << "\n# sent_id = " << sent.id << '\n';
    for (const Token& tok : sent.tokens) {
      const auto it = cover.find(tok.index);
      if (it == cover.end()) {
        out << tok.index << '\t' << tok.form << '\t' << tok.pos << "\t_\t_\t_\t_\t_"
            << (with_np ? "\t_" : "") << '\n';
        continue;
      }
      for (const auto& [annotator, t] : it->second) {
        const bool first = t->token_indices.front() == tok.index;
        out << tok.index << '\t' << tok.form << '\t' << tok.pos << '\t' << annotator << "\tT"
            << t->group << '\t' << to_string(t->kind) << '\t';
        if (first) {
          out << scene_value(t->label) << '\t'
              << (is_special(t->label) ? std::string("_") : function_value(t->label));
        } else {
          out << "_\t_";
        }
        if (with_np) {
          out << '\t';
          if (first && t->np_span) {
            out << t->np_span->first << '-' << t->np_span->last;
          } else {
            out << '_';
          }
        }
        out << '\n';
      }
    }
  }
}

std::string write_document(const AnnotatedDocument& doc) {
  std::ostringstream out;
  write_document(out, doc);
  return out.str();
}

// ---------------------------------------------------------------------------
// Validation

std::vector<Violation> validate_document(const AnnotatedDocument& doc, const Hierarchy& h,
                                         const CorpusOptions& options) {
  std::vector<Violation> out;
  const auto add = [&out](ErrorCode code, const std::string& sid, int token,
                          const std::string& annotator, std::string msg) {
    out.push_back({code, sid, token, annotator, std::move(msg)});
  };

  std::set<std::string> seen;
  for (const Sentence& s : doc.sentences) {
    if (!seen.insert(s.id).second) add(ErrorCode::kDuplicateSentence, s.id, 0, "", "duplicate sentence id");
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
      const Token& t = s.tokens[i];
      if (t.index != static_cast<int>(i) + 1) {
        add(ErrorCode::kNonContiguousIndex, s.id, t.index, "",
            "token index " + std::to_string(t.index) + " at position " + std::to_string(i + 1));
      }
      if (t.form.empty()) add(ErrorCode::kBadField, s.id, t.index, "", "empty token form");
    }
  }

  std::set<std::string> specials;
  for (const std::string& s : options.special_labels) specials.insert(detail::to_lower(s));

  // (sentence, annotator, token) and (sentence, annotator, group) ownership
  std::set<std::tuple<std::string, std::string, int>> owned_tokens;
  std::set<std::tuple<std::string, std::string, int>> owned_groups;

  // Sort a copy so overlap attribution does not depend on list order.
  AnnotatedDocument sorted = doc;
  canonicalize(sorted);
  for (const TargetAnnotation& t : sorted.annotations) {
    const Sentence* s = doc.sentence(t.sentence_id);
    if (s == nullptr) {
      add(ErrorCode::kUnknownSentence, t.sentence_id, 0, t.annotator, "target refers to unknown sentence");
      continue;
    }
    if (t.annotator.empty() || t.annotator == "_") {
      add(ErrorCode::kBadField, t.sentence_id, 0, t.annotator, "target lacks an annotator id");
    }
    if (t.token_indices.empty() ||
        std::adjacent_find(t.token_indices.begin(), t.token_indices.end(),
                           [](int a, int b) { return a >= b; }) != t.token_indices.end()) {
      add(ErrorCode::kBadSpan, t.sentence_id, 0, t.annotator, "target indices must be non-empty and strictly increasing");
    }
    if (!owned_groups.emplace(t.sentence_id, t.annotator, t.group).second || t.group <= 0) {
      add(ErrorCode::kDuplicateGroup, t.sentence_id, 0, t.annotator,
          "group id T" + std::to_string(t.group) + " reused or invalid");
    }
    for (int i : t.token_indices) {
      const Token* tok = s->token(i);
      if (tok == nullptr) {
        add(ErrorCode::kBadSpan, t.sentence_id, i, t.annotator, "token index out of range");
        continue;
      }
      if (!owned_tokens.emplace(t.sentence_id, t.annotator, i).second) {
        add(ErrorCode::kOverlap, t.sentence_id, i, t.annotator, "token belongs to two targets");
      }
      if (t.kind == TargetKind::kCoverb && tok->pos != "P") {
        add(ErrorCode::kKindPosMismatch, t.sentence_id, i, t.annotator,
            "coverb target on " + tok->form + "/" + tok->pos + ", expected P");
      } else if (t.kind == TargetKind::kLocalizer && tok->pos != "LC") {
        add(ErrorCode::kKindPosMismatch, t.sentence_id, i, t.annotator,
            "localizer target on " + tok->form + "/" + tok->pos + ", expected LC");
      }
    }
    if (t.np_span && (s->token(t.np_span->first) == nullptr || s->token(t.np_span->last) == nullptr)) {
      add(ErrorCode::kBadSpan, t.sentence_id, 0, t.annotator, "NP span outside sentence");
    }
    if (const Construal* c = as_construal(t.label)) {
      for (const std::string* name : {&c->scene, &c->function}) {
        const Supersense* ss = h.lookup(*name);
        if (ss == nullptr) {
          add(ErrorCode::kUnknownSupersense, t.sentence_id, t.token_indices.empty() ? 0 : t.token_indices.front(),
              t.annotator, "unknown supersense '" + *name + "'");
        } else if (ss->name != *name) {
          add(ErrorCode::kBadField, t.sentence_id, t.token_indices.empty() ? 0 : t.token_indices.front(),
              t.annotator, "label '" + *name + "' not in canonical casing '" + ss->name + "'");
        }
      }
    } else if (specials.count(detail::to_lower(std::get<SpecialLabel>(t.label).name)) == 0) {
      add(ErrorCode::kUnknownSpecial, t.sentence_id, t.token_indices.empty() ? 0 : t.token_indices.front(),
          t.annotator, "unknown special label '" + std::get<SpecialLabel>(t.label).name + "'");
    }
  }

  std::unordered_map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < doc.sentences.size(); ++i) pos.emplace(doc.sentences[i].id, i);
  const auto position = [&pos](const std::string& id) {
    const auto it = pos.find(id);
    return it == pos.end() ? pos.size() : it->second;
  };
  std::sort(out.begin(), out.end(), [&position](const Violation& a, const Violation& b) {
    const std::size_t pa = position(a.sentence_id), pb = position(b.sentence_id);
    return std::tie(pa, a.sentence_id, a.token_index, a.annotator, a.code, a.message) <
           std::tie(pb, b.sentence_id, b.token_index, b.annotator, b.code, b.message);
  });
  return out;
}

}  // namespace snacs
