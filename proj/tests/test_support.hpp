// tests/test_support.hpp

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
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "snacs/alignment.hpp"
#include "snacs/corpus.hpp"
#include "snacs/hierarchy.hpp"
#include "snacs/service.hpp"

namespace snacs::testing {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(SNACS_FIXTURE_DIR) / name;
}

inline const Hierarchy& shipped_hierarchy() {
  static const Hierarchy h = Hierarchy::load_file(default_hierarchy_path());
  return h;
}

inline AnnotatedDocument load_fixture(const std::string& name, SourceMap* map = nullptr) {
  std::ifstream in(fixture(name));
  return parse_document(in, shipped_hierarchy(), {}, map);
}

inline AnnotatedDocument parse_text(const std::string& text) {
  std::istringstream in(text);
  return parse_document(in, shipped_hierarchy());
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline TargetAnnotation make_target(std::string sentence_id, std::vector<int> indices,
                                    TargetKind kind, Label label, std::string annotator,
                                    int group) {
  TargetAnnotation t;
  t.sentence_id = std::move(sentence_id);
  t.token_indices = std::move(indices);
  t.kind = kind;
  t.label = std::move(label);
  t.annotator = std::move(annotator);
  t.group = group;
  return t;
}

inline Label construal(const std::string& scene, const std::string& function) {
  return Construal{scene, function};
}

/// Random valid documents for property tests: UTF-8 forms, several
/// annotator layers, discontinuous multi-token targets, special labels and
/// optional NP spans.
class DocumentGenerator {
 public:
  explicit DocumentGenerator(std::uint32_t seed) : rng_(seed) {}

  AnnotatedDocument operator()() {
    const Hierarchy& h = shipped_hierarchy();
    AnnotatedDocument doc;
    doc.doc_id = "gen" + std::to_string(uniform(0, 99999));
    doc.language = uniform(0, 1) == 0 ? Language::kZh : Language::kEn;
    const bool with_np = uniform(0, 2) == 0;
    const int n_sentences = uniform(0, 4);
    const int n_annotators = uniform(1, 3);
    for (int s = 0; s < n_sentences; ++s) {
      Sentence sent;
      sent.id = "s" + std::to_string(s) + "." + std::to_string(uniform(0, 999));
      const int n_tokens = uniform(1, 9);
      for (int i = 1; i <= n_tokens; ++i) {
        sent.tokens.push_back({i, pick(kForms), pick(kTags)});
      }
      for (int a = 0; a < n_annotators; ++a) {
        const std::string annotator = "ann" + std::to_string(a);
        std::vector<int> free;
        for (int i = 1; i <= n_tokens; ++i) {
          if (uniform(0, 2) != 0) free.push_back(i);
        }
        int group = 0;
        while (!free.empty()) {
          const int take = std::min<int>(uniform(1, 3), static_cast<int>(free.size()));
          std::vector<int> idx(free.begin(), free.begin() + take);
          free.erase(free.begin(), free.begin() + take);
          if (uniform(0, 3) == 0) continue;  // leave some tokens untargeted
          TargetAnnotation t;
          t.sentence_id = sent.id;
          t.token_indices = idx;
          t.kind = TargetKind::kOther;
          if (idx.size() == 1 && sent.tokens[idx[0] - 1].pos == "P") t.kind = TargetKind::kCoverb;
          if (idx.size() == 1 && sent.tokens[idx[0] - 1].pos == "LC") t.kind = TargetKind::kLocalizer;
          if (uniform(0, 9) == 0) {
            t.label = SpecialLabel{"DISCOURSE"};
          } else {
            const auto nodes = h.nodes();
            t.label = Construal{nodes[uniform(0, 49)].name, nodes[uniform(0, 49)].name};
          }
          t.annotator = annotator;
          t.group = ++group + uniform(0, 1) * 10;
          if (with_np && uniform(0, 1) == 0) {
            const int first = uniform(1, n_tokens);
            t.np_span = TokenSpan{first, uniform(first, n_tokens)};
          }
          doc.annotations.push_back(std::move(t));
        }
      }
      doc.sentences.push_back(std::move(sent));
    }
    std::shuffle(doc.annotations.begin(), doc.annotations.end(), rng_);
    return doc;
  }

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  template <typename C>
  std::string pick(const C& pool) {
    return pool[static_cast<std::size_t>(uniform(0, static_cast<int>(std::size(pool)) - 1))];
  }

  std::mt19937& rng() { return rng_; }

 private:
  static constexpr const char* kForms[] = {"zài", "shàng", "duì", "láishuō", "在", "上", "书",
                                           "中", "of", "in", "book", "_x", "“", "。", "a-b"};
  static constexpr const char* kTags[] = {"P", "LC", "NN", "VV", "PN", "PU", "IN", "DT", "VA"};
  std::mt19937 rng_;
};

/// Synthetic sentence-aligned bitext whose NP heads are known by
/// construction. Chinese clauses look like `[P] [DT] [JJ] NN+ [LC] VV ，`,
/// English ones like `IN [DT] [JJ] NN+ VBD ,`.
struct SyntheticBitext {
  AnnotatedDocument en;
  AnnotatedDocument zh;
  std::vector<BitextUnit> units;
  WordAlignments links;
  // Tokens each target governs: its NP span if annotated, otherwise the head.
  std::map<std::tuple<std::string, int>, std::vector<int>> en_governed;  // (sentence, group)
  std::map<std::tuple<std::string, int>, std::vector<int>> zh_governed;
};

class BitextGenerator {
 public:
  explicit BitextGenerator(std::uint32_t seed) : rng_(seed) {}

  SyntheticBitext operator()(int n_units) {
    SyntheticBitext b;
    b.en.doc_id = "syn_en";
    b.en.language = Language::kEn;
    b.zh.doc_id = "syn_zh";
    b.zh.language = Language::kZh;
    for (int u = 0; u < n_units; ++u) {
      const std::string unit = "syn." + std::to_string(u);
      b.units.push_back({unit, "en_" + unit, "zh_" + unit});
      std::vector<int> en_np, zh_np;  // every NP token, for noise links
      std::vector<std::vector<int>> en_heads, zh_heads;
      build(b, Language::kEn, "en_" + unit, en_np, en_heads);
      build(b, Language::kZh, "zh_" + unit, zh_np, zh_heads);
      auto& links = b.links[unit];
      // Link some English NPs to some Chinese NPs through any of their tokens.
      for (const auto& e : en_heads) {
        for (const auto& z : zh_heads) {
          if (uniform(0, 2) == 0) links.emplace(e[static_cast<std::size_t>(uniform(0, static_cast<int>(e.size()) - 1))],
                                                z[static_cast<std::size_t>(uniform(0, static_cast<int>(z.size()) - 1))]);
        }
      }
      const int en_len = static_cast<int>(b.en.sentences.back().tokens.size());
      const int zh_len = static_cast<int>(b.zh.sentences.back().tokens.size());
      for (int k = uniform(0, 3); k > 0; --k) links.emplace(uniform(1, en_len), uniform(1, zh_len));
      if (links.empty()) b.links.erase(unit);
    }
    return b;
  }

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

 private:
  void build(SyntheticBitext& b, Language lang, const std::string& sid, std::vector<int>& np_tokens,
             std::vector<std::vector<int>>& nps) {
    const bool zh = lang == Language::kZh;
    AnnotatedDocument& doc = zh ? b.zh : b.en;
    auto& governed = zh ? b.zh_governed : b.en_governed;
    Sentence s;
    s.id = sid;
    const auto push = [&s](std::string form, std::string pos) {
      const int i = static_cast<int>(s.tokens.size()) + 1;
      s.tokens.push_back({i, std::move(form), std::move(pos)});
      return i;
    };
    int group = 0;
    const auto annotate = [&](int tok, TargetKind kind, int np_first, int np_last, int head) {
      TargetAnnotation t;
      t.sentence_id = sid;
      t.token_indices = {tok};
      t.kind = kind;
      if (uniform(0, 7) == 0) {
        t.label = SpecialLabel{"DISCOURSE"};
      } else {
        static const char* kRoles[] = {"Locus", "Topic", "Goal", "Source", "Time"};
        t.label = Construal{kRoles[uniform(0, 4)], kRoles[uniform(0, 4)]};
      }
      t.annotator = "gold";
      t.group = ++group;
      std::vector<int> g;
      if (uniform(0, 2) == 0) {
        t.np_span = TokenSpan{np_first, np_last};
        for (int i = np_first; i <= np_last; ++i) g.push_back(i);
      } else {
        g.push_back(head);
      }
      governed[{sid, t.group}] = g;
      doc.annotations.push_back(std::move(t));
    };

    const int n_clauses = uniform(1, 4);
    for (int c = 0; c < n_clauses; ++c) {
      // 0: coverb only, 1: coverb + localizer, 2: localizer only, 3: bare NP
      const int shape = zh ? uniform(0, 3) : (uniform(0, 3) == 3 ? 3 : 0);
      int adp = 0;
      if (shape <= 1) adp = zh ? push(uniform(0, 1) ? "zài" : "duì", "P") : push(uniform(0, 1) ? "in" : "about", "IN");
      const int np_first = static_cast<int>(s.tokens.size()) + 1;
      if (uniform(0, 1)) push(zh ? "zhè" : "the", "DT");
      if (uniform(0, 2) == 0) push(zh ? "hǎo" : "old", "JJ");
      int head = 0;
      for (int k = uniform(1, 2); k > 0; --k) head = push(zh ? "shū" : "book", zh ? "NN" : (uniform(0, 1) ? "NN" : "NNS"));
      std::vector<int> np;
      for (int i = np_first; i <= head; ++i) {
        np.push_back(i);
        np_tokens.push_back(i);
      }
      nps.push_back(np);
      int lc = 0;
      if (shape == 1 || shape == 2) lc = push(uniform(0, 1) ? "shàng" : "zhōng", "LC");
      if (adp != 0) annotate(adp, zh ? TargetKind::kCoverb : TargetKind::kOther, np_first, head, head);
      if (lc != 0) annotate(lc, TargetKind::kLocalizer, np_first, head, head);
      push(zh ? "kàn" : "read", zh ? "VV" : "VBD");
      push(zh ? "，" : ",", zh ? "PU" : ",");
    }
    doc.sentences.push_back(std::move(s));
  }

  std::mt19937 rng_;
};

/// All (unit, en group, zh group) whose governed tokens are linked, by
/// exhaustive enumeration.
inline std::set<std::tuple<std::string, int, int>> brute_force_pairs(const SyntheticBitext& b) {
  std::set<std::tuple<std::string, int, int>> out;
  for (const BitextUnit& u : b.units) {
    const auto links = b.links.find(u.unit_id);
    if (links == b.links.end()) continue;
    for (const auto& [ek, eg] : b.en_governed) {
      if (std::get<0>(ek) != u.en_sentence_id) continue;
      for (const auto& [zk, zg] : b.zh_governed) {
        if (std::get<0>(zk) != u.zh_sentence_id) continue;
        bool linked = false;
        for (int e : eg) {
          for (int z : zg) linked = linked || links->second.count({e, z}) != 0;
        }
        if (linked) out.emplace(u.unit_id, std::get<1>(ek), std::get<1>(zk));
      }
    }
  }
  return out;
}

/// A single-annotator layer with the given [function][scene] subhierarchy
/// counts, of which `identity` diagonal tokens have scene == function, plus
/// `specials` DISCOURSE tokens.
struct TableSpec {
  std::size_t cells[3][3];
  std::size_t identity;
  std::size_t specials;
};

inline std::vector<TargetAnnotation> table_layer(const TableSpec& spec) {
  static const char* kBase[] = {"Locus", "Topic", "Possessor"};
  static const char* kAlt[] = {"Time", "Stimulus", "Whole"};
  std::vector<TargetAnnotation> out;
  int n = 0;
  const auto add = [&out, &n](Label label) {
    ++n;
    out.push_back(make_target("t" + std::to_string(n), {1}, TargetKind::kCoverb, std::move(label), "gold", 1));
  };
  std::size_t identity_left = spec.identity;
  for (int f = 0; f < 3; ++f) {
    for (int s = 0; s < 3; ++s) {
      for (std::size_t k = 0; k < spec.cells[f][s]; ++k) {
        if (f == s && identity_left > 0) {
          --identity_left;
          add(Construal{kBase[s], kBase[f]});
        } else {
          add(Construal{f == s ? kAlt[s] : kBase[s], kBase[f]});
        }
      }
    }
  }
  for (std::size_t k = 0; k < spec.specials; ++k) add(SpecialLabel{"DISCOURSE"});
  return out;
}

// Reference corpus shapes: [function][scene] cells, identity tokens, specials.
inline constexpr TableSpec kChineseTable{{{68, 12, 2}, {0, 48, 0}, {0, 0, 10}}, 121, 1};
inline constexpr TableSpec kEnglishTable{{{88, 22, 4}, {0, 50, 0}, {3, 9, 71}}, 178, 9};

}  // namespace snacs::testing
