// src/report.cpp

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

#include "snacs/report.hpp"

#include <iomanip>
#include <sstream>

namespace snacs {

json to_json(const Hierarchy& h) {
  json nodes = json::array();
  for (const Supersense& s : h.nodes()) {
    const Supersense* p = h.parent(s);
    nodes.push_back({{"label", s.name},
                     {"parent", p == nullptr ? json(nullptr) : json(p->name)},
                     {"subhierarchy", abbreviation(h.subhierarchy_of(s))},
                     {"depth", s.depth}});
  }
  return {{"version", h.version()}, {"count", h.size()}, {"nodes", std::move(nodes)}};
}

json to_json(const Label& label) {
  if (const Construal* c = as_construal(label)) {
    return {{"scene", c->scene}, {"function", c->function}, {"special", nullptr}};
  }
  return {{"scene", nullptr}, {"function", nullptr},
          {"special", std::get<SpecialLabel>(label).name}};
}

json to_json(const TargetAnnotation& t, const AnnotatedDocument& doc) {
  json j = {{"sentence_id", t.sentence_id},
            {"token_indices", t.token_indices},
            {"form", doc.target_form(t)},
            {"kind", to_string(t.kind)},
            {"annotator", t.annotator},
            {"group", "T" + std::to_string(t.group)},
            {"label", to_json(t.label)}};
  j["np_span"] = t.np_span ? json::array({t.np_span->first, t.np_span->last}) : json(nullptr);
  return j;
}

json to_json(const AnnotatedDocument& doc) {
  json sentences = json::array();
  for (const Sentence& s : doc.sentences) {
    json tokens = json::array();
    for (const Token& t : s.tokens) {
      tokens.push_back({{"index", t.index}, {"form", t.form}, {"pos", t.pos}});
    }
    sentences.push_back({{"sent_id", s.id}, {"tokens", std::move(tokens)}});
  }
  json annotations = json::array();
  for (const TargetAnnotation& t : doc.annotations) annotations.push_back(to_json(t, doc));
  return {{"doc_id", doc.doc_id},
          {"language", to_string(doc.language)},
          {"annotators", doc.annotators()},
          {"sentences", std::move(sentences)},
          {"annotations", std::move(annotations)}};
}

json to_json(const TargetCandidate& c, const AnnotatedDocument& doc) {
  std::string form;
  if (const Sentence* s = doc.sentence(c.sentence_id)) {
    for (int i : c.token_indices) {
      if (!form.empty()) form += ' ';
      if (const Token* t = s->token(i)) form += t->form;
    }
  }
  return {{"sentence_id", c.sentence_id}, {"token_indices", c.token_indices},
          {"form", form}, {"kind", to_string(c.kind)}, {"rationale", c.rationale}};
}

json to_json(const TargetDiff& d) {
  const auto spans = [](const std::vector<TargetSpan>& v) {
    json out = json::array();
    for (const TargetSpan& s : v) {
      out.push_back({{"sentence_id", s.sentence_id}, {"token_indices", s.token_indices}});
    }
    return out;
  };
  return {{"gold", d.gold_count},          {"predicted", d.predicted_count},
          {"true_positives", d.true_positives}, {"precision", d.precision},
          {"recall", d.recall},            {"f1", d.f1},
          {"missing", spans(d.missing)},   {"spurious", spans(d.spurious)}};
}

json to_json(const Violation& v, std::size_t line) {
  return {{"code", to_string(v.code)}, {"line", line},
          {"sentence_id", v.sentence_id}, {"token_index", v.token_index},
          {"annotator", v.annotator}, {"message", v.message}};
}

json to_json(const AgreementReport& r) {
  json pairs = json::array();
  for (const auto& [ab, k] : r.kappa_pairwise) {
    pairs.push_back({{"a", ab.first}, {"b", ab.second}, {"kappa", k}});
  }
  return {{"projection", to_string(r.projection)},
          {"n_items", r.n_items},
          {"excluded_items", r.excluded_items},
          {"raw", r.raw},
          {"raw_all_agree", r.raw_all_agree},
          {"kappa_pairwise", std::move(pairs)},
          {"kappa_mean", r.kappa_mean}};
}

json to_json(const AlignmentPair& p, const AnnotatedDocument& en, const AnnotatedDocument& zh) {
  return {{"unit_id", p.unit_id},
          {"en", to_json(p.en_target, en)},
          {"zh", to_json(p.zh_target, zh)},
          {"source", to_string(p.source)},
          {"evidence", p.evidence}};
}

namespace {

json optional_rate(const std::optional<double>& r) { return r ? json(*r) : json(nullptr); }

std::string percent_or_dash(const std::optional<double>& r, std::size_t num, std::size_t den) {
  return r ? std::to_string(rounded_percent(num, den)) + "%" : std::string("-");
}

}  // namespace

json to_json(const MatchReport& r) {
  return {{"pair_counting",
           {{"n_pairs", r.n_pairs},
            {"scene_matches", r.scene_matches},
            {"function_matches", r.function_matches},
            {"scene_match_rate", optional_rate(r.scene_match_rate)},
            {"function_match_rate", optional_rate(r.function_match_rate)}}},
          {"en_target_counting",
           {{"n_en_targets", r.n_en_targets},
            {"scene_matches", r.en_scene_matches},
            {"function_matches", r.en_function_matches},
            {"scene_match_rate", optional_rate(r.en_scene_match_rate)},
            {"function_match_rate", optional_rate(r.en_function_match_rate)}}},
          {"special_excluded", r.n_special_excluded}};
}

json to_json(const IdentityRate& r) {
  return {{"same", r.same_count}, {"total", r.total_count},
          {"rate", optional_rate(r.rate)}, {"percent", r.percent()}};
}

json to_json(const CrossTab& t) {
  json rows = json::object();
  json columns = json::object();
  for (Subhierarchy f : kSubhierarchies) {
    json row = json::object();
    for (Subhierarchy s : kSubhierarchies) row[std::string(abbreviation(s))] = t.at(f, s);
    row["total"] = t.row_total(f);
    rows[std::string(abbreviation(f))] = std::move(row);
    columns[std::string(abbreviation(f))] = t.column_total(f);
  }
  return {{"rows_are", "function"},         {"columns_are", "scene"},
          {"rows", std::move(rows)},        {"column_totals", std::move(columns)},
          {"total", t.total()},             {"diagonal", t.diagonal_total()},
          {"off_diagonal", t.offdiagonal_total()}};
}

json to_json(const DivergenceReport& r) {
  json forms = json::array();
  for (const AdpositionDivergence& f : r.forms) {
    json construals = json::array();
    for (const auto& [c, n] : f.construals) {
      construals.push_back({{"scene", c.scene}, {"function", c.function}, {"count", n}});
    }
    forms.push_back({{"form", f.form}, {"tokens", f.tokens}, {"divergent", f.divergent},
                     {"construals", std::move(construals)}});
  }
  return {{"forms", std::move(forms)},
          {"divergent_tokens", r.divergent_tokens},
          {"identity_tokens", r.identity_tokens},
          {"forms_among_divergent", r.forms_among_divergent},
          {"forms_among_identity", r.forms_among_identity}};
}

json to_json(const ConstrualInventory& inv) {
  json ranked = json::array();
  for (const auto& [c, n] : inv.ranked()) {
    ranked.push_back({{"scene", c.scene}, {"function", c.function}, {"count", n}});
  }
  return {{"n_tokens", inv.n_tokens},
          {"n_construal_types", inv.n_construal_types()},
          {"n_distinct_scene_labels", inv.n_distinct_scene_labels()},
          {"n_distinct_function_labels", inv.n_distinct_function_labels()},
          {"construals", std::move(ranked)},
          {"specials", inv.special_counts}};
}

json stats_json(const AnnotatedDocument& doc, const std::string& annotator,
                std::span<const TargetAnnotation> layer, const Hierarchy& h) {
  return {{"doc_id", doc.doc_id},
          {"language", to_string(doc.language)},
          {"annotator", annotator},
          {"identity_rate", to_json(identity_rate(layer))},
          {"crosstab", to_json(subhierarchy_crosstab(layer, h))},
          {"inventory", to_json(construal_inventory(layer))},
          {"divergence", to_json(divergence_by_adposition(doc, layer))}};
}

std::string render_identity_rate(const IdentityRate& r, const std::string& row_label) {
  std::ostringstream out;
  out << "Role vs. Function:\tSame\tTotal\n";
  out << row_label << '\t' << r.same_count << " (" << r.percent() << "%)\t" << r.total_count
      << '\n';
  return out.str();
}

std::string render_crosstab(const CrossTab& t) {
  std::ostringstream out;
  out << "Func \\ Scene\tCIRC\tPART\tCONF\tTotal\n";
  for (Subhierarchy f : kSubhierarchies) {
    out << abbreviation(f);
    for (Subhierarchy s : kSubhierarchies) out << '\t' << t.at(f, s);
    out << '\t' << t.row_total(f) << '\n';
  }
  out << "Total";
  for (Subhierarchy s : kSubhierarchies) out << '\t' << t.column_total(s);
  out << '\t' << t.total() << '\n';
  out << "Diagonal\t" << t.diagonal_total() << '\n';
  out << "Off-diagonal\t" << t.offdiagonal_total() << '\n';
  return out.str();
}

std::string render_inventory(const ConstrualInventory& inv) {
  std::ostringstream out;
  out << "tokens " << inv.n_tokens << ", construal types " << inv.n_construal_types()
      << ", scene labels " << inv.n_distinct_scene_labels() << ", function labels "
      << inv.n_distinct_function_labels() << '\n';
  for (const auto& [c, n] : inv.ranked()) {
    out << n << '\t' << c.scene << "⇝" << c.function << '\n';
  }
  for (const auto& [s, n] : inv.special_counts) out << n << '\t' << s << '\n';
  return out.str();
}

std::string render_divergence(const DivergenceReport& r) {
  std::ostringstream out;
  out << "form\ttokens\tdivergent\tconstruals\n";
  for (const AdpositionDivergence& f : r.forms) {
    out << f.form << '\t' << f.tokens << '\t' << f.divergent << '\t' << f.construals.size()
        << '\n';
  }
  out << "distinct forms among divergent tokens: " << r.forms_among_divergent << '\n';
  out << "distinct forms among identity tokens: " << r.forms_among_identity << '\n';
  return out.str();
}

std::string render_agreement(const std::vector<AgreementReport>& reports) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(3);
  out << "projection\titems\texcluded\traw\traw(all)\tkappa(mean)\n";
  for (const AgreementReport& r : reports) {
    out << to_string(r.projection) << '\t' << r.n_items << '\t' << r.excluded_items << '\t'
        << r.raw << '\t' << r.raw_all_agree << '\t' << r.kappa_mean << '\n';
    for (const auto& [ab, k] : r.kappa_pairwise) {
      out << "  kappa " << ab.first << '/' << ab.second << '\t' << k << '\n';
    }
  }
  return out.str();
}

std::string render_match(const MatchReport& r) {
  std::ostringstream out;
  out << "aligned pairs: " << r.n_pairs << " (special-label pairs excluded: "
      << r.n_special_excluded << ")\n";
  out << "same scene role: " << r.scene_matches << " ("
      << percent_or_dash(r.scene_match_rate, r.scene_matches, r.n_pairs) << ")\n";
  out << "same function: " << r.function_matches << " ("
      << percent_or_dash(r.function_match_rate, r.function_matches, r.n_pairs) << ")\n";
  out << "per English target: " << r.n_en_targets << " targets, scene "
      << percent_or_dash(r.en_scene_match_rate, r.en_scene_matches, r.n_en_targets)
      << ", function "
      << percent_or_dash(r.en_function_match_rate, r.en_function_matches, r.n_en_targets)
      << '\n';
  return out.str();
}

}  // namespace snacs
