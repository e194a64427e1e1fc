// tools/snacs_main.cpp

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

// snacs: command-line front end for the Chinese adposition supersense
// workbench (validation, target identification, agreement, alignment,
// corpus statistics, and the annotation HTTP service).

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "snacs/agreement.hpp"
#include "snacs/alignment.hpp"
#include "snacs/construal_stats.hpp"
#include "snacs/corpus.hpp"
#include "snacs/error.hpp"
#include "snacs/report.hpp"
#include "snacs/service.hpp"
#include "snacs/targets.hpp"

namespace {

using namespace snacs;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUnreadable = 2;

// Thrown for files that cannot be opened at all.
struct Unreadable {
  std::string path;
};

struct Located {
  std::string path;
  Error error;
};

AnnotatedDocument read_document(const std::string& path, const Hierarchy& h,
                                SourceMap* map = nullptr) {
  std::ifstream in(path);
  if (!in) throw Unreadable{path};
  try {
    return parse_document(in, h, {}, map);
  } catch (const Error& e) {
    throw Located{path, e};
  }
}

void print_error(const std::string& path, const Error& e) {
  std::cout << path << ':' << e.line() << ": " << to_string(e.code()) << ": " << e.what() << '\n';
}

int cmd_validate(const std::vector<std::string>& files, const Hierarchy& h, bool structured) {
  int status = kExitOk;
  json all = json::array();
  for (const std::string& path : files) {
    json entry = {{"file", path}, {"violations", json::array()}};
    std::ifstream in(path);
    if (!in) {
      std::cerr << path << ": cannot read\n";
      return kExitUnreadable;
    }
    SourceMap map;
    try {
      const AnnotatedDocument doc = parse_document(in, h, {}, &map);
      for (const Violation& v : validate_document(doc, h)) {
        const std::size_t line = map.line_for(v.sentence_id, v.token_index, v.annotator);
        if (!structured) {
          std::cout << path << ':' << line << ": " << to_string(v.code) << ": " << v.message
                    << '\n';
        }
        entry["violations"].push_back(to_json(v, line));
        status = kExitFailure;
      }
    } catch (const Error& e) {
      if (!structured) print_error(path, e);
      entry["violations"].push_back({{"code", to_string(e.code())}, {"line", e.line()},
                                     {"sentence_id", ""}, {"token_index", 0},
                                     {"annotator", ""}, {"message", e.what()}});
      status = kExitFailure;
    }
    all.push_back(std::move(entry));
  }
  if (structured) std::cout << json{{"files", all}}.dump(2) << '\n';
  return status;
}

int cmd_targets(const std::string& file, const std::string& lexicon_path, const std::string& gold_path,
                const std::string& gold_annotator, const Hierarchy& h, bool structured) {
  const Lexicons lex = lexicon_path.empty() ? Lexicons::defaults() : Lexicons::load_file(lexicon_path);
  const AnnotatedDocument doc = read_document(file, h);
  const auto candidates = identify_targets(doc, lex);

  json out = {{"doc_id", doc.doc_id}, {"candidates", json::array()}};
  for (const TargetCandidate& c : candidates) out["candidates"].push_back(to_json(c, doc));
  if (!gold_path.empty()) {
    const AnnotatedDocument gold = read_document(gold_path, h);
    const auto layer = select_layer(gold, gold_annotator.empty() ? std::nullopt
                                                                 : std::optional(gold_annotator));
    out["diff"] = to_json(diff_targets(layer, candidates));
  }
  if (structured) {
    std::cout << out.dump(2) << '\n';
    return kExitOk;
  }
  for (const json& c : out["candidates"]) {
    std::cout << c["sentence_id"].get<std::string>() << '\t' << c["token_indices"].dump() << '\t'
              << c["form"].get<std::string>() << '\t' << c["kind"].get<std::string>() << '\t'
              << c["rationale"].get<std::string>() << '\n';
  }
  if (out.contains("diff")) {
    const json& d = out["diff"];
    std::cout << "precision " << d["precision"].get<double>() << " recall "
              << d["recall"].get<double>() << " f1 " << d["f1"].get<double>() << '\n';
  }
  return kExitOk;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string part; std::getline(in, part, ',');) {
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

int cmd_iaa(const std::string& file, const std::string& projection, const std::string& annotators,
            const Hierarchy& h, bool structured) {
  const AnnotatedDocument doc = read_document(file, h);
  std::vector<Projection> wanted;
  if (projection == "all") {
    wanted.assign(std::begin(kProjections), std::end(kProjections));
  } else {
    wanted.push_back(*parse_projection(projection));
  }
  const auto who = annotators.empty() ? doc.annotators() : split_commas(annotators);
  const ComparableItems items = comparable_items(doc, who);
  std::vector<AgreementReport> reports;
  for (Projection p : wanted) reports.push_back(agreement_report(items, p));
  if (structured) {
    json out = {{"doc_id", doc.doc_id}, {"annotators", items.annotators}, {"reports", json::array()}};
    for (const AgreementReport& r : reports) out["reports"].push_back(to_json(r));
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << render_agreement(reports);
  }
  return kExitOk;
}

int cmd_align(const std::string& en_path, const std::string& zh_path, const std::string& manual,
              const std::string& links_path, const AlignOptions& options, const Hierarchy& h,
              bool structured) {
  const AnnotatedDocument en = read_document(en_path, h);
  const AnnotatedDocument zh = read_document(zh_path, h);
  std::vector<AlignmentPair> pairs;
  if (!manual.empty()) {
    std::ifstream in(manual);
    if (!in) throw Unreadable{manual};
    try {
      pairs = load_manual_alignments(in, en, zh);
    } catch (const Error& e) {
      throw Located{manual, e};
    }
  } else {
    std::unique_ptr<WordAlignments> links;
    if (!links_path.empty()) {
      std::ifstream in(links_path);
      if (!in) throw Unreadable{links_path};
      try {
        links = std::make_unique<WordAlignments>(load_word_alignments(in));
      } catch (const Error& e) {
        throw Located{links_path, e};
      }
    }
    pairs = heuristic_align(en, zh, derive_units(en, zh), links.get(), options);
  }
  const MatchReport report = match_rates(pairs);
  if (structured) {
    json out = {{"pairs", json::array()}, {"match", to_json(report)}};
    for (const AlignmentPair& p : pairs) out["pairs"].push_back(to_json(p, en, zh));
    std::cout << out.dump(2) << '\n';
    return kExitOk;
  }
  for (const AlignmentPair& p : pairs) {
    std::cout << p.unit_id << '\t' << en.target_form(p.en_target) << ':'
              << display(p.en_target.label) << '\t' << zh.target_form(p.zh_target) << ':'
              << display(p.zh_target.label) << '\t' << to_string(p.source)
              << (p.evidence.empty() ? "" : "\t" + p.evidence) << '\n';
  }
  std::cout << render_match(report);
  return kExitOk;
}

int cmd_stats(const std::string& file, const std::string& annotator, const Hierarchy& h,
              bool structured) {
  const AnnotatedDocument doc = read_document(file, h);
  const auto layer = select_layer(doc, annotator.empty() ? std::nullopt : std::optional(annotator));
  const std::string who = annotator.empty() && !layer.empty() ? layer.front().annotator : annotator;
  if (structured) {
    std::cout << stats_json(doc, who, layer, h).dump(2) << '\n';
    return kExitOk;
  }
  const std::string row = doc.language == Language::kZh ? "Chinese" : "English";
  std::cout << render_identity_rate(identity_rate(layer), row) << '\n'
            << render_crosstab(subhierarchy_crosstab(layer, h)) << '\n'
            << render_inventory(construal_inventory(layer)) << '\n'
            << render_divergence(divergence_by_adposition(doc, layer));
  return kExitOk;
}

int cmd_hierarchy(const Hierarchy& h, bool structured) {
  if (structured) {
    std::cout << to_json(h).dump(2) << '\n';
    return kExitOk;
  }
  std::cout << "# " << h.version() << ", " << h.size() << " supersenses\n";
  for (Subhierarchy sub : kSubhierarchies) {
    for (const Supersense* s : h.members(sub)) {
      std::cout << std::string(static_cast<std::size_t>(2 * s->depth), ' ') << s->name << '\n';
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SNACS adposition supersense workbench for Mandarin Chinese"};
  app.require_subcommand(1);

  std::string hierarchy_path = default_hierarchy_path().string();
  std::string format = "text";
  app.add_option("--hierarchy", hierarchy_path, "Supersense hierarchy file")->check(CLI::ExistingFile);
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "structured"}));

  std::vector<std::string> validate_files;
  auto* validate = app.add_subcommand("validate", "Check annotation files");
  validate->add_option("files", validate_files, "Annotation TSV files")->required();

  std::string targets_file, lexicon_path, gold_path, gold_annotator;
  auto* targets = app.add_subcommand("targets", "List coverb/localizer target candidates");
  targets->add_option("file", targets_file, "Annotation TSV")->required();
  targets->add_option("--lexicon", lexicon_path, "Lexicon file")->check(CLI::ExistingFile);
  targets->add_option("--gold", gold_path, "Gold annotation TSV to score against");
  targets->add_option("--gold-annotator", gold_annotator, "Annotator layer of the gold file");

  std::string iaa_file, projection = "all", iaa_annotators;
  auto* iaa = app.add_subcommand("iaa", "Inter-annotator agreement");
  iaa->add_option("file", iaa_file, "Multi-annotator TSV")->required();
  iaa->add_option("--projection", projection, "scene, function, construal or all")
      ->check(CLI::IsMember({"scene", "function", "construal", "all"}));
  iaa->add_option("--annotators", iaa_annotators, "Comma-separated annotator ids");

  std::string en_path, zh_path, manual_path, links_path;
  AlignOptions align_options;
  std::string en_annotator, zh_annotator;
  auto* align = app.add_subcommand("align", "Cross-lingual adposition alignment");
  align->add_option("en", en_path, "English annotation TSV")->required();
  align->add_option("zh", zh_path, "Chinese annotation TSV")->required();
  auto* manual_opt = align->add_option("--manual", manual_path, "Manual alignment file");
  auto* links_opt = align->add_option("--links", links_path, "Word-alignment file");
  manual_opt->excludes(links_opt);
  align->add_option("--en-annotator", en_annotator, "English annotator layer");
  align->add_option("--zh-annotator", zh_annotator, "Chinese annotator layer");

  std::string stats_file, stats_annotator;
  auto* stats = app.add_subcommand("stats", "Identity rate, subhierarchy crosstab, inventory");
  stats->add_option("file", stats_file, "Annotation TSV")->required();
  stats->add_option("--annotator", stats_annotator, "Annotator layer");

  Config config;
  std::string data_dir, serve_lexicon;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP/JSON annotation service");
  serve_cmd->add_option("--data", data_dir, "Directory of annotation TSV files")
      ->required()
      ->check(CLI::ExistingDirectory);
  serve_cmd->add_option("--host", config.listen_host, "Listen address");
  serve_cmd->add_option("--port", config.port, "Listen port");
  serve_cmd->add_option("--lexicon", serve_lexicon, "Lexicon file")->check(CLI::ExistingFile);
  serve_cmd->add_option("--annotator", config.default_annotator, "Default annotator id");

  auto* hierarchy_cmd = app.add_subcommand("hierarchy", "Print the supersense hierarchy");

  CLI11_PARSE(app, argc, argv);
  const bool structured = format == "structured";

  try {
    const Hierarchy h = Hierarchy::load_file(hierarchy_path);
    if (validate->parsed()) return cmd_validate(validate_files, h, structured);
    if (targets->parsed()) {
      return cmd_targets(targets_file, lexicon_path, gold_path, gold_annotator, h, structured);
    }
    if (iaa->parsed()) return cmd_iaa(iaa_file, projection, iaa_annotators, h, structured);
    if (align->parsed()) {
      if (!en_annotator.empty()) align_options.en_annotator = en_annotator;
      if (!zh_annotator.empty()) align_options.zh_annotator = zh_annotator;
      return cmd_align(en_path, zh_path, manual_path, links_path, align_options, h, structured);
    }
    if (stats->parsed()) return cmd_stats(stats_file, stats_annotator, h, structured);
    if (hierarchy_cmd->parsed()) return cmd_hierarchy(h, structured);
    if (serve_cmd->parsed()) {
      config.hierarchy_path = hierarchy_path;
      config.lexicon_path = serve_lexicon;
      config.data_dir = data_dir;
      return serve(config);
    }
  } catch (const Unreadable& u) {
    std::cerr << u.path << ": cannot read\n";
    return kExitUnreadable;
  } catch (const Located& l) {
    print_error(l.path, l.error);
    return kExitFailure;
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}
