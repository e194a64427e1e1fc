// src/service.cpp

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

#include "snacs/service.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <httplib.h>

#include "snacs/agreement.hpp"
#include "snacs/construal_stats.hpp"
#include "snacs/error.hpp"
#include "snacs/report.hpp"

namespace snacs {

std::filesystem::path default_hierarchy_path() {
  if (const char* env = std::getenv("SNACS_HIERARCHY"); env != nullptr && *env != '\0') {
    return env;
  }
  return std::filesystem::path(SNACS_DATA_DIR) / "snacs_v2.tsv";
}

std::string version_token(const std::string& tsv) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : tsv) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << hash;
  return out.str();
}

namespace {

Response error_response(int status, const std::string& message, json violations = json::array()) {
  return {status, {{"error", message}, {"violations", std::move(violations)}}};
}

json violations_json(const std::vector<Violation>& vs) {
  json out = json::array();
  for (const Violation& v : vs) out.push_back(to_json(v));
  return out;
}

void write_atomically(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

Service::Service(Hierarchy hierarchy, Lexicons lexicons, std::filesystem::path data_dir,
                 CorpusOptions options)
    : hierarchy_(std::move(hierarchy)),
      lexicons_(std::move(lexicons)),
      data_dir_(std::move(data_dir)),
      options_(std::move(options)) {
  if (!std::filesystem::is_directory(data_dir_)) {
    throw Error(ErrorCode::kIo, "data directory " + data_dir_.string() + " does not exist");
  }
  for (const auto& entry : std::filesystem::directory_iterator(data_dir_)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".tsv") continue;
    std::ifstream in(entry.path());
    AnnotatedDocument doc;
    try {
      doc = parse_document(in, hierarchy_, options_);
    } catch (const Error& e) {
      throw Error(e.code(), entry.path().string() + ": " + e.what(), e.line());
    }
    auto slot = std::make_unique<Slot>();
    slot->path = entry.path();
    std::string tsv = write_document(doc);
    std::string version = version_token(tsv);
    slot->current = std::make_shared<const Snapshot>(Snapshot{std::move(doc), std::move(tsv), std::move(version)});
    slots_.emplace(entry.path().stem().string(), std::move(slot));
  }
}

std::shared_ptr<const Service::Snapshot> Service::snapshot(const std::string& id) const {
  const auto it = slots_.find(id);
  if (it == slots_.end()) return nullptr;
  return std::atomic_load(&it->second->current);
}

Response Service::get_hierarchy() const { return {200, to_json(hierarchy_)}; }

Response Service::list_documents() const {
  json docs = json::array();
  for (const auto& [id, slot] : slots_) {
    const auto snap = std::atomic_load(&slot->current);
    docs.push_back({{"id", id},
                    {"doc_id", snap->doc.doc_id},
                    {"language", to_string(snap->doc.language)},
                    {"sentences", snap->doc.sentences.size()},
                    {"version", snap->version}});
  }
  return {200, {{"documents", std::move(docs)}}};
}

Response Service::get_document(const std::string& id) const {
  const auto snap = snapshot(id);
  if (!snap) return error_response(404, "no document " + id);
  json body = to_json(snap->doc);
  body["version"] = snap->version;
  return {200, std::move(body)};
}

Response Service::get_targets(const std::string& id) const {
  const auto snap = snapshot(id);
  if (!snap) return error_response(404, "no document " + id);
  json candidates = json::array();
  for (const TargetCandidate& c : identify_targets(snap->doc, lexicons_)) {
    candidates.push_back(to_json(c, snap->doc));
  }
  return {200, {{"doc_id", snap->doc.doc_id}, {"candidates", std::move(candidates)}}};
}

Response Service::post_annotation(const std::string& id, const std::string& body) {
  const auto slot_it = slots_.find(id);
  if (slot_it == slots_.end()) return error_response(404, "no document " + id);
  Slot& slot = *slot_it->second;

  json req;
  try {
    req = json::parse(body);
  } catch (const json::exception& e) {
    return error_response(400, std::string("malformed JSON: ") + e.what());
  }

  TargetAnnotation target;
  std::string version;
  std::string scene, function;
  try {
    target.sentence_id = req.at("sentence_id").get<std::string>();
    target.token_indices = req.at("token_indices").get<std::vector<int>>();
    const auto kind = parse_target_kind(req.at("kind").get<std::string>());
    if (!kind) return error_response(400, "kind must be COVERB, LOCALIZER or OTHER");
    target.kind = *kind;
    target.annotator = req.at("annotator").get<std::string>();
    version = req.at("version").get<std::string>();
    scene = req.at("scene").get<std::string>();
    if (req.contains("function") && !req["function"].is_null()) {
      function = req["function"].get<std::string>();
    }
    if (req.contains("np_span") && !req["np_span"].is_null()) {
      const auto span = req["np_span"].get<std::vector<int>>();
      if (span.size() != 2) return error_response(400, "np_span must be [first, last]");
      target.np_span = TokenSpan{span[0], span[1]};
    }
  } catch (const json::exception& e) {
    return error_response(400, std::string("bad annotation payload: ") + e.what());
  }
  if (target.annotator.empty() || target.annotator == "_") {
    return error_response(400, "annotator id required");
  }

  const int first_token = target.token_indices.empty() ? 0 : target.token_indices.front();
  const auto label_violation = [&](const std::string& msg) {
    return error_response(
        422, msg,
        violations_json({{ErrorCode::kUnknownSupersense, target.sentence_id, first_token,
                          target.annotator, msg}}));
  };
  bool special = false;
  for (const std::string& s : options_.special_labels) {
    if (s == scene) {
      special = true;
      if (!function.empty() && function != "_") {
        return label_violation("special label " + s + " takes no function");
      }
      target.label = SpecialLabel{s};
    }
  }
  if (!special) {
    const Supersense* sc = hierarchy_.lookup(scene);
    if (sc == nullptr) return label_violation("unknown supersense '" + scene + "'");
    const Supersense* fn = hierarchy_.lookup(function);
    if (fn == nullptr) return label_violation("unknown supersense '" + function + "'");
    target.label = Construal{sc->name, fn->name};
  }

  std::lock_guard<std::mutex> lock(slot.write_mutex);
  const auto current = std::atomic_load(&slot.current);
  if (version != current->version) {
    return {409, {{"error", "stale version token"}, {"version", current->version}}};
  }

  AnnotatedDocument doc = current->doc;
  int max_group = 0;
  TargetAnnotation* existing = nullptr;
  for (TargetAnnotation& t : doc.annotations) {
    if (t.sentence_id != target.sentence_id || t.annotator != target.annotator) continue;
    max_group = std::max(max_group, t.group);
    if (t.token_indices == target.token_indices) existing = &t;
  }
  if (existing != nullptr) {
    target.group = existing->group;
    *existing = target;
  } else {
    target.group = max_group + 1;
    doc.annotations.push_back(target);
  }
  canonicalize(doc);

  const auto violations = validate_document(doc, hierarchy_, options_);
  if (!violations.empty()) {
    return error_response(422, "annotation rejected", violations_json(violations));
  }
  std::string tsv = write_document(doc);
  try {
    // Never persist anything the file reader would refuse.
    std::istringstream check(tsv);
    parse_document(check, hierarchy_, options_);
  } catch (const Error& e) {
    Violation v{e.code(), target.sentence_id, first_token, target.annotator, e.what()};
    return error_response(422, "annotation rejected", violations_json({v}));
  }
  try {
    write_atomically(slot.path, tsv);
  } catch (const std::exception& e) {
    return error_response(500, e.what());
  }
  auto next = std::make_shared<const Snapshot>(Snapshot{std::move(doc), tsv, version_token(tsv)});
  std::atomic_store(&slot.current, std::shared_ptr<const Snapshot>(next));
  return {200, {{"version", next->version}, {"annotation", to_json(target, next->doc)}}};
}

Response Service::post_validate(const std::string& body) const {
  std::string tsv = body;
  if (!body.empty() && body.front() == '{') {
    try {
      tsv = json::parse(body).at("tsv").get<std::string>();
    } catch (const json::exception& e) {
      return error_response(400, std::string("expected {\"tsv\": ...}: ") + e.what());
    }
  }
  std::istringstream in(tsv);
  SourceMap map;
  json violations = json::array();
  try {
    const AnnotatedDocument doc = parse_document(in, hierarchy_, options_, &map);
    for (const Violation& v : validate_document(doc, hierarchy_, options_)) {
      violations.push_back(to_json(v, map.line_for(v.sentence_id, v.token_index, v.annotator)));
    }
  } catch (const Error& e) {
    violations.push_back({{"code", to_string(e.code())}, {"line", e.line()},
                          {"sentence_id", ""}, {"token_index", 0}, {"annotator", ""},
                          {"message", e.what()}});
  }
  const bool valid = violations.empty();
  return {200, {{"valid", valid}, {"violations", std::move(violations)}}};
}

Response Service::get_stats(const std::string& id,
                            const std::optional<std::string>& annotator) const {
  const auto snap = snapshot(id);
  if (!snap) return error_response(404, "no document " + id);
  try {
    const auto layer = select_layer(snap->doc, annotator);
    std::string who = annotator.value_or(layer.empty() ? std::string() : layer.front().annotator);
    return {200, stats_json(snap->doc, who, layer, hierarchy_)};
  } catch (const Error& e) {
    return error_response(400, e.what());
  }
}

Response Service::get_iaa(const std::string& id, const std::optional<std::string>& projection,
                          const std::optional<std::string>& annotators) const {
  const auto snap = snapshot(id);
  if (!snap) return error_response(404, "no document " + id);
  std::vector<Projection> wanted;
  if (!projection || *projection == "all") {
    wanted.assign(std::begin(kProjections), std::end(kProjections));
  } else if (auto p = parse_projection(*projection)) {
    wanted.push_back(*p);
  } else {
    return error_response(400, "projection must be scene, function, construal or all");
  }
  std::vector<std::string> who;
  if (annotators) {
    std::stringstream in(*annotators);
    for (std::string a; std::getline(in, a, ',');) {
      if (!a.empty()) who.push_back(a);
    }
  } else {
    who = snap->doc.annotators();
  }
  try {
    const ComparableItems items = comparable_items(snap->doc, who);
    json reports = json::array();
    for (Projection p : wanted) reports.push_back(to_json(agreement_report(items, p)));
    return {200, {{"doc_id", snap->doc.doc_id}, {"annotators", items.annotators},
                  {"reports", std::move(reports)}}};
  } catch (const Error& e) {
    return error_response(422, e.what());
  }
}

void Service::bind(httplib::Server& server) {
  const auto reply = [](httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json; charset=utf-8");
  };
  const auto param = [](const httplib::Request& req, const char* key) -> std::optional<std::string> {
    if (!req.has_param(key)) return std::nullopt;
    return req.get_param_value(key);
  };

  server.Get("/hierarchy", [this, reply](const httplib::Request&, httplib::Response& res) {
    reply(res, get_hierarchy());
  });
  server.Get("/documents", [this, reply](const httplib::Request&, httplib::Response& res) {
    reply(res, list_documents());
  });
  server.Get(R"(/documents/([^/]+))", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, get_document(req.matches[1]));
  });
  server.Get(R"(/documents/([^/]+)/targets)",
             [this, reply](const httplib::Request& req, httplib::Response& res) {
               reply(res, get_targets(req.matches[1]));
             });
  server.Post(R"(/documents/([^/]+)/annotations)",
              [this, reply](const httplib::Request& req, httplib::Response& res) {
                reply(res, post_annotation(req.matches[1], req.body));
              });
  server.Post("/validate", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, post_validate(req.body));
  });
  server.Get(R"(/documents/([^/]+)/stats)",
             [this, reply, param](const httplib::Request& req, httplib::Response& res) {
               reply(res, get_stats(req.matches[1], param(req, "annotator")));
             });
  server.Get("/iaa", [this, reply, param](const httplib::Request& req, httplib::Response& res) {
    const auto doc = param(req, "doc");
    if (!doc) {
      reply(res, error_response(400, "doc parameter required"));
      return;
    }
    reply(res, get_iaa(*doc, param(req, "projection"), param(req, "annotators")));
  });
}

int serve(const Config& config) {
  const Hierarchy h = Hierarchy::load_file(config.hierarchy_path);
  Lexicons lex = config.lexicon_path.empty() ? Lexicons::defaults()
                                             : Lexicons::load_file(config.lexicon_path);
  Service service(h, std::move(lex), config.data_dir);
  httplib::Server server;
  service.bind(server);
  if (!server.bind_to_port(config.listen_host, config.port)) {
    std::cerr << "cannot bind " << config.listen_host << ':' << config.port << '\n';
    return 3;
  }
  std::cerr << "serving " << config.data_dir << " on " << config.listen_host << ':'
            << config.port << '\n';
  return server.listen_after_bind() ? 0 : 3;
}

}  // namespace snacs
