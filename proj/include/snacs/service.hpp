// include/snacs/service.hpp

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
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include <json.hpp>

#include "snacs/corpus.hpp"
#include "snacs/hierarchy.hpp"
#include "snacs/targets.hpp"

namespace httplib {
class Server;
}

namespace snacs {

struct Config {
  std::filesystem::path hierarchy_path;
  std::filesystem::path lexicon_path;  // empty: built-in lexicons
  std::filesystem::path data_dir;      // serve mode: *.tsv documents
  std::string listen_host = "127.0.0.1";
  int port = 8080;
  std::string default_annotator;
};

/// Ships with the source tree; overridable through SNACS_HIERARCHY.
std::filesystem::path default_hierarchy_path();

// FNV-1a of the canonical TSV, as 16 hex digits.
std::string version_token(const std::string& tsv);

struct Response {
  int status = 200;
  nlohmann::json body;
};

/// Backend of the annotation UI. Documents live as canonical TSV files in
/// one directory. Readers take an immutable snapshot without locking;
/// writers are serialized per document and must present the version token
/// of the snapshot they edited (stale tokens get 409).
class Service {
 public:
  Service(Hierarchy hierarchy, Lexicons lexicons, std::filesystem::path data_dir,
          CorpusOptions options = {});

  const Hierarchy& hierarchy() const { return hierarchy_; }

  Response get_hierarchy() const;
  Response list_documents() const;
  Response get_document(const std::string& id) const;
  Response get_targets(const std::string& id) const;
  Response post_annotation(const std::string& id, const std::string& body);
  Response post_validate(const std::string& body) const;
  Response get_stats(const std::string& id, const std::optional<std::string>& annotator) const;
  Response get_iaa(const std::string& id, const std::optional<std::string>& projection,
                   const std::optional<std::string>& annotators) const;

  /// Registers every endpoint on `server`.
  void bind(httplib::Server& server);

 private:
  struct Snapshot {
    AnnotatedDocument doc;
    std::string tsv;
    std::string version;
  };
  struct Slot {
    std::filesystem::path path;
    std::mutex write_mutex;
    std::shared_ptr<const Snapshot> current;
  };

  std::shared_ptr<const Snapshot> snapshot(const std::string& id) const;

  Hierarchy hierarchy_;
  Lexicons lexicons_;
  std::filesystem::path data_dir_;
  CorpusOptions options_;
  std::map<std::string, std::unique_ptr<Slot>> slots_;  // fixed after construction
};

/// Blocks serving HTTP until the process is stopped. Returns nonzero when
/// the address cannot be bound.
int serve(const Config& config);

}  // namespace snacs
