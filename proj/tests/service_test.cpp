// tests/service_test.cpp

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

#include <gtest/gtest.h>

#include <atomic>
#include <filesystem>
#include <thread>

#include <unistd.h>

#include <httplib.h>

#include "snacs/error.hpp"
#include "snacs/service.hpp"
#include "test_support.hpp"

namespace snacs {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;
using testing::fixture;
using testing::read_file;
using testing::shipped_hierarchy;

class ServiceTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("snacs_service_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    for (const char* name : {"ex2.tsv", "ex10.tsv", "iaa3.tsv", "ex3.tsv"}) {
      fs::copy_file(fixture(name), dir_ / name);
    }
    service_ = std::make_unique<Service>(shipped_hierarchy(), Lexicons::defaults(), dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string version(const std::string& id) { return service_->get_document(id).body.at("version"); }

  json annotation(const std::string& version, const std::string& scene, const json& function) {
    return {{"sentence_id", "zh_ex2"}, {"token_indices", {4}}, {"kind", "LOCALIZER"},
            {"scene", scene},          {"function", function}, {"annotator", "a2"},
            {"version", version}};
  }

  fs::path dir_;
  std::unique_ptr<Service> service_;
};

TEST_F(ServiceTest, HierarchyHasFiftyNodes) {
  const Response r = service_->get_hierarchy();
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(r.body.at("nodes").size(), 50u);
  EXPECT_EQ(r.body.at("count"), 50);
}

TEST_F(ServiceTest, ListsAndFetchesDocuments) {
  const Response list = service_->list_documents();
  EXPECT_EQ(list.body.at("documents").size(), 4u);
  const Response doc = service_->get_document("ex2");
  EXPECT_EQ(doc.status, 200);
  EXPECT_EQ(doc.body.at("doc_id"), "ex2");
  EXPECT_EQ(doc.body.at("version").get<std::string>().size(), 16u);
  EXPECT_EQ(doc.body.at("annotations").size(), 2u);
  EXPECT_EQ(service_->get_document("missing").status, 404);
}

TEST_F(ServiceTest, TargetsEndpoint) {
  const Response r = service_->get_targets("ex3");
  ASSERT_EQ(r.status, 200);
  ASSERT_EQ(r.body.at("candidates").size(), 1u);
  EXPECT_EQ(r.body["candidates"][0].at("form"), "lǐmiàn");
}

TEST_F(ServiceTest, UnknownLabelIs422WithViolation) {
  const std::string before = read_file(dir_ / "ex2.tsv");
  const Response r = service_->post_annotation("ex2", annotation(version("ex2"), "Bogus", "Locus").dump());
  EXPECT_EQ(r.status, 422);
  ASSERT_EQ(r.body.at("violations").size(), 1u);
  EXPECT_EQ(r.body["violations"][0].at("code"), "unknown-supersense");
  EXPECT_EQ(read_file(dir_ / "ex2.tsv"), before);
}

TEST_F(ServiceTest, StaleVersionIs409) {
  const std::string v = version("ex2");
  const Response ok = service_->post_annotation("ex2", annotation(v, "Topic", "Locus").dump());
  ASSERT_EQ(ok.status, 200) << ok.body.dump();
  const Response stale = service_->post_annotation("ex2", annotation(v, "Locus", "Locus").dump());
  EXPECT_EQ(stale.status, 409);
  EXPECT_EQ(stale.body.at("version"), ok.body.at("version"));
}

TEST_F(ServiceTest, ValidPostPersistsCanonicalTsv) {
  const Response r = service_->post_annotation("ex2", annotation(version("ex2"), "topic", "LOCUS").dump());
  ASSERT_EQ(r.status, 200) << r.body.dump();
  EXPECT_EQ(r.body["annotation"]["label"]["scene"], "Topic");  // canonical casing
  EXPECT_EQ(r.body["annotation"]["group"], "T1");
  const std::string on_disk = read_file(dir_ / "ex2.tsv");
  const AnnotatedDocument doc = testing::parse_text(on_disk);
  EXPECT_EQ(write_document(doc), on_disk);
  EXPECT_EQ(doc.layer("a2").size(), 1u);
  EXPECT_EQ(version_token(on_disk), r.body.at("version"));
  EXPECT_EQ(service_->get_document("ex2").body.at("version"), r.body.at("version"));

  // Same span again replaces rather than adds.
  const Response again = service_->post_annotation("ex2", annotation(r.body["version"], "Locus", "Locus").dump());
  ASSERT_EQ(again.status, 200);
  const AnnotatedDocument after = testing::parse_text(read_file(dir_ / "ex2.tsv"));
  ASSERT_EQ(after.layer("a2").size(), 1u);
  EXPECT_EQ(display(after.layer("a2")[0].label), "Locus⇝Locus");
}

TEST_F(ServiceTest, RestartSeesPersistedAnnotation) {
  const Response r = service_->post_annotation("ex2", annotation(version("ex2"), "DISCOURSE", nullptr).dump());
  ASSERT_EQ(r.status, 200) << r.body.dump();
  Service reloaded(shipped_hierarchy(), Lexicons::defaults(), dir_);
  EXPECT_EQ(reloaded.get_document("ex2").body.at("version"), r.body.at("version"));
}

TEST_F(ServiceTest, InvalidPayloads) {
  const std::string v = version("ex2");
  EXPECT_EQ(service_->post_annotation("ex2", "{not json").status, 400);
  EXPECT_EQ(service_->post_annotation("ex2", R"({"sentence_id":"zh_ex2"})").status, 400);
  json bad_kind = annotation(v, "Locus", "Locus");
  bad_kind["kind"] = "ADVERB";
  EXPECT_EQ(service_->post_annotation("ex2", bad_kind.dump()).status, 400);
  EXPECT_EQ(service_->post_annotation("nope", annotation(v, "Locus", "Locus").dump()).status, 404);

  // Localizer kind on a verb is a validation failure, nothing persisted.
  json mismatch = annotation(v, "Locus", "Locus");
  mismatch["token_indices"] = {5};
  const Response r = service_->post_annotation("ex2", mismatch.dump());
  EXPECT_EQ(r.status, 422);
  EXPECT_EQ(r.body["violations"][0]["code"], "kind-pos-mismatch");

  json out_of_range = annotation(v, "Locus", "Locus");
  out_of_range["token_indices"] = {99};
  EXPECT_EQ(service_->post_annotation("ex2", out_of_range.dump()).status, 422);
  EXPECT_EQ(version("ex2"), v);
}

TEST_F(ServiceTest, ValidateEndpoint) {
  const Response good = service_->post_validate(read_file(fixture("ex5.tsv")));
  EXPECT_TRUE(good.body.at("valid").get<bool>());
  const Response bad = service_->post_validate(json{{"tsv", read_file(fixture("bad_label.tsv"))}}.dump());
  EXPECT_FALSE(bad.body.at("valid").get<bool>());
  ASSERT_EQ(bad.body.at("violations").size(), 1u);
  EXPECT_EQ(bad.body["violations"][0]["line"], 8);
  const Response kind = service_->post_validate(read_file(fixture("bad_kind_pos.tsv")));
  EXPECT_EQ(kind.body["violations"][0]["code"], "kind-pos-mismatch");
  EXPECT_EQ(service_->post_validate("{oops").status, 400);
}

TEST_F(ServiceTest, StatsEndpoint) {
  const Response r = service_->get_stats("ex10", std::nullopt);
  ASSERT_EQ(r.status, 200);
  EXPECT_EQ(r.body["identity_rate"]["same"], 1);
  EXPECT_EQ(r.body["identity_rate"]["total"], 2);
  EXPECT_EQ(r.body["identity_rate"]["percent"], 50);
  EXPECT_EQ(r.body["crosstab"]["rows"]["CIRC"]["PART"], 1);
  EXPECT_EQ(service_->get_stats("iaa3", std::nullopt).status, 400);
  EXPECT_EQ(service_->get_stats("iaa3", std::string("a1")).status, 200);
}

TEST_F(ServiceTest, IaaEndpoint) {
  const Response all = service_->get_iaa("iaa3", std::nullopt, std::nullopt);
  ASSERT_EQ(all.status, 200);
  ASSERT_EQ(all.body.at("reports").size(), 3u);
  EXPECT_EQ(all.body["reports"][0]["n_items"], 5);
  const Response one = service_->get_iaa("iaa3", std::string("function"), std::string("a1,a2"));
  ASSERT_EQ(one.body.at("reports").size(), 1u);
  EXPECT_EQ(one.body["reports"][0]["kappa_pairwise"].size(), 1u);
  EXPECT_EQ(service_->get_iaa("iaa3", std::string("bogus"), std::nullopt).status, 400);
  EXPECT_EQ(service_->get_iaa("ex2", std::nullopt, std::nullopt).status, 422);
}

TEST_F(ServiceTest, ConcurrentWritersSerialize) {
  // Eight writers race with the same token; exactly one wins.
  const std::string v = version("ex2");
  std::atomic<int> ok{0}, conflict{0};
  std::vector<std::thread> threads;
  for (int i = 0; i < 8; ++i) {
    threads.emplace_back([&, i] {
      json a = annotation(v, i % 2 ? "Locus" : "Topic", "Locus");
      a["annotator"] = "w" + std::to_string(i);
      const int status = service_->post_annotation("ex2", a.dump()).status;
      (status == 200 ? ok : conflict)++;
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(ok.load(), 1);
  EXPECT_EQ(conflict.load(), 7);
}

TEST_F(ServiceTest, BadDataDirectory) {
  EXPECT_THROW(Service(shipped_hierarchy(), Lexicons::defaults(), dir_ / "absent"), Error);
  fs::copy_file(fixture("bad_label.tsv"), dir_ / "bad_label.tsv");
  EXPECT_THROW(Service(shipped_hierarchy(), Lexicons::defaults(), dir_), Error);
}

TEST_F(ServiceTest, LiveHttpRoundTrip) {
  httplib::Server server;
  service_->bind(server);
  const int port = server.bind_to_any_port("127.0.0.1");
  ASSERT_GT(port, 0);
  std::thread loop([&server] { server.listen_after_bind(); });
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  auto hierarchy = client.Get("/hierarchy");
  ASSERT_TRUE(hierarchy);
  EXPECT_EQ(hierarchy->status, 200);
  EXPECT_EQ(json::parse(hierarchy->body).at("nodes").size(), 50u);

  auto doc = client.Get("/documents/ex2");
  ASSERT_TRUE(doc);
  const std::string v = json::parse(doc->body).at("version");
  auto targets = client.Get("/documents/ex2/targets");
  ASSERT_TRUE(targets);
  EXPECT_EQ(json::parse(targets->body).at("candidates").size(), 2u);

  auto bad = client.Post("/documents/ex2/annotations", annotation(v, "Bogus", "Locus").dump(), "application/json");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 422);
  auto good = client.Post("/documents/ex2/annotations", annotation(v, "Topic", "Locus").dump(), "application/json");
  ASSERT_TRUE(good);
  EXPECT_EQ(good->status, 200);
  auto stale = client.Post("/documents/ex2/annotations", annotation(v, "Topic", "Locus").dump(), "application/json");
  ASSERT_TRUE(stale);
  EXPECT_EQ(stale->status, 409);

  auto stats = client.Get("/documents/ex10/stats");
  ASSERT_TRUE(stats);
  EXPECT_TRUE(json::parse(stats->body).contains("identity_rate"));
  auto iaa = client.Get("/iaa?doc=iaa3&projection=scene");
  ASSERT_TRUE(iaa);
  EXPECT_EQ(iaa->status, 200);
  auto no_doc = client.Get("/iaa");
  ASSERT_TRUE(no_doc);
  EXPECT_EQ(no_doc->status, 400);
  auto validate = client.Post("/validate", read_file(fixture("ex2.tsv")), "text/tab-separated-values");
  ASSERT_TRUE(validate);
  EXPECT_TRUE(json::parse(validate->body).at("valid").get<bool>());
  auto list = client.Get("/documents");
  ASSERT_TRUE(list);
  EXPECT_EQ(json::parse(list->body).at("documents").size(), 4u);

  server.stop();
  loop.join();
}

}  // namespace
}  // namespace snacs
