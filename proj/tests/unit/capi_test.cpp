/*
 * Copyright 2026 The Jager Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <jager/jager.h>

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <string>

namespace {

namespace fs = std::filesystem;

std::string Take(char* s) {
  std::string out = s ? s : "";
  jager_string_free(s);
  return out;
}

class CApiTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("jager_capi_" + std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    keys_ = (dir_ / "keys.json").string();
    ASSERT_EQ(jager_config_load(nullptr, &config_), JAGER_OK);
    const nlohmann::json overrides{{"key_file", keys_}, {"ta_port", 0}, {"rs_port", 0}, {"trace_limit", 100}};
    ASSERT_EQ(jager_config_merge(config_, overrides.dump().c_str()), JAGER_OK);
  }

  void TearDown() override {
    jager_config_free(config_);
    fs::remove_all(dir_);
  }

  void SetPorts(int ta, int rs) {
    const nlohmann::json urls{{"ta_url", "http://127.0.0.1:" + std::to_string(ta)},
                              {"rs_url", "http://127.0.0.1:" + std::to_string(rs)}};
    ASSERT_EQ(jager_config_merge(config_, urls.dump().c_str()), JAGER_OK);
  }

  fs::path dir_;
  std::string keys_;
  jager_config* config_ = nullptr;
};

TEST_F(CApiTest, StatusNamesAndLastError) {
  EXPECT_STREQ(jager_status_name(JAGER_OK), "ok");
  EXPECT_STREQ(jager_status_name(JAGER_ERR_RATE_LIMITED), "rate_limited");
  EXPECT_EQ(jager_keygen(nullptr, JAGER_ROLE_ALL), JAGER_ERR_INVALID_ARGUMENT);
  EXPECT_STRNE(jager_last_error(), "");
  EXPECT_EQ(jager_keygen(keys_.c_str(), 0x10), JAGER_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(jager_keygen(keys_.c_str(), JAGER_ROLE_ALL), JAGER_OK);
  EXPECT_STREQ(jager_last_error(), "");
  EXPECT_EQ(jager_config_merge(config_, "[1]"), JAGER_ERR_MALFORMED);
  EXPECT_EQ(jager_config_merge(config_, "{\"ta_port\":\"x\"}"), JAGER_ERR_MALFORMED);
}

TEST_F(CApiTest, KeygenAddsGroupsIncrementally) {
  ASSERT_EQ(jager_keygen(keys_.c_str(), JAGER_ROLE_LABEL_MANAGER), JAGER_OK);
  char* raw = nullptr;
  ASSERT_EQ(jager_keyfile_describe(keys_.c_str(), &raw), JAGER_OK);
  auto j = nlohmann::json::parse(Take(raw));
  EXPECT_TRUE(j["label_manager"]);
  EXPECT_FALSE(j["group_manager"]);
  ASSERT_EQ(jager_keygen(keys_.c_str(), JAGER_ROLE_GROUP_MANAGER | JAGER_ROLE_TRACE_AUTHORITY), JAGER_OK);
  ASSERT_EQ(jager_keyfile_describe(keys_.c_str(), &raw), JAGER_OK);
  j = nlohmann::json::parse(Take(raw));
  EXPECT_TRUE(j["label_manager"]);
  EXPECT_TRUE(j["group_manager"]);
  EXPECT_TRUE(j["trace_authority"]);
  EXPECT_FALSE(j["record_store"]);
}

TEST_F(CApiTest, TaNeedsKeys) {
  jager_ta_server* ta = nullptr;
  EXPECT_EQ(jager_ta_server_create(config_, &ta), JAGER_ERR_IO);
  ASSERT_EQ(jager_keygen(keys_.c_str(), JAGER_ROLE_LABEL_MANAGER), JAGER_OK);
  EXPECT_EQ(jager_ta_server_create(config_, &ta), JAGER_ERR_NOT_FOUND);
  EXPECT_EQ(ta, nullptr);
}

TEST_F(CApiTest, ContributeAndTraceOverHttp) {
  ASSERT_EQ(jager_keygen(keys_.c_str(), JAGER_ROLE_ALL), JAGER_OK);
  jager_ta_server* ta = nullptr;
  ASSERT_EQ(jager_ta_server_create(config_, &ta), JAGER_OK) << jager_last_error();
  ASSERT_EQ(jager_ta_server_start(ta), JAGER_OK);
  SetPorts(jager_ta_server_port(ta), 0);
  jager_rs_server* rs = nullptr;
  ASSERT_EQ(jager_rs_server_create(config_, &rs), JAGER_OK) << jager_last_error();
  ASSERT_EQ(jager_rs_server_start(rs), JAGER_OK);
  SetPorts(jager_ta_server_port(ta), jager_rs_server_port(rs));

  const std::string cred = (dir_ / "cred.json").string();
  const uint64_t path[] = {11, 12, 13};
  const uint64_t ts = 1'700'000'000'000;
  for (size_t i = 0; i < 3; ++i) {
    jager_client* c = nullptr;
    ASSERT_EQ(jager_client_create(config_, path[i], &c), JAGER_OK) << jager_last_error();
    ASSERT_EQ(jager_client_enroll(c, cred.c_str()), JAGER_OK) << jager_last_error();
    int accepted = 0;
    ASSERT_EQ(jager_client_contribute(c, "202-555-0100", "3035550199", ts + 100 * i, i == 0 ? 0 : path[i - 1],
                                      i == 2 ? UINT64_MAX : path[i + 1], &accepted),
              JAGER_OK)
        << jager_last_error();
    EXPECT_EQ(accepted, 1);
    jager_client_free(c);
  }
  EXPECT_EQ(jager_rs_server_record_count(rs), 3u);

  jager_client* again = nullptr;
  ASSERT_EQ(jager_client_create(config_, 12, &again), JAGER_OK);
  EXPECT_EQ(jager_client_enroll(again, cred.c_str()), JAGER_OK);
  EXPECT_EQ(jager_client_enroll(again, nullptr), JAGER_ERR_ALREADY_EXISTS);
  jager_client_free(again);

  jager_client* tracer = nullptr;
  ASSERT_EQ(jager_client_create(config_, 13, &tracer), JAGER_OK);
  ASSERT_EQ(jager_client_enroll(tracer, cred.c_str()), JAGER_OK);
  char* raw = nullptr;
  ASSERT_EQ(jager_client_trace(tracer, "2025550100", "3035550199", ts, JAGER_TRACE_OPEN, &raw), JAGER_OK)
      << jager_last_error();
  const auto j = nlohmann::json::parse(Take(raw));
  EXPECT_EQ(j["status"], "ok");
  EXPECT_EQ(j["labels_queried"], 21);
  EXPECT_EQ(j["report"]["path"], (std::vector<uint64_t>{11, 12, 13}));
  EXPECT_EQ(j["report"]["origin"]["selected"], 11);
  EXPECT_FALSE(j.contains("accountability"));
  EXPECT_EQ(jager_client_trace(tracer, "bad", "3035550199", ts, 0, &raw), JAGER_ERR_MALFORMED);

  int changed = -1;
  ASSERT_EQ(jager_rs_server_refresh(rs, &changed), JAGER_OK);
  EXPECT_EQ(changed, 0);
  ASSERT_EQ(jager_ta_server_revoke(ta, 12), JAGER_OK);
  ASSERT_EQ(jager_rs_server_refresh(rs, &changed), JAGER_OK);
  EXPECT_EQ(changed, 1);

  ASSERT_EQ(jager_ta_server_save(ta), JAGER_OK);
  ASSERT_EQ(jager_keyfile_describe(keys_.c_str(), &raw), JAGER_OK);
  EXPECT_EQ(nlohmann::json::parse(Take(raw))["group_members"], (std::vector<uint64_t>{11, 13}));

  jager_client_free(tracer);
  jager_rs_server_free(rs);
  jager_ta_server_free(ta);
}

TEST_F(CApiTest, ClientWithoutServiceIsUnavailable) {
  SetPorts(1, 1);
  jager_client* c = nullptr;
  ASSERT_EQ(jager_client_create(config_, 5, &c), JAGER_ERR_UNAVAILABLE);
  EXPECT_EQ(c, nullptr);
}

TEST_F(CApiTest, Datagen) {
  jager_datagen_params p;
  jager_datagen_defaults(&p);
  EXPECT_EQ(p.carriers, 7000u);
  p.carriers = 30;
  p.subscribers = 200;
  p.calls = 10;
  const std::string out = (dir_ / "data").string();
  ASSERT_EQ(jager_datagen(&p, out.c_str()), JAGER_OK) << jager_last_error();
  for (const char* f : {"carriers.csv", "subscribers.csv", "cdrs.csv", "ledger.json"}) {
    EXPECT_TRUE(fs::exists(dir_ / "data" / f)) << f;
  }
  std::ifstream cdrs(dir_ / "data" / "cdrs.csv");
  std::string header;
  std::getline(cdrs, header);
  EXPECT_EQ(header, "src,dst,ts,prev,cur,next");
  std::ifstream ledger(dir_ / "data" / "ledger.json");
  EXPECT_EQ(nlohmann::json::parse(ledger)["calls"].size(), 10u);
  p.carriers = 2;
  EXPECT_EQ(jager_datagen(&p, out.c_str()), JAGER_ERR_INVALID_ARGUMENT);
}

TEST_F(CApiTest, Evaluation) {
  double bps = 0;
  ASSERT_EQ(jager_bandwidth_bps(50'000, 15'200, 0, 0, 1, &bps), JAGER_OK);
  EXPECT_DOUBLE_EQ(bps, 760e6);
  EXPECT_EQ(jager_bandwidth_bps(1, 1, 1, 0, 0, &bps), JAGER_ERR_INVALID_ARGUMENT);

  char* raw = nullptr;
  EXPECT_EQ(jager_bench(keys_.c_str(), 2, 1, &raw), JAGER_ERR_IO);
  ASSERT_EQ(jager_keygen(keys_.c_str(), JAGER_ROLE_ALL), JAGER_OK);
  ASSERT_EQ(jager_bench(keys_.c_str(), 2, 1, &raw), JAGER_OK) << jager_last_error();
  const std::string csv = Take(raw);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "task,mean_ms,min_ms,max_ms,std_ms");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);

  const double adoption[] = {0.05, 1.0};
  jager_simulate_params sp{};
  sp.carriers = 200;
  sp.carrier_edges = 2;
  sp.adoption = adoption;
  sp.adoption_count = 2;
  sp.robocaller_share = 0.1;
  sp.calls = 100;
  sp.seeds = 2;
  sp.first_seed = 1;
  sp.rank_key = "strength";
  ASSERT_EQ(jager_simulate(&sp, &raw), JAGER_OK) << jager_last_error();
  const std::string sim = Take(raw);
  EXPECT_NE(sim.find("1.000000,0.100000,1.000000,2"), std::string::npos) << sim;
  sp.rank_key = "mass";
  EXPECT_EQ(jager_simulate(&sp, &raw), JAGER_ERR_INVALID_ARGUMENT);

  const size_t sizes[] = {50, 100};
  const std::string log = (dir_ / "growth.log").string();
  ASSERT_EQ(jager_storage_growth(log.c_str(), sizes, 2, 10, 1, &raw), JAGER_OK) << jager_last_error();
  const std::string growth = Take(raw);
  EXPECT_EQ(std::count(growth.begin(), growth.end(), '\n'), 3);
}

}  // namespace
