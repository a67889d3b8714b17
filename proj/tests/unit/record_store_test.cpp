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

#include "protocol/record_store.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "common/error.hpp"

namespace jager {
namespace {

using namespace crypto;

class RecordStoreTest : public ::testing::Test {
 protected:
  RecordStoreTest()
      : rng_(Rng::Seeded(60)),
        gm_(GroupManager::Generate(rng_)),
        sig_r_(BlsKeyPair::Generate(rng_)),
        member_(gm_.Join(1)),
        rs_(RecordStore::Setup(gm_.public_key(), sig_r_.vk, rng_, std::make_unique<MemoryStorage>())) {}

  Record MakeRecord(const Digest& idx) {
    Record r;
    r.idx = idx;
    WesMessage key;
    rng_.Fill(key);
    r.ct1 = WesEncrypt(sig_r_.vk, idx, key, rng_);
    rng_.Fill(r.ct2);
    r.gsig = GroupSign(gm_.public_key(), member_, r.SignedPayload(), rng_);
    return r;
  }

  Digest RandomIdx() {
    Digest d;
    rng_.Fill(d);
    return d;
  }

  Rng rng_;
  GroupManager gm_;
  BlsKeyPair sig_r_;
  MemberKey member_;
  std::unique_ptr<RecordStore> rs_;
};

TEST_F(RecordStoreTest, FreshStoreIsEmptyAndKeysMatch) {
  EXPECT_EQ(rs_->storage().size(), 0u);
  EXPECT_EQ(rs_->vk_rs(), G1::Generator() * rs_->sk_rs());
  auto other = RecordStore::Setup(gm_.public_key(), sig_r_.vk, rng_, std::make_unique<MemoryStorage>());
  EXPECT_FALSE(other->vk_rs() == rs_->vk_rs());
}

TEST_F(RecordStoreTest, ValidSubmissionAccepted) {
  const Digest idx = RandomIdx();
  const Record r = MakeRecord(idx);
  EXPECT_EQ(rs_->Contribute(r), ContributeStatus::kAccepted);
  EXPECT_EQ(rs_->storage().size(), 1u);
  const RecordSet set = rs_->Retrieve(5, idx, BlsSign(sig_r_.sk, idx));
  ASSERT_EQ(set.records.size(), 1u);
  EXPECT_EQ(set.records[0].record.SignedPayload(), r.SignedPayload());
  EXPECT_TRUE(set.Verify(rs_->vk_rs()));
  EXPECT_TRUE(BlsVerify(rs_->vk_rs(), r.SignedPayload(), set.records[0].sigma_rs));
}

TEST_F(RecordStoreTest, TamperedSubmissionRejected) {
  Record r = MakeRecord(RandomIdx());
  r.ct2[3] ^= 0x10;
  EXPECT_EQ(rs_->Contribute(r), ContributeStatus::kRejected);
  Record s = MakeRecord(RandomIdx());
  s.idx[0] ^= 1;
  EXPECT_EQ(rs_->Contribute(s), ContributeStatus::kRejected);
  EXPECT_EQ(rs_->storage().size(), 0u);
}

TEST_F(RecordStoreTest, SharedIndexKeepsAllRecords) {
  const Digest idx = RandomIdx();
  const Record a = MakeRecord(idx);
  const Record b = MakeRecord(idx);
  rs_->Contribute(a);
  rs_->Contribute(b);
  rs_->Contribute(a);
  const RecordSet set = rs_->Retrieve(5, idx, BlsSign(sig_r_.sk, idx));
  EXPECT_EQ(set.records.size(), 3u);
}

TEST_F(RecordStoreTest, RetrievalRequiresMatchingAuthorization) {
  const Digest idx = RandomIdx();
  rs_->Contribute(MakeRecord(idx));
  try {
    rs_->Retrieve(5, idx, BlsSign(sig_r_.sk, RandomIdx()));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnauthenticated);
  }
  auto impostor = BlsKeyPair::Generate(rng_);
  EXPECT_THROW(rs_->Retrieve(5, idx, BlsSign(impostor.sk, idx)), Error);
}

TEST_F(RecordStoreTest, UnknownIndexGivesSignedEmptySet) {
  const Digest idx = RandomIdx();
  const RecordSet set = rs_->Retrieve(5, idx, BlsSign(sig_r_.sk, idx));
  EXPECT_TRUE(set.records.empty());
  EXPECT_TRUE(set.Verify(rs_->vk_rs()));
  RecordSet forged = set;
  forged.idx = RandomIdx();
  EXPECT_FALSE(forged.Verify(rs_->vk_rs()));
}

TEST_F(RecordStoreTest, DroppingARecordBreaksTheSetSignature) {
  const Digest idx = RandomIdx();
  rs_->Contribute(MakeRecord(idx));
  rs_->Contribute(MakeRecord(idx));
  RecordSet set = rs_->Retrieve(5, idx, BlsSign(sig_r_.sk, idx));
  ASSERT_TRUE(set.Verify(rs_->vk_rs()));
  set.records.pop_back();
  EXPECT_FALSE(set.Verify(rs_->vk_rs()));
}

TEST_F(RecordStoreTest, LookupQuotaEnforced) {
  uint64_t now = 1000;
  RecordStoreConfig cfg;
  cfg.trace_limit = 3;
  cfg.clock = [&now] { return now; };
  RecordStore rs(BlsKeyPair::Generate(rng_), gm_.public_key(), sig_r_.vk,
                 std::make_unique<MemoryStorage>(), cfg);
  const Digest idx = RandomIdx();
  const auto sig = BlsSign(sig_r_.sk, idx);
  for (int i = 0; i < 3; ++i) rs.Retrieve(7, idx, sig);
  try {
    rs.Retrieve(7, idx, sig);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRateLimited);
  }
  rs.Retrieve(8, idx, sig);
  now += kDayMs;
  rs.Retrieve(7, idx, sig);
}

TEST_F(RecordStoreTest, StoredRecordsAllVerifyAndCarryNoCarrierId) {
  std::vector<Record> shadow;
  for (int i = 0; i < 10; ++i) {
    Record r = MakeRecord(RandomIdx());
    if (i % 3 == 0) r.ct2[0] ^= 1;
    if (rs_->Contribute(r) == ContributeStatus::kAccepted) shadow.push_back(r);
  }
  EXPECT_EQ(rs_->storage().size(), shadow.size());
  rs_->storage().ForEach([&](const Record& r) {
    EXPECT_TRUE(GroupVerify(gm_.public_key(), r.SignedPayload(), r.gsig));
    // The member id is 1; its 8-byte encoding must not appear.
    Bytes id_bytes;
    AppendU64(id_bytes, member_.id);
    const Bytes wire = r.ToBytes();
    EXPECT_EQ(std::search(wire.begin(), wire.end() - 8, id_bytes.begin(), id_bytes.end()), wire.end() - 8);
  });
  for (const auto& r : shadow) {
    const auto set = rs_->Retrieve(5, r.idx, BlsSign(sig_r_.sk, r.idx));
    ASSERT_EQ(set.records.size(), 1u);
    EXPECT_EQ(set.records[0].record.ToBytes().size(), Record::kBytes);
  }
}

TEST_F(RecordStoreTest, LogStorageSurvivesReopenAndTornTail) {
  const std::string path = ::testing::TempDir() + "jager_log_test.db";
  std::remove(path.c_str());
  const Digest idx = RandomIdx();
  const Record a = MakeRecord(idx);
  const Record b = MakeRecord(RandomIdx());
  {
    auto log = LogStorage::Open(path);
    log->Append(a);
    log->Append(b);
    EXPECT_EQ(log->size(), 2u);
  }
  {
    std::ofstream torn(path, std::ios::app | std::ios::binary);
    torn << "partial frame";
  }
  auto log = LogStorage::Open(path);
  EXPECT_EQ(log->size(), 2u);
  const auto found = log->Lookup(idx);
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found[0].ToBytes(), a.ToBytes());
  log->Append(a);
  EXPECT_EQ(log->Lookup(idx).size(), 2u);
  size_t seen = 0;
  log->ForEach([&](const Record&) { ++seen; });
  EXPECT_EQ(seen, 3u);
  std::remove(path.c_str());
}

TEST_F(RecordStoreTest, GroupKeyRotation) {
  gm_.Join(2);
  const Record before = MakeRecord(RandomIdx());
  gm_.Revoke(2);
  member_ = gm_.IssuedKey(1);
  EXPECT_EQ(rs_->Contribute(MakeRecord(RandomIdx())), ContributeStatus::kRejected);
  rs_->SetGroupKey(gm_.public_key());
  EXPECT_EQ(rs_->Contribute(MakeRecord(RandomIdx())), ContributeStatus::kAccepted);
  EXPECT_EQ(rs_->Contribute(before), ContributeStatus::kRejected);
}

}  // namespace
}  // namespace jager
