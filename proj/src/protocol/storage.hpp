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

#ifndef JAGER_PROTOCOL_STORAGE_HPP_
#define JAGER_PROTOCOL_STORAGE_HPP_

#include <functional>
#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <vector>

#include "protocol/record.hpp"

namespace jager {

// Backing store for the record store. Implementations are thread-safe and
// make an appended record visible to every Lookup that starts after
// Append returns.
class RecordStorage {
 public:
  virtual ~RecordStorage() = default;
  virtual void Append(const Record& record) = 0;
  virtual std::vector<Record> Lookup(const Digest& idx) const = 0;
  virtual size_t size() const = 0;
  virtual void ForEach(const std::function<void(const Record&)>& fn) const = 0;
};

class MemoryStorage : public RecordStorage {
 public:
  void Append(const Record& record) override;
  std::vector<Record> Lookup(const Digest& idx) const override;
  size_t size() const override;
  void ForEach(const std::function<void(const Record&)>& fn) const override;

 private:
  mutable std::shared_mutex mu_;
  std::map<Digest, std::vector<Record>> rows_;
  size_t count_ = 0;
};

// Append-only file of fixed-size record frames with an in-memory index of
// offsets. A torn frame at the tail (from a crash mid-write) is discarded
// on open.
class LogStorage : public RecordStorage {
 public:
  static std::unique_ptr<LogStorage> Open(const std::string& path, bool sync_each_append = false);
  ~LogStorage() override;

  void Append(const Record& record) override;
  std::vector<Record> Lookup(const Digest& idx) const override;
  size_t size() const override;
  void ForEach(const std::function<void(const Record&)>& fn) const override;

 private:
  LogStorage(int fd, bool sync) : fd_(fd), sync_(sync) {}
  Record ReadAt(uint64_t offset) const;

  int fd_;
  bool sync_;
  mutable std::shared_mutex mu_;
  std::map<Digest, std::vector<uint64_t>> offsets_;
  uint64_t end_ = 0;
};

}  // namespace jager

#endif  // JAGER_PROTOCOL_STORAGE_HPP_
