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

#include "protocol/storage.hpp"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <mutex>

#include "common/error.hpp"

namespace jager {

void MemoryStorage::Append(const Record& record) {
  std::unique_lock lock(mu_);
  rows_[record.idx].push_back(record);
  ++count_;
}

std::vector<Record> MemoryStorage::Lookup(const Digest& idx) const {
  std::shared_lock lock(mu_);
  auto it = rows_.find(idx);
  return it == rows_.end() ? std::vector<Record>{} : it->second;
}

size_t MemoryStorage::size() const {
  std::shared_lock lock(mu_);
  return count_;
}

void MemoryStorage::ForEach(const std::function<void(const Record&)>& fn) const {
  std::shared_lock lock(mu_);
  for (const auto& [idx, records] : rows_) {
    for (const auto& r : records) fn(r);
  }
}

namespace {

[[noreturn]] void FailErrno(const std::string& what) {
  Fail(ErrorCode::kIo, what + ": " + std::strerror(errno));
}

void ReadFully(int fd, uint8_t* buf, size_t n, uint64_t offset) {
  while (n > 0) {
    ssize_t got = ::pread(fd, buf, n, static_cast<off_t>(offset));
    if (got < 0 && errno == EINTR) continue;
    if (got <= 0) FailErrno("record log read");
    buf += got;
    n -= static_cast<size_t>(got);
    offset += static_cast<uint64_t>(got);
  }
}

}  // namespace

std::unique_ptr<LogStorage> LogStorage::Open(const std::string& path, bool sync_each_append) {
  int fd = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
  if (fd < 0) FailErrno("open " + path);
  std::unique_ptr<LogStorage> log(new LogStorage(fd, sync_each_append));
  struct stat st;
  if (::fstat(fd, &st) != 0) FailErrno("stat " + path);
  const uint64_t whole = static_cast<uint64_t>(st.st_size) / Record::kBytes * Record::kBytes;
  if (whole != static_cast<uint64_t>(st.st_size) && ::ftruncate(fd, static_cast<off_t>(whole)) != 0) {
    FailErrno("truncate " + path);
  }
  Digest idx;
  for (uint64_t off = 0; off < whole; off += Record::kBytes) {
    ReadFully(fd, idx.data(), idx.size(), off);
    log->offsets_[idx].push_back(off);
  }
  log->end_ = whole;
  return log;
}

LogStorage::~LogStorage() { ::close(fd_); }

void LogStorage::Append(const Record& record) {
  const Bytes frame = record.ToBytes();
  std::unique_lock lock(mu_);
  size_t done = 0;
  while (done < frame.size()) {
    ssize_t put = ::pwrite(fd_, frame.data() + done, frame.size() - done,
                           static_cast<off_t>(end_ + done));
    if (put < 0 && errno == EINTR) continue;
    if (put <= 0) FailErrno("record log write");
    done += static_cast<size_t>(put);
  }
  if (sync_ && ::fdatasync(fd_) != 0) FailErrno("record log sync");
  offsets_[record.idx].push_back(end_);
  end_ += frame.size();
}

Record LogStorage::ReadAt(uint64_t offset) const {
  Bytes frame(Record::kBytes);
  ReadFully(fd_, frame.data(), frame.size(), offset);
  return Record::FromBytes(frame);
}

std::vector<Record> LogStorage::Lookup(const Digest& idx) const {
  std::shared_lock lock(mu_);
  std::vector<Record> out;
  auto it = offsets_.find(idx);
  if (it == offsets_.end()) return out;
  for (uint64_t off : it->second) out.push_back(ReadAt(off));
  return out;
}

size_t LogStorage::size() const {
  std::shared_lock lock(mu_);
  return end_ / Record::kBytes;
}

void LogStorage::ForEach(const std::function<void(const Record&)>& fn) const {
  std::shared_lock lock(mu_);
  for (uint64_t off = 0; off < end_; off += Record::kBytes) fn(ReadAt(off));
}

}  // namespace jager
