/*
 * Copyright 2026 The submine Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SUBMINE_FILE_STORE_HPP
#define SUBMINE_FILE_STORE_HPP

#include <filesystem>
#include <fstream>
#include <iterator>

#include "submine/common.hpp"

namespace submine
{
namespace fs = std::filesystem;

/// Whole-file storage used by task queues. Every call is one random I/O.
class FileStore
{
 public:
  virtual ~FileStore() = default;

  virtual void Write(const fs::path &path, const Bytes &data) = 0;
  virtual Bytes Read(const fs::path &path) = 0;
  virtual void Remove(const fs::path &path) = 0;
};

class DiskFileStore final : public FileStore
{
 public:
  void
  Write(const fs::path &path, const Bytes &data) override
  {
    std::ofstream out{path, std::ios::binary | std::ios::trunc};
    if (!out) throw IoError{"cannot create task file '" + path.string() + "'"};
    out.write(reinterpret_cast<const char *>(data.data()), static_cast<std::streamsize>(data.size()));
    if (!out) throw IoError{"write failure on task file '" + path.string() + "'"};
  }

  Bytes
  Read(const fs::path &path) override
  {
    std::ifstream in{path, std::ios::binary};
    if (!in) throw IoError{"cannot open task file '" + path.string() + "'"};
    Bytes data{std::istreambuf_iterator<char>{in}, std::istreambuf_iterator<char>{}};
    if (in.bad()) throw IoError{"read failure on task file '" + path.string() + "'"};
    return data;
  }

  void
  Remove(const fs::path &path) override
  {
    std::error_code ec;
    fs::remove(path, ec);
    if (ec) throw IoError{"cannot remove task file '" + path.string() + "': " + ec.message()};
  }

  static DiskFileStore &
  Instance()
  {
    static DiskFileStore store;
    return store;
  }
};

}  // namespace submine

#endif  // SUBMINE_FILE_STORE_HPP
