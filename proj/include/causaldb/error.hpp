/*
 * Copyright (c) 2026 The causaldb Authors.
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
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace causaldb {

/// Base class for every error raised by the library. The CLI maps these to
/// exit code 2 (data error) unless the subclass is UsageError.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed input: bad JSON, missing CSV columns, unreadable parquet.
class FormatError : public Error {
 public:
  using Error::Error;
};

class CanonError : public Error {
 public:
  using Error::Error;
};

class NotFound : public Error {
 public:
  using Error::Error;
};

/// Statistic undefined on this atlas (no edges, zero mass, zero median).
class DegenerateAtlas : public Error {
 public:
  using Error::Error;
};

/// Stored tables fail digest, row-count or referential checks.
class CorruptAtlas : public Error {
 public:
  using Error::Error;
};

class VersionError : public Error {
 public:
  using Error::Error;
};

/// Hash collision or conflicting definitions of the same id.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

/// Non-fatal problems collected during ingest and build.
struct Diagnostics {
  std::vector<std::string> warnings;
  std::size_t failed_files = 0;

  void warn(std::string message) { warnings.push_back(std::move(message)); }
};

}  // namespace causaldb
