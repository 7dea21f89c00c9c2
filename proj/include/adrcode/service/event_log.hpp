#pragma once

#include <filesystem>
#include <stdexcept>
#include <vector>

#include "adrcode/serialize.hpp"

namespace adrcode::service {

class StoreError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Append-only JSON-lines file. append() returns only after the line is on
// disk (fsync); a line is the unit of atomicity.
class EventLog {
 public:
  explicit EventLog(std::filesystem::path path) : path_(std::move(path)) {}

  const std::filesystem::path& path() const { return path_; }

  void append(const Json& event) const;

  // Every complete line in order. A torn final line (a write interrupted by
  // a crash, never acknowledged) is cut off the file and ignored; a bad line
  // anywhere else is corruption and throws.
  std::vector<Json> replay() const;

 private:
  std::filesystem::path path_;
};

// fsync a directory so a newly created entry survives a crash.
void sync_directory(const std::filesystem::path& dir);

}  // namespace adrcode::service
