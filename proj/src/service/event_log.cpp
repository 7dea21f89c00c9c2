#include "adrcode/service/event_log.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

namespace adrcode::service {

namespace {

[[noreturn]] void fail(const std::string& what, const std::filesystem::path& path) {
  throw StoreError(what + " " + path.string() + ": " + std::strerror(errno));
}

class Fd {
 public:
  Fd(const std::filesystem::path& path, int flags) : fd_(::open(path.c_str(), flags | O_CLOEXEC, 0644)) {
    if (fd_ < 0) fail("cannot open", path);
  }
  ~Fd() { ::close(fd_); }
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  int get() const { return fd_; }

 private:
  int fd_;
};

}  // namespace

void EventLog::append(const Json& event) const {
  std::string line = event.dump();
  line.push_back('\n');
  const bool fresh = !std::filesystem::exists(path_);
  Fd fd(path_, O_WRONLY | O_APPEND | O_CREAT);
  for (std::size_t done = 0; done < line.size();) {
    const auto n = ::write(fd.get(), line.data() + done, line.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      fail("cannot write", path_);
    }
    done += static_cast<std::size_t>(n);
  }
  if (::fsync(fd.get()) != 0) fail("cannot sync", path_);
  if (fresh) sync_directory(path_.parent_path());
}

std::vector<Json> EventLog::replay() const {
  std::vector<Json> events;
  std::ifstream in(path_, std::ios::binary);
  if (!in) return events;
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string data = buf.str();

  std::size_t pos = 0;
  while (pos < data.size()) {
    const auto nl = data.find('\n', pos);
    if (nl == std::string::npos) {
      // Unterminated tail: drop it so later appends start on a fresh line.
      in.close();
      std::filesystem::resize_file(path_, pos);
      break;
    }
    const std::string_view line(data.data() + pos, nl - pos);
    if (!line.empty()) {
      try {
        events.push_back(Json::parse(line));
      } catch (const Json::parse_error& e) {
        throw StoreError("corrupt event log " + path_.string() + " at byte " + std::to_string(pos) + ": " + e.what());
      }
    }
    pos = nl + 1;
  }
  return events;
}

void sync_directory(const std::filesystem::path& dir) {
  Fd fd(dir.empty() ? std::filesystem::path(".") : dir, O_RDONLY | O_DIRECTORY);
  if (::fsync(fd.get()) != 0) fail("cannot sync", dir);
}

}  // namespace adrcode::service
