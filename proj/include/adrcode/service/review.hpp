#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "adrcode/dictionary.hpp"
#include "adrcode/serialize.hpp"
#include "adrcode/service/config.hpp"
#include "adrcode/service/event_log.hpp"
#include "adrcode/textprep.hpp"

namespace adrcode::service {

struct TermRef {
  std::string llt_code;
  std::string llt_text;
  std::string pt_code;
  std::string pt_text;
};

struct Decision {
  std::string target_llt_code;
  std::string action;  // accept | reject | replace
  std::optional<TermRef> replacement;
  std::string decided_at;
};

// Session state is rebuilt from its event log by apply_event; the live path
// goes through the same function after the event is on disk.
struct Session {
  std::string id;
  std::string description;
  std::string created_at;
  std::string dictionary_version;
  std::optional<std::string> validated_at;
  Json proposal;
  std::vector<TermRef> displayed;
  std::vector<Decision> decisions;  // full audit trail, latest wins per target

  bool validated() const { return validated_at.has_value(); }
  // Displayed codes without a decision, in display order.
  std::vector<std::string> pending() const;
  // Accepted terms plus replacements, minus rejected, in display order, no repeats.
  std::vector<TermRef> final_terms() const;
};

void apply_event(Session& session, const Json& event);
Json to_json(const Session& session);

struct Reply {
  int status = 200;
  Json body;
};

using Clock = std::function<std::string()>;

// Current UTC time as ISO 8601 with milliseconds.
std::string utc_now();

// HTTP-independent request handling. Thread-safe: the bundle is shared
// read-only, the session map has its own lock, and each session serializes
// its writers.
class ReviewService {
 public:
  ReviewService(std::shared_ptr<const DictionaryBundle> bundle, ServiceConfig config, StopList negations,
                Clock clock = utc_now);

  Reply health() const;
  Reply encode(std::string_view body) const;
  Reply create_session(std::string_view body);
  Reply add_decision(const std::string& id, std::string_view body);
  Reply validate(const std::string& id);
  Reply get_session(const std::string& id) const;
  Reply search_terms(const std::optional<std::string>& q, const std::optional<std::string>& limit) const;

  std::size_t session_count() const;

 private:
  struct Entry {
    std::mutex mutex;
    Session session;
    EventLog log;
    explicit Entry(EventLog l) : log(std::move(l)) {}
  };
  struct SearchRow {
    std::string folded;
    std::vector<std::pair<std::size_t, std::size_t>> word_starts;  // (byte, char)
    std::size_t length = 0;
  };

  std::optional<Reply> parse_text(std::string_view body, std::string& text) const;
  Json encode_payload(const std::string& text) const;
  Reply error(int status, const std::string& message) const;
  Reply with_version(Reply reply) const;
  std::shared_ptr<Entry> find(const std::string& id) const;
  std::string new_id();
  void replay();

  std::shared_ptr<const DictionaryBundle> bundle_;
  ServiceConfig config_;
  StopList negations_;
  Clock clock_;
  std::vector<SearchRow> search_rows_;

  std::filesystem::path sessions_dir_;
  EventLog index_;
  mutable std::shared_mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::mutex id_mutex_;
};

}  // namespace adrcode::service
