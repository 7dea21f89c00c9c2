#include "adrcode/service/review.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <random>
#include <set>
#include <tuple>

#include "adrcode/encoder.hpp"
#include "adrcode/unicode.hpp"

namespace adrcode::service {

namespace {

constexpr std::size_t kMaxSearchLimit = 50;
constexpr std::size_t kDefaultSearchLimit = 10;

Json term_json(const TermRef& t) {
  return Json{{"llt_code", t.llt_code}, {"llt_text", t.llt_text}, {"pt_code", t.pt_code}, {"pt_text", t.pt_text}};
}

TermRef term_ref(const Json& j) {
  return TermRef{j.at("llt_code").get<std::string>(), j.at("llt_text").get<std::string>(),
                 j.at("pt_code").get<std::string>(), j.at("pt_text").get<std::string>()};
}

TermRef term_ref(const Term& t) { return TermRef{t.code, t.text, t.pt_code, t.pt_text}; }

Json span_json(const Span& s) { return Json::array({s.begin, s.end}); }

bool valid_id(const std::string& id) {
  return id.size() == 32 && std::all_of(id.begin(), id.end(), [](char c) {
           return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
         });
}

const Decision* latest_for(const std::vector<Decision>& decisions, const std::string& code) {
  for (auto it = decisions.rbegin(); it != decisions.rend(); ++it)
    if (it->target_llt_code == code) return &*it;
  return nullptr;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[40];
  std::snprintf(out, sizeof out, "%s.%03lldZ", buf, static_cast<long long>(ms));
  return out;
}

std::vector<std::string> Session::pending() const {
  std::vector<std::string> out;
  for (const auto& t : displayed)
    if (!latest_for(decisions, t.llt_code)) out.push_back(t.llt_code);
  return out;
}

std::vector<TermRef> Session::final_terms() const {
  std::vector<TermRef> out;
  std::set<std::string> seen;
  for (const auto& t : displayed) {
    const Decision* d = latest_for(decisions, t.llt_code);
    if (!d || d->action == "reject") continue;
    const TermRef& chosen = d->action == "replace" ? *d->replacement : t;
    if (seen.insert(chosen.llt_code).second) out.push_back(chosen);
  }
  return out;
}

void apply_event(Session& s, const Json& event) {
  const auto type = event.at("type").get<std::string>();
  if (type == "created") {
    s.id = event.at("session_id").get<std::string>();
    s.description = event.at("description").get<std::string>();
    s.created_at = event.at("created_at").get<std::string>();
    s.dictionary_version = event.at("dictionary_version").get<std::string>();
    s.proposal = event.at("proposal");
    s.displayed.clear();
    for (const auto& t : event.at("displayed")) s.displayed.push_back(term_ref(t));
  } else if (type == "decision") {
    Decision d;
    d.target_llt_code = event.at("target_llt_code").get<std::string>();
    d.action = event.at("action").get<std::string>();
    if (event.contains("replacement")) d.replacement = term_ref(event.at("replacement"));
    d.decided_at = event.at("decided_at").get<std::string>();
    s.decisions.push_back(std::move(d));
  } else if (type == "validated") {
    s.validated_at = event.at("validated_at").get<std::string>();
  } else {
    throw StoreError("unknown event type '" + type + "'");
  }
}

Json to_json(const Session& s) {
  Json j;
  j["session_id"] = s.id;
  j["status"] = s.validated() ? "validated" : "open";
  j["description"] = s.description;
  j["created_at"] = s.created_at;
  j["validated_at"] = s.validated_at ? Json(*s.validated_at) : Json(nullptr);
  j["dictionary_version"] = s.dictionary_version;
  j["proposal"] = s.proposal;
  Json displayed = Json::array();
  for (const auto& t : s.displayed) displayed.push_back(term_json(t));
  j["displayed"] = displayed;
  Json decisions = Json::array();
  for (const auto& d : s.decisions) {
    Json x;
    x["target_llt_code"] = d.target_llt_code;
    x["action"] = d.action;
    if (d.replacement) x["replacement"] = term_json(*d.replacement);
    x["decided_at"] = d.decided_at;
    decisions.push_back(x);
  }
  j["decisions"] = decisions;
  j["pending"] = s.pending();
  if (s.validated()) {
    Json fin = Json::array();
    for (const auto& t : s.final_terms()) fin.push_back(term_json(t));
    j["final"] = fin;
  } else {
    j["final"] = nullptr;
  }
  return j;
}

ReviewService::ReviewService(std::shared_ptr<const DictionaryBundle> bundle, ServiceConfig config, StopList negations,
                             Clock clock)
    : bundle_(std::move(bundle)),
      config_(std::move(config)),
      negations_(std::move(negations)),
      clock_(std::move(clock)),
      sessions_dir_(std::filesystem::path(config_.data_dir) / "sessions"),
      index_(std::filesystem::path(config_.data_dir) / "index.jsonl") {
  if (bundle_) {
    search_rows_.reserve(bundle_->terms.size());
    for (const auto& t : bundle_->terms) {
      SearchRow row;
      row.folded = unicode::fold_case(t.text);
      for (const auto& tok : tokenize(row.folded)) row.word_starts.emplace_back(tok.bytes.begin, tok.chars.begin);
      row.length = unicode::code_point_count(t.text);
      search_rows_.push_back(std::move(row));
    }
  }
  std::filesystem::create_directories(sessions_dir_);
  replay();
}

void ReviewService::replay() {
  for (const auto& entry : index_.replay()) {
    const auto id = entry.at("session_id").get<std::string>();
    if (!valid_id(id) || sessions_.count(id)) continue;
    auto e = std::make_shared<Entry>(EventLog(sessions_dir_ / (id + ".jsonl")));
    const auto events = e->log.replay();
    if (events.empty()) continue;
    for (const auto& ev : events) apply_event(e->session, ev);
    sessions_.emplace(id, std::move(e));
  }
}

std::size_t ReviewService::session_count() const {
  std::shared_lock lock(sessions_mutex_);
  return sessions_.size();
}

Reply ReviewService::error(int status, const std::string& message) const {
  return with_version(Reply{status, Json{{"error", message}}});
}

Reply ReviewService::with_version(Reply reply) const {
  if (reply.body.is_object() && !reply.body.contains("dictionary_version"))
    reply.body["dictionary_version"] = bundle_ ? Json(bundle_->version) : Json(nullptr);
  return reply;
}

Reply ReviewService::health() const {
  return with_version(Reply{200, Json{{"status", bundle_ ? "ok" : "no_dictionary"},
                                      {"terms", bundle_ ? bundle_->terms.size() : 0},
                                      {"sessions", session_count()}}});
}

std::optional<Reply> ReviewService::parse_text(std::string_view body, std::string& text) const {
  Json j;
  try {
    j = Json::parse(body);
  } catch (const Json::parse_error&) {
    return error(400, "request body is not valid JSON");
  }
  if (!j.is_object() || !j.contains("text") || !j["text"].is_string())
    return error(400, "request body must be an object with a string field 'text'");
  text = j["text"].get<std::string>();
  if (!unicode::is_valid_utf8(text)) return error(400, "text is not valid UTF-8");
  if (unicode::code_point_count(text) > config_.max_text_chars)
    return error(413, "text exceeds " + std::to_string(config_.max_text_chars) + " characters");
  if (!bundle_) return error(503, "dictionary not loaded");
  return std::nullopt;
}

Json ReviewService::encode_payload(const std::string& text) const {
  const auto& bundle = *bundle_;
  const auto result = adrcode::encode(text, bundle, config_.encoder);
  const auto cap = config_.encoder.display_cap;
  Json j = adrcode::to_json(result, bundle.terms, cap);

  Json pt_texts = Json::object();
  for (const auto& c : result.displayed(cap)) {
    const auto& t = bundle.term(c.vote.term);
    pt_texts[t.pt_code] = t.pt_text;
  }
  j["pt_texts"] = pt_texts;

  // How each token is matched by the displayed terms, for highlighting.
  std::vector<int> match(result.tokens.size(), 0);  // 0 none, 1 stem, 2 exact
  for (const auto& c : result.displayed(cap)) {
    const auto& words = bundle.term(c.vote.term).words;
    for (auto v : c.vote.voters) {
      const bool exact = std::find(words.begin(), words.end(), result.tokens.tokens[v].surface) != words.end();
      match[v] = std::max(match[v], exact ? 2 : 1);
    }
  }
  Json tokens = Json::array();
  for (std::size_t i = 0; i < result.tokens.size(); ++i) {
    const auto& t = result.tokens.tokens[i];
    tokens.push_back(Json{{"surface", t.surface},
                          {"stem", t.stem},
                          {"chars", span_json(t.chars)},
                          {"bytes", span_json(t.bytes)},
                          {"match", match[i] == 2 ? Json("exact") : match[i] == 1 ? Json("stem") : Json(nullptr)}});
  }
  j["tokens"] = tokens;

  Json negations = Json::array();
  for (const auto& t : tokenize(text))
    if (negations_.contains(t.surface))
      negations.push_back(Json{{"word", t.surface}, {"chars", span_json(t.chars)}, {"bytes", span_json(t.bytes)}});
  j["negations"] = negations;
  j["dictionary_version"] = bundle.version;
  return j;
}

Reply ReviewService::encode(std::string_view body) const {
  std::string text;
  if (auto err = parse_text(body, text)) return *err;
  return Reply{200, encode_payload(text)};
}

std::string ReviewService::new_id() {
  static const char* hex = "0123456789abcdef";
  std::lock_guard lock(id_mutex_);
  static std::mt19937_64 rng{std::random_device{}()};
  std::string id;
  for (int i = 0; i < 32; ++i) id.push_back(hex[rng() & 15]);
  return id;
}

Reply ReviewService::create_session(std::string_view body) {
  std::string text;
  if (auto err = parse_text(body, text)) return *err;
  const auto payload = encode_payload(text);

  Json displayed = Json::array();
  for (const auto& c : payload["selected"]) {
    const Term* t = bundle_->find(c["llt_code"].get<std::string>());
    displayed.push_back(term_json(term_ref(*t)));
  }

  std::string id;
  std::shared_ptr<Entry> entry;
  {
    std::unique_lock lock(sessions_mutex_);
    do id = new_id();
    while (sessions_.count(id));
    entry = std::make_shared<Entry>(EventLog(sessions_dir_ / (id + ".jsonl")));
    sessions_.emplace(id, entry);
  }

  std::lock_guard session_lock(entry->mutex);
  Json event;
  event["type"] = "created";
  event["session_id"] = id;
  event["description"] = text;
  event["created_at"] = clock_();
  event["dictionary_version"] = bundle_->version;
  event["proposal"] = payload;
  event["displayed"] = displayed;
  try {
    entry->log.append(event);
    index_.append(Json{{"session_id", id}, {"created_at", event["created_at"]}});
  } catch (const StoreError& e) {
    std::unique_lock lock(sessions_mutex_);
    sessions_.erase(id);
    return error(500, e.what());
  }
  apply_event(entry->session, event);
  return Reply{201, to_json(entry->session)};
}

std::shared_ptr<ReviewService::Entry> ReviewService::find(const std::string& id) const {
  if (!valid_id(id)) return nullptr;
  std::shared_lock lock(sessions_mutex_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

Reply ReviewService::add_decision(const std::string& id, std::string_view body) {
  auto entry = find(id);
  if (!entry) return error(404, "unknown session " + id);

  Json j;
  try {
    j = Json::parse(body);
  } catch (const Json::parse_error&) {
    return error(400, "request body is not valid JSON");
  }
  if (!j.is_object() || !j.contains("target_llt_code") || !j["target_llt_code"].is_string() ||
      !j.contains("action") || !j["action"].is_string())
    return error(400, "decision needs string fields 'target_llt_code' and 'action'");
  const auto target = j["target_llt_code"].get<std::string>();
  const auto action = j["action"].get<std::string>();
  if (action != "accept" && action != "reject" && action != "replace")
    return error(400, "action must be accept, reject or replace");
  const bool has_replacement = j.contains("replacement_llt_code") && !j["replacement_llt_code"].is_null();
  if ((action == "replace") != has_replacement)
    return error(400, "replacement_llt_code is required for replace and only for replace");
  if (has_replacement && !j["replacement_llt_code"].is_string())
    return error(400, "replacement_llt_code must be a string");

  std::lock_guard lock(entry->mutex);
  Session& s = entry->session;
  if (s.validated()) return error(409, "session " + id + " is already validated");
  const bool displayed = std::any_of(s.displayed.begin(), s.displayed.end(),
                                     [&](const TermRef& t) { return t.llt_code == target; });
  if (!displayed) return error(422, "term " + target + " is not among the displayed terms");

  Json event;
  event["type"] = "decision";
  event["target_llt_code"] = target;
  event["action"] = action;
  if (has_replacement) {
    if (!bundle_) return error(503, "dictionary not loaded");
    const auto code = j["replacement_llt_code"].get<std::string>();
    const Term* t = bundle_->find(code);
    if (!t) return error(422, "replacement term " + code + " is not in the dictionary");
    event["replacement"] = term_json(term_ref(*t));
  }
  event["decided_at"] = clock_();
  try {
    entry->log.append(event);
  } catch (const StoreError& e) {
    return error(500, e.what());
  }
  apply_event(s, event);
  return with_version(Reply{200, to_json(s)});
}

Reply ReviewService::validate(const std::string& id) {
  auto entry = find(id);
  if (!entry) return error(404, "unknown session " + id);
  std::lock_guard lock(entry->mutex);
  Session& s = entry->session;
  if (s.validated()) return error(409, "session " + id + " is already validated");
  if (const auto pending = s.pending(); !pending.empty()) {
    auto reply = error(409, "undecided terms remain");
    reply.body["undecided"] = pending;
    return reply;
  }
  const Json event{{"type", "validated"}, {"validated_at", clock_()}};
  try {
    entry->log.append(event);
  } catch (const StoreError& e) {
    return error(500, e.what());
  }
  apply_event(s, event);
  return with_version(Reply{200, to_json(s)});
}

Reply ReviewService::get_session(const std::string& id) const {
  auto entry = find(id);
  if (!entry) return error(404, "unknown session " + id);
  std::lock_guard lock(entry->mutex);
  return with_version(Reply{200, to_json(entry->session)});
}

Reply ReviewService::search_terms(const std::optional<std::string>& q, const std::optional<std::string>& limit) const {
  const std::string query = q ? trim(*q) : std::string();
  if (query.empty()) return error(400, "query parameter q must not be empty");
  if (!unicode::is_valid_utf8(query)) return error(400, "q is not valid UTF-8");
  std::size_t n = kDefaultSearchLimit;
  if (limit) {
    const auto& s = *limit;
    if (s.empty() || s.size() > 3 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
      return error(400, "limit must be an integer from 1 to 50");
    n = std::stoul(s);
    if (n < 1 || n > kMaxSearchLimit) return error(400, "limit must be an integer from 1 to 50");
  }
  if (!bundle_) return error(503, "dictionary not loaded");

  const auto folded = unicode::fold_case(query);
  struct Hit {
    std::size_t position, length;
    TermId id;
  };
  std::vector<Hit> hits;
  for (std::size_t i = 0; i < search_rows_.size(); ++i) {
    const auto& row = search_rows_[i];
    for (const auto& [byte, ch] : row.word_starts) {
      if (row.folded.compare(byte, folded.size(), folded) == 0) {
        hits.push_back(Hit{ch, row.length, static_cast<TermId>(i)});
        break;
      }
    }
  }
  const auto& terms = bundle_->terms;
  std::sort(hits.begin(), hits.end(), [&](const Hit& a, const Hit& b) {
    return std::tie(a.position, a.length, terms[a.id].code) < std::tie(b.position, b.length, terms[b.id].code);
  });
  if (hits.size() > n) hits.resize(n);

  Json results = Json::array();
  for (const auto& h : hits) results.push_back(term_json(term_ref(terms[h.id])));
  return with_version(Reply{200, Json{{"query", query}, {"results", results}}});
}

}  // namespace adrcode::service
