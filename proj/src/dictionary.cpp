#include "adrcode/dictionary.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>

#include "adrcode/csv.hpp"
#include "adrcode/unicode.hpp"

namespace adrcode {

namespace {

constexpr std::string_view kHeader[] = {"llt_code", "llt_text", "pt_code", "pt_text"};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

DictionaryError::DictionaryError(std::size_t line, const std::string& what)
    : std::runtime_error(line ? "dictionary line " + std::to_string(line) + ": " + what : "dictionary: " + what),
      line_(line) {}

std::span<const Posting> MetaDictionary::lookup(std::string_view key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return {};
  return it->second;
}

std::size_t MetaDictionary::posting_count() const {
  std::size_t n = 0;
  for (const auto& [key, postings] : entries_) n += postings.size();
  return n;
}

void MetaDictionary::add(std::string key, TermId term, std::uint16_t position) {
  auto& postings = entries_[std::move(key)];
  if (!postings.empty() && postings.back().term == term) {
    auto& positions = postings.back().positions;
    if (positions.back() < position) {
      positions.push_back(position);
    } else if (!std::binary_search(positions.begin(), positions.end(), position)) {
      positions.insert(std::lower_bound(positions.begin(), positions.end(), position), position);
    }
    return;
  }
  postings.push_back(Posting{term, {position}});
}

std::vector<Term> load_dictionary(std::istream& in) {
  std::vector<Term> terms;
  std::unordered_map<std::string, std::size_t> first_line;
  csv::Reader reader(in);

  try {
    auto header = reader.next();
    if (!header) return terms;
    auto& names = header->fields;
    if (!names.empty() && names[0].starts_with("\xEF\xBB\xBF")) names[0].erase(0, 3);
    if (names.size() != 4)
      throw DictionaryError(header->line, "header must have 4 columns, got " +
                                              std::to_string(names.size()));
    for (std::size_t i = 0; i < 4; ++i) {
      if (unicode::fold_case(trim(names[i])) != kHeader[i])
        throw DictionaryError(header->line, "unexpected header column '" + names[i] + "'");
    }

    while (auto rec = reader.next()) {
      auto& f = rec->fields;
      if (f.size() == 1 && trim(f[0]).empty()) continue;
      if (f.size() != 4)
        throw DictionaryError(rec->line, "expected 4 columns, got " + std::to_string(f.size()));
      for (const auto& field : f)
        if (!unicode::is_valid_utf8(field)) throw DictionaryError(rec->line, "invalid UTF-8");

      Term t;
      t.code = trim(f[0]);
      t.text = trim(f[1]);
      t.pt_code = trim(f[2]);
      t.pt_text = trim(f[3]);
      if (t.code.empty()) throw DictionaryError(rec->line, "empty llt_code");
      if (t.text.empty()) throw DictionaryError(rec->line, "empty term text");
      if (t.pt_code.empty()) throw DictionaryError(rec->line, "empty pt_code");
      t.words = split_words(t.text);
      if (t.words.empty()) throw DictionaryError(rec->line, "term text has no words: '" + t.text + "'");
      if (t.words.size() > std::numeric_limits<std::uint16_t>::max())
        throw DictionaryError(rec->line, "term text too long");

      auto [it, inserted] = first_line.emplace(t.code, rec->line);
      if (!inserted)
        throw DictionaryError(rec->line, "duplicate llt_code " + t.code + " (first seen on line " +
                                             std::to_string(it->second) + ")");
      terms.push_back(std::move(t));
    }
  } catch (const csv::ParseError& e) {
    throw DictionaryError(e.line(), e.what());
  }
  return terms;
}

std::vector<Term> load_dictionary_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DictionaryError(0, "cannot open " + path);
  return load_dictionary(in);
}

MetaDictionary build_meta_dictionary(std::span<const Term> terms, IndexVariant variant,
                                     const Stemmer& stemmer) {
  MetaDictionary dict(variant);
  if (variant == IndexVariant::exact) {
    for (std::size_t id = 0; id < terms.size(); ++id) {
      const auto& words = terms[id].words;
      for (std::size_t p = 0; p < words.size(); ++p)
        dict.add(words[p], static_cast<TermId>(id), static_cast<std::uint16_t>(p));
    }
    return dict;
  }

  if (!stemmer) throw std::invalid_argument("stemmed meta-dictionary needs a stemmer");
  std::unordered_map<std::string_view, std::string> stems;
  for (std::size_t id = 0; id < terms.size(); ++id) {
    const auto& words = terms[id].words;
    for (std::size_t p = 0; p < words.size(); ++p) {
      auto it = stems.find(words[p]);
      if (it == stems.end()) it = stems.emplace(words[p], stem_word(stemmer, words[p])).first;
      dict.add(it->second, static_cast<TermId>(id), static_cast<std::uint16_t>(p));
    }
  }
  return dict;
}

DictionaryBundle DictionaryBundle::build(std::vector<Term> terms, StopList stop_words,
                                         Stemmer stemmer, std::string version) {
  DictionaryBundle b;
  b.terms = std::move(terms);
  b.stop_words = std::move(stop_words);
  b.stemmer = std::move(stemmer);
  b.version = std::move(version);
  b.exact = build_meta_dictionary(b.terms, IndexVariant::exact);
  b.stemmed = build_meta_dictionary(b.terms, IndexVariant::stemmed, b.stemmer);
  b.by_code_.reserve(b.terms.size());
  for (std::size_t i = 0; i < b.terms.size(); ++i)
    b.by_code_.emplace(b.terms[i].code, static_cast<TermId>(i));
  return b;
}

const Term* DictionaryBundle::find(std::string_view code) const {
  auto id = id_of(code);
  return id ? &terms[*id] : nullptr;
}

std::optional<TermId> DictionaryBundle::id_of(std::string_view code) const {
  auto it = by_code_.find(std::string(code));
  if (it == by_code_.end()) return std::nullopt;
  return it->second;
}

std::string file_fingerprint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::uint64_t h = 1469598103934665603ULL;
  char buf[1 << 14];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ULL;
    }
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + hex;
}

}  // namespace adrcode
