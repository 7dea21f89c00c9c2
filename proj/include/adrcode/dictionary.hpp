#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "adrcode/stemmer.hpp"
#include "adrcode/textprep.hpp"

namespace adrcode {

// Index of a Term inside the loaded term list.
using TermId = std::uint32_t;

// A low-level dictionary entry and the preferred term it rolls up to.
struct Term {
  std::string code;
  std::string text;
  std::vector<std::string> words;  // tokenized, case-folded text
  std::string pt_code;
  std::string pt_text;

  std::size_t size() const { return words.size(); }
};

struct Posting {
  TermId term = 0;
  std::vector<std::uint16_t> positions;  // ascending, non-empty

  friend bool operator==(const Posting&, const Posting&) = default;
};

enum class IndexVariant { exact, stemmed };

// Inverted index: word (or word stem) -> terms containing it, with positions.
class MetaDictionary {
 public:
  MetaDictionary() = default;
  explicit MetaDictionary(IndexVariant variant) : variant_(variant) {}

  IndexVariant variant() const { return variant_; }

  // Empty span for unknown keys.
  std::span<const Posting> lookup(std::string_view key) const;

  std::size_t key_count() const { return entries_.size(); }
  std::size_t posting_count() const;

  // Iteration in unspecified order.
  template <class F>
  void for_each(F&& f) const {
    for (const auto& [key, postings] : entries_) f(std::string_view(key), std::span<const Posting>(postings));
  }

  void add(std::string key, TermId term, std::uint16_t position);

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
  };
  IndexVariant variant_ = IndexVariant::exact;
  std::unordered_map<std::string, std::vector<Posting>, Hash, std::equal_to<>> entries_;
};

class DictionaryError : public std::runtime_error {
 public:
  DictionaryError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Four columns with a header row: llt_code, llt_text, pt_code, pt_text.
std::vector<Term> load_dictionary(std::istream& in);
std::vector<Term> load_dictionary_file(const std::string& path);

// Build cost is linear in the total number of term words. In stemmed mode
// each distinct word is stemmed once.
MetaDictionary build_meta_dictionary(std::span<const Term> terms, IndexVariant variant,
                                     const Stemmer& stemmer = {});

// Everything an encode needs, immutable once built and shareable across threads.
struct DictionaryBundle {
  std::vector<Term> terms;
  MetaDictionary exact{IndexVariant::exact};
  MetaDictionary stemmed{IndexVariant::stemmed};
  StopList stop_words;
  Stemmer stemmer;
  std::string version;

  static DictionaryBundle build(std::vector<Term> terms, StopList stop_words, Stemmer stemmer,
                                std::string version = {});

  const Term* find(std::string_view code) const;
  std::optional<TermId> id_of(std::string_view code) const;
  const Term& term(TermId id) const { return terms[id]; }

 private:
  std::unordered_map<std::string, TermId> by_code_;
};

// Stable fingerprint of a file's bytes ("fnv1a64:<hex>").
std::string file_fingerprint(const std::string& path);

}  // namespace adrcode
