#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "adrcode/stemmer.hpp"

namespace adrcode {

// Half-open [begin, end) offsets.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
  friend bool operator==(const Span&, const Span&) = default;
};

// A tokenizer output: case-folded letters plus where they came from. `chars`
// counts code points, `bytes` indexes the UTF-8 source.
struct RawToken {
  std::string surface;
  Span chars;
  Span bytes;
};

struct Token {
  std::string surface;
  std::string stem;
  Span chars;
  Span bytes;
};

struct TokenSequence {
  std::vector<Token> tokens;
  std::string original_text;

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
};

class StopList {
 public:
  StopList() = default;
  StopList(std::initializer_list<std::string_view> words);

  // One word per line; '#' starts a comment; blank lines ignored.
  static StopList parse(std::istream& in);
  static StopList load_file(const std::string& path);

  void insert(std::string_view word);
  bool contains(std::string_view word) const;
  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
  };
  std::unordered_set<std::string, Hash, std::equal_to<>> words_;
};

// Maximal runs of letters (with trailing combining marks), case-folded.
// Everything else separates tokens. Throws unicode::InvalidUtf8.
std::vector<RawToken> tokenize(std::string_view text);

// Just the surfaces; used for dictionary term text.
std::vector<std::string> split_words(std::string_view text);

std::vector<RawToken> remove_stop_words(std::vector<RawToken> tokens, const StopList& stop_list);

// stemmer(word), falling back to the word itself if the stemmer erases it.
std::string stem_word(const Stemmer& stemmer, std::string_view word);

TokenSequence preprocess(std::string_view text, const StopList& stop_list, const Stemmer& stemmer);

}  // namespace adrcode
