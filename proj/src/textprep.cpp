#include "adrcode/textprep.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <stdexcept>

#include "adrcode/unicode.hpp"

namespace adrcode {

StopList::StopList(std::initializer_list<std::string_view> words) {
  for (auto w : words) insert(w);
}

StopList StopList::parse(std::istream& in) {
  StopList list;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    list.insert(line.substr(first, last - first + 1));
  }
  return list;
}

StopList StopList::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open stop-word file: " + path);
  return parse(in);
}

void StopList::insert(std::string_view word) { words_.emplace(unicode::fold_case(word)); }

bool StopList::contains(std::string_view word) const { return words_.find(word) != words_.end(); }

std::vector<RawToken> tokenize(std::string_view text) {
  std::vector<RawToken> out;
  std::size_t pos = 0;
  std::size_t chars = 0;
  RawToken current;
  bool in_token = false;

  const auto close = [&](std::size_t byte_end, std::size_t char_end) {
    if (!in_token) return;
    current.bytes.end = byte_end;
    current.chars.end = char_end;
    out.push_back(std::move(current));
    current = RawToken{};
    in_token = false;
  };

  while (pos < text.size()) {
    const std::size_t start = pos;
    const char32_t cp = unicode::next_code_point(text, pos);
    const bool letter = unicode::is_letter(cp);
    if (letter || (in_token && unicode::is_mark(cp))) {
      if (!in_token) {
        in_token = true;
        current.bytes.begin = start;
        current.chars.begin = chars;
      }
      unicode::append_utf8(current.surface, unicode::fold(cp));
    } else {
      close(start, chars);
    }
    ++chars;
  }
  close(text.size(), chars);
  return out;
}

std::vector<std::string> split_words(std::string_view text) {
  auto tokens = tokenize(text);
  std::vector<std::string> words;
  words.reserve(tokens.size());
  for (auto& t : tokens) words.push_back(std::move(t.surface));
  return words;
}

std::vector<RawToken> remove_stop_words(std::vector<RawToken> tokens, const StopList& stop_list) {
  if (stop_list.empty()) return tokens;
  std::erase_if(tokens, [&](const RawToken& t) { return stop_list.contains(t.surface); });
  return tokens;
}

std::string stem_word(const Stemmer& stemmer, std::string_view word) {
  auto stem = stemmer(word);
  if (stem.empty()) return std::string(word);
  return stem;
}

TokenSequence preprocess(std::string_view text, const StopList& stop_list, const Stemmer& stemmer) {
  TokenSequence seq;
  seq.original_text = std::string(text);
  auto raw = remove_stop_words(tokenize(text), stop_list);
  seq.tokens.reserve(raw.size());
  for (auto& r : raw) {
    Token t;
    t.stem = stem_word(stemmer, r.surface);
    t.surface = std::move(r.surface);
    t.chars = r.chars;
    t.bytes = r.bytes;
    seq.tokens.push_back(std::move(t));
  }
  return seq;
}

}  // namespace adrcode
