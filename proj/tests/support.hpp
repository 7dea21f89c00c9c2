#pragma once

// Shared test fixtures: small bundles, the shipped Italian fixture, and a
// generator of random small encoding instances.

#include <map>
#include <memory>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "adrcode/dictionary.hpp"
#include "adrcode/stemmer.hpp"
#include "adrcode/textprep.hpp"

namespace testing_support {

using adrcode::DictionaryBundle;
using adrcode::StopList;
using adrcode::Term;

inline Term make_term(std::string code, std::string text, std::string pt_code = {}, std::string pt_text = {}) {
  Term t;
  t.code = std::move(code);
  t.text = std::move(text);
  t.words = adrcode::split_words(t.text);
  t.pt_code = pt_code.empty() ? "P" + t.code : std::move(pt_code);
  t.pt_text = pt_text.empty() ? t.text : std::move(pt_text);
  return t;
}

// {code, text} pairs, in order.
inline std::vector<Term> make_terms(std::initializer_list<std::pair<const char*, const char*>> rows) {
  std::vector<Term> terms;
  for (const auto& [code, text] : rows) terms.push_back(make_term(code, text));
  return terms;
}

inline DictionaryBundle make_bundle(std::vector<Term> terms, adrcode::Stemmer stemmer = adrcode::make_stemmer("none"),
                                    StopList stop = {}) {
  return DictionaryBundle::build(std::move(terms), std::move(stop), std::move(stemmer), "test");
}

inline std::string data_path(const std::string& rel) { return std::string(ADRCODE_DATA_DIR) + "/" + rel; }

inline const DictionaryBundle& italian_fixture() {
  static const DictionaryBundle bundle = DictionaryBundle::build(
      adrcode::load_dictionary_file(data_path("fixtures/dictionary_it.csv")),
      StopList::load_file(data_path("stopwords_it.txt")), adrcode::make_stemmer("it"),
      adrcode::file_fingerprint(data_path("fixtures/dictionary_it.csv")));
  return bundle;
}

// A random small dictionary plus a description over the same vocabulary,
// with a word->stem table that deliberately collides.
struct RandomInstance {
  std::vector<Term> terms;
  std::vector<std::string> description;  // already tokens: lower-case, letters only
  std::shared_ptr<std::map<std::string, std::string>> stems;

  adrcode::Stemmer stemmer() const {
    auto table = stems;
    return [table](std::string_view w) {
      auto it = table->find(std::string(w));
      return it == table->end() ? std::string(w) : it->second;
    };
  }
  std::string text() const {
    std::string s;
    for (const auto& w : description) {
      if (!s.empty()) s += ' ';
      s += w;
    }
    return s;
  }
};

inline std::string random_word(std::mt19937& rng) {
  static const char* syllables[] = {"ba", "ce", "di", "fo", "gu", "la", "me", "ni", "po", "ru", "sa", "te"};
  std::uniform_int_distribution<int> len(1, 3), pick(0, 11);
  std::string w;
  for (int i = len(rng); i > 0; --i) w += syllables[pick(rng)];
  return w;
}

inline RandomInstance random_instance(std::mt19937& rng, int max_terms = 20, int max_words = 4, int max_tokens = 12) {
  RandomInstance inst;
  inst.stems = std::make_shared<std::map<std::string, std::string>>();

  std::vector<std::string> vocab;
  const int vocab_size = std::uniform_int_distribution<int>(3, 14)(rng);
  while (static_cast<int>(vocab.size()) < vocab_size) {
    auto w = random_word(rng);
    if (std::find(vocab.begin(), vocab.end(), w) == vocab.end()) vocab.push_back(w);
  }
  // Fewer stems than words forces collisions.
  const int stem_count = std::uniform_int_distribution<int>(1, std::max(1, vocab_size / 2))(rng);
  for (const auto& w : vocab)
    (*inst.stems)[w] = "s" + std::to_string(std::uniform_int_distribution<int>(0, stem_count - 1)(rng));

  std::uniform_int_distribution<std::size_t> any_word(0, vocab.size() - 1);
  const int term_count = std::uniform_int_distribution<int>(1, max_terms)(rng);
  std::vector<std::vector<std::string>> texts;
  for (int k = 0; k < term_count; ++k) {
    std::vector<std::string> words;
    // Sometimes extend an earlier term so prefix relations show up.
    if (!texts.empty() && std::uniform_int_distribution<int>(0, 3)(rng) == 0) {
      words = texts[std::uniform_int_distribution<std::size_t>(0, texts.size() - 1)(rng)];
      if (static_cast<int>(words.size()) < max_words) words.push_back(vocab[any_word(rng)]);
    } else {
      const int n = std::uniform_int_distribution<int>(1, max_words)(rng);
      for (int i = 0; i < n; ++i) words.push_back(vocab[any_word(rng)]);
    }
    texts.push_back(words);
    std::string text;
    for (const auto& w : words) text += (text.empty() ? "" : " ") + w;
    if (std::uniform_int_distribution<int>(0, 4)(rng) == 0) text[0] = static_cast<char>(std::toupper(text[0]));
    char code[16];
    std::snprintf(code, sizeof code, "C%03d", k);
    inst.terms.push_back(make_term(code, text));
  }

  const int token_count = std::uniform_int_distribution<int>(0, max_tokens)(rng);
  for (int i = 0; i < token_count; ++i) {
    if (std::uniform_int_distribution<int>(0, 5)(rng) == 0)
      inst.description.push_back("zz" + random_word(rng));
    else
      inst.description.push_back(vocab[any_word(rng)]);
  }
  return inst;
}


// A description of roughly `target_chars` characters mixing dictionary term
// texts with filler words that match nothing.
inline std::string synthetic_description(std::mt19937& rng, const DictionaryBundle& bundle, std::size_t target_chars) {
  static const char* filler[] = {"paziente", "dopo", "la", "somministrazione", "ore", "circa", "riferisce",
                                 "comparsa", "di", "al", "giorno", "seguente", "con", "lieve", "12", "mg"};
  std::uniform_int_distribution<std::size_t> term(0, bundle.terms.size() - 1), fill(0, std::size(filler) - 1);
  std::string out;
  do {
    if (!out.empty()) out += ' ';
    if (std::uniform_int_distribution<int>(0, 2)(rng) == 0)
      out += bundle.terms[term(rng)].text;
    else
      out += filler[fill(rng)];
  } while (out.size() < target_chars);
  return out;
}

}  // namespace testing_support
