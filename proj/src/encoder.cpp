#include "adrcode/encoder.hpp"

#include <algorithm>
#include <tuple>
#include <utility>

#include "adrcode/unicode.hpp"

namespace adrcode {

namespace {

using Bigram = std::pair<char32_t, char32_t>;

std::vector<Bigram> letter_bigrams(std::string_view text) {
  std::vector<Bigram> out;
  std::size_t pos = 0;
  char32_t prev = 0;
  bool have_prev = false;
  while (pos < text.size()) {
    const char32_t cp = unicode::next_code_point(text, pos);
    if (unicode::is_letter(cp) || (have_prev && unicode::is_mark(cp))) {
      const char32_t folded = unicode::fold(cp);
      if (have_prev) out.emplace_back(prev, folded);
      prev = folded;
      have_prev = true;
    } else {
      have_prev = false;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Prefix test on already folded strings.
bool folded_word_prefix(std::string_view prefix, std::string_view text) {
  if (!text.starts_with(prefix)) return false;
  if (text.size() == prefix.size()) return true;
  std::size_t pos = prefix.size();
  const char32_t next = unicode::next_code_point(text, pos);
  return !unicode::is_letter(next) && !unicode::is_mark(next);
}

}  // namespace

double pair_distance(std::string_view s, std::string_view r) {
  const auto a = letter_bigrams(s);
  const auto b = letter_bigrams(r);
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return 1.0;

  std::size_t shared = 0;
  for (std::size_t i = 0, j = 0; i < a.size() && j < b.size();) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++shared;
      ++i;
      ++j;
    }
  }
  return 1.0 - static_cast<double>(2 * shared) / static_cast<double>(a.size() + b.size());
}

std::string rebuilt_text(const VoteRecord& record, const TokenSequence& tokens) {
  std::string out;
  for (std::size_t k = 0; k < record.voters.size(); ++k) {
    if (k) out.push_back(' ');
    out += tokens.tokens[record.voters[k]].surface;
  }
  return out;
}

Weights compute_weights(const VoteRecord& record, const Term& term, const TokenSequence& tokens) {
  const auto size = static_cast<double>(term.size());
  const auto votes = record.voters.size();
  Weights w;
  // More votes than words happens when the description repeats a word.
  w.c1 = votes >= term.size() ? 0.0 : static_cast<double>(term.size() - votes) / size;
  w.c2 = record.stem_used ? 1 : 0;
  w.c3 = pair_distance(term.text, rebuilt_text(record, tokens));
  const auto [lo, hi] = std::minmax_element(record.voters.begin(), record.voters.end());
  w.c4 = static_cast<double>(*hi - *lo + 1) / size;
  w.c5 = 0;
  for (auto p : record.voted) w.c5 += p;
  return w;
}

void sort_voted(std::vector<Candidate>& candidates, std::span<const Term> terms) {
  std::stable_sort(candidates.begin(), candidates.end(), [&](const Candidate& a, const Candidate& b) {
    const auto& x = a.weights;
    const auto& y = b.weights;
    return std::tie(x.c1, x.c2, x.c3, x.c4, x.c5, terms[a.vote.term].code) <
           std::tie(y.c1, y.c2, y.c3, y.c4, y.c5, terms[b.vote.term].code);
  });
}

bool is_word_prefix(std::string_view prefix, std::string_view text) {
  return folded_word_prefix(unicode::fold_case(prefix), unicode::fold_case(text));
}

EncodingResult release(std::span<const Candidate> sorted, std::span<const Term> terms,
                       std::size_t token_count, const ReleaseThresholds& thresholds) {
  EncodingResult result;
  auto& mark = result.covered_tokens;
  mark.assign(token_count, false);

  std::vector<bool> coverable(token_count, false);
  for (const auto& c : sorted)
    for (auto v : c.vote.voters) coverable[v] = true;
  auto uncovered = static_cast<std::size_t>(std::count(coverable.begin(), coverable.end(), true));

  struct Chosen {
    std::size_t index;  // into sorted
    std::string folded;
  };
  std::vector<Chosen> chosen;

  for (std::size_t k = 0; k < sorted.size() && uncovered > 0; ++k) {
    const Candidate& c = sorted[k];
    if (!(c.weights.c3 < thresholds.c3_max) || !(static_cast<double>(c.weights.c5) < thresholds.c5_max))
      continue;
    const bool opens_new_ground =
        !c.vote.stem_used ||
        std::any_of(c.vote.voters.begin(), c.vote.voters.end(), [&](auto v) { return !mark[v]; });
    if (!opens_new_ground) continue;
    const bool already = std::any_of(chosen.begin(), chosen.end(), [&](const Chosen& s) {
      return sorted[s.index].vote.term == c.vote.term;
    });
    if (already) continue;
    auto folded = unicode::fold_case(terms[c.vote.term].text);
    const bool shadowed = std::any_of(chosen.begin(), chosen.end(), [&](const Chosen& s) {
      return folded_word_prefix(folded, s.folded);
    });
    if (shadowed) continue;

    for (auto v : c.vote.voters) {
      if (!mark[v]) {
        mark[v] = true;
        --uncovered;
      }
    }
    std::erase_if(chosen, [&](const Chosen& s) { return folded_word_prefix(s.folded, folded); });
    chosen.push_back(Chosen{k, std::move(folded)});
  }

  result.selected.reserve(chosen.size());
  for (const auto& s : chosen) result.selected.push_back(sorted[s.index]);
  return result;
}

EncodingResult encode(std::string_view text, const DictionaryBundle& bundle, const EncoderConfig& config) {
  TokenSequence tokens = preprocess(text, bundle.stop_words, bundle.stemmer);
  auto records = vote(tokens, bundle.exact, bundle.stemmed);

  std::vector<Candidate> candidates;
  candidates.reserve(records.size());
  for (auto& r : records) {
    Weights w = compute_weights(r, bundle.terms[r.term], tokens);
    candidates.push_back(Candidate{std::move(r), w});
  }
  sort_voted(candidates, bundle.terms);

  EncodingResult result = release(candidates, bundle.terms, tokens.size(), config.thresholds);
  result.truncated = result.selected.size() > config.display_cap;
  result.tokens = std::move(tokens);
  result.ranked = std::move(candidates);
  return result;
}

}  // namespace adrcode
