#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "adrcode/dictionary.hpp"
#include "adrcode/textprep.hpp"

namespace adrcode {

// Votes a term received during the scan. voters[k] is a token index in the
// description, voted[k] the word position in the term it matched.
struct VoteRecord {
  TermId term = 0;
  std::vector<std::uint32_t> voters;
  std::vector<std::uint16_t> voted;
  bool stem_used = false;

  friend bool operator==(const VoteRecord&, const VoteRecord&) = default;
};

// Ranking criteria; lower is better on every component.
struct Weights {
  double c1 = 0;        // share of term words not covered
  int c2 = 0;           // 1 if any vote came through a stem match
  double c3 = 0;        // pair distance between the term and its rebuilt text
  double c4 = 0;        // spread of the voting tokens over the term size
  std::int64_t c5 = 0;  // sum of voted word positions

  friend bool operator==(const Weights&, const Weights&) = default;
};

struct Candidate {
  VoteRecord vote;
  Weights weights;
};

struct ReleaseThresholds {
  double c3_max = 0.5;
  double c5_max = 3;
};

struct EncoderConfig {
  ReleaseThresholds thresholds;
  std::size_t display_cap = 6;
};

struct EncodingResult {
  std::vector<Candidate> selected;  // release order
  std::vector<bool> covered_tokens;
  bool truncated = false;
  TokenSequence tokens;
  std::vector<Candidate> ranked;  // every voted term in sort order

  std::span<const Candidate> displayed(std::size_t cap) const {
    return std::span<const Candidate>(selected).first(std::min(cap, selected.size()));
  }
};

template <class Index>
concept PostingIndex = requires(const Index& index, std::string_view key) {
  { index.lookup(key) } -> std::convertible_to<std::span<const Posting>>;
};

namespace detail {

// First position of the word not yet voted in this term, else the first one.
inline std::uint16_t pick_position(std::span<const std::uint16_t> positions,
                                   const std::vector<std::uint16_t>& voted) {
  for (auto p : positions)
    if (std::find(voted.begin(), voted.end(), p) == voted.end()) return p;
  return positions.front();
}

}  // namespace detail

// Single pass over the tokens: one exact probe and one stem probe per token.
// A token votes a term at most once; a stem vote is skipped when the same
// token already voted the term exactly. Records come back ordered by term id.
template <PostingIndex Exact, PostingIndex Stemmed>
std::vector<VoteRecord> vote(const TokenSequence& tokens, const Exact& exact, const Stemmed& stemmed) {
  std::vector<VoteRecord> records;
  std::unordered_map<TermId, std::size_t> slot;

  const auto record_for = [&](TermId term) -> VoteRecord& {
    auto [it, inserted] = slot.emplace(term, records.size());
    if (inserted) records.push_back(VoteRecord{term, {}, {}, false});
    return records[it->second];
  };

  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto index = static_cast<std::uint32_t>(i);
    const Token& token = tokens.tokens[i];
    for (const Posting& posting : std::span<const Posting>(exact.lookup(token.surface))) {
      VoteRecord& r = record_for(posting.term);
      r.voted.push_back(detail::pick_position(posting.positions, r.voted));
      r.voters.push_back(index);
    }
    for (const Posting& posting : std::span<const Posting>(stemmed.lookup(token.stem))) {
      VoteRecord& r = record_for(posting.term);
      if (!r.voters.empty() && r.voters.back() == index) continue;
      r.voted.push_back(detail::pick_position(posting.positions, r.voted));
      r.voters.push_back(index);
      r.stem_used = true;
    }
  }

  std::sort(records.begin(), records.end(),
            [](const VoteRecord& a, const VoteRecord& b) { return a.term < b.term; });
  return records;
}

// 1 - Dice coefficient over the multisets of adjacent letter pairs, taken
// inside each word after case folding. 0 when both sides have no pairs,
// 1 when only one side has none.
double pair_distance(std::string_view s, std::string_view r);

// Token surfaces at the voter indexes, in voter order, joined by spaces.
std::string rebuilt_text(const VoteRecord& record, const TokenSequence& tokens);

Weights compute_weights(const VoteRecord& record, const Term& term, const TokenSequence& tokens);

// Ascending on (c1, c2, c3, c4, c5), ties by term code.
void sort_voted(std::vector<Candidate>& candidates, std::span<const Term> terms);

// Case-folded `prefix` is a string prefix of `text` ending on a word boundary.
bool is_word_prefix(std::string_view prefix, std::string_view text);

EncodingResult release(std::span<const Candidate> sorted, std::span<const Term> terms,
                       std::size_t token_count, const ReleaseThresholds& thresholds = {});

EncodingResult encode(std::string_view text, const DictionaryBundle& bundle,
                      const EncoderConfig& config = {});

}  // namespace adrcode
