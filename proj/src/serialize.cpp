#include "adrcode/serialize.hpp"

namespace adrcode {

Json to_json(const Weights& w) {
  Json j;
  j["c1"] = w.c1;
  j["c2"] = w.c2;
  j["c3"] = w.c3;
  j["c4"] = w.c4;
  j["c5"] = w.c5;
  return j;
}

Json to_json(const Candidate& c, const Term& term) {
  Json j;
  j["llt_code"] = term.code;
  j["llt_text"] = term.text;
  j["pt_code"] = term.pt_code;
  j["weights"] = to_json(c.weights);
  j["voters"] = c.vote.voters;
  j["voted"] = c.vote.voted;
  j["stem_used"] = c.vote.stem_used;
  return j;
}

Json to_json(const EncodingResult& result, std::span<const Term> terms, std::optional<std::size_t> cap) {
  const auto shown = cap ? result.displayed(*cap) : std::span<const Candidate>(result.selected);
  Json selected = Json::array();
  for (const auto& c : shown) selected.push_back(to_json(c, terms[c.vote.term]));
  Json j;
  j["selected"] = std::move(selected);
  Json covered = Json::array();
  for (bool b : result.covered_tokens) covered.push_back(b);
  j["covered_tokens"] = std::move(covered);
  j["truncated"] = cap ? result.selected.size() > *cap : result.truncated;
  return j;
}

}  // namespace adrcode
