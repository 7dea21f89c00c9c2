#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "adrcode/encoder.hpp"
#include "json.hpp"

namespace adrcode {

using Json = nlohmann::ordered_json;

Json to_json(const Weights& w);
Json to_json(const Candidate& c, const Term& term);

// {selected, covered_tokens, truncated}. With a cap, `selected` holds only
// the displayed prefix and `truncated` reports whether the cap cut it.
Json to_json(const EncodingResult& result, std::span<const Term> terms,
             std::optional<std::size_t> cap = std::nullopt);

}  // namespace adrcode
