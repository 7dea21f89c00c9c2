#pragma once

#include <functional>
#include <string>
#include <string_view>

namespace adrcode {

// Maps a lower-cased word to its stem. Deterministic; not necessarily
// idempotent.
using Stemmer = std::function<std::string(std::string_view)>;

// Snowball stemmers, operating on UTF-8 words.
std::string stem_italian(std::string_view word);
std::string stem_english(std::string_view word);

// "it", "en", or "none" (identity). Throws std::invalid_argument otherwise.
Stemmer make_stemmer(std::string_view language);

}  // namespace adrcode
