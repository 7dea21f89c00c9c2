#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace adrcode::unicode {

class InvalidUtf8 : public std::runtime_error {
 public:
  explicit InvalidUtf8(std::size_t byte_offset);
  std::size_t byte_offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Decodes one code point starting at byte `pos`, advancing `pos`.
// Throws InvalidUtf8 on ill-formed input.
char32_t next_code_point(std::string_view text, std::size_t& pos);

bool is_valid_utf8(std::string_view text);
std::u32string decode(std::string_view text);
std::string encode(std::u32string_view text);
void append_utf8(std::string& out, char32_t cp);

std::size_t code_point_count(std::string_view text);

// Unicode simple case folding.
char32_t fold(char32_t cp);
std::string fold_case(std::string_view text);

// General category L*.
bool is_letter(char32_t cp);
// General category M*; combining marks stay attached to the preceding letter.
bool is_mark(char32_t cp);

}  // namespace adrcode::unicode
