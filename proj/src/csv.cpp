#include "adrcode/csv.hpp"

#include <istream>

namespace adrcode::csv {

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

std::optional<Record> Reader::next() {
  if (in_.peek() == std::char_traits<char>::eof()) return std::nullopt;

  Record rec;
  rec.line = line_;
  std::string field;
  bool quoted = false;
  bool after_quote = false;

  for (;;) {
    const int c = in_.get();
    if (c == std::char_traits<char>::eof()) {
      if (quoted) throw ParseError(rec.line, "unterminated quoted field");
      rec.fields.push_back(std::move(field));
      return rec;
    }
    const char ch = static_cast<char>(c);
    if (quoted) {
      if (ch == '"') {
        if (in_.peek() == '"') {
          in_.get();
          field.push_back('"');
        } else {
          quoted = false;
          after_quote = true;
        }
      } else {
        if (ch == '\n') ++line_;
        field.push_back(ch);
      }
      continue;
    }
    switch (ch) {
      case ',':
        rec.fields.push_back(std::move(field));
        field.clear();
        after_quote = false;
        break;
      case '\r':
        if (in_.peek() == '\n') break;
        [[fallthrough]];
      case '\n':
        ++line_;
        rec.fields.push_back(std::move(field));
        return rec;
      case '"':
        if (!field.empty() || after_quote)
          throw ParseError(line_, "unexpected quote inside unquoted field");
        quoted = true;
        break;
      default:
        if (after_quote) throw ParseError(line_, "text after closing quote");
        field.push_back(ch);
    }
  }
}

std::string escape_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string join_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.push_back(',');
    out += escape_field(fields[i]);
  }
  return out;
}

}  // namespace adrcode::csv
