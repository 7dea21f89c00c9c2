#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace adrcode::csv {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct Record {
  std::vector<std::string> fields;
  std::size_t line = 0;  // 1-based line where the record starts
};

// RFC 4180 reader: comma separated, double-quote escaping, CRLF or LF,
// quoted fields may span lines.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}
  std::optional<Record> next();

 private:
  std::istream& in_;
  std::size_t line_ = 1;
};

std::string escape_field(std::string_view field);
std::string join_row(const std::vector<std::string>& fields);

}  // namespace adrcode::csv
