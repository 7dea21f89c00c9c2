#pragma once

// Minimal Snowball runtime: the cursor/slice machine that generated Snowball
// stemmers run on, over UTF-32 so that one position is one character.

#include <initializer_list>
#include <string>
#include <string_view>

namespace adrcode::snowball {

struct Among {
  std::u32string_view s;
  int result;
};

class Env {
 public:
  explicit Env(std::u32string word)
      : current(std::move(word)), limit(static_cast<int>(current.size())), ket(limit) {}

  std::u32string current;
  int cursor = 0;
  int limit;
  int limit_backward = 0;
  int bra = 0;
  int ket;

  char32_t at(int i) const { return current[static_cast<std::size_t>(i)]; }

  bool in_grouping(std::u32string_view g) {
    if (cursor >= limit || g.find(at(cursor)) == g.npos) return false;
    ++cursor;
    return true;
  }
  bool in_grouping_b(std::u32string_view g) {
    if (cursor <= limit_backward || g.find(at(cursor - 1)) == g.npos) return false;
    --cursor;
    return true;
  }
  bool out_grouping(std::u32string_view g) {
    if (cursor >= limit || g.find(at(cursor)) != g.npos) return false;
    ++cursor;
    return true;
  }
  bool out_grouping_b(std::u32string_view g) {
    if (cursor <= limit_backward || g.find(at(cursor - 1)) != g.npos) return false;
    --cursor;
    return true;
  }
  // Advance to the first character inside (go_out) or outside (go_in) `g`.
  bool go_out_grouping(std::u32string_view g) {
    for (; cursor < limit; ++cursor)
      if (g.find(at(cursor)) != g.npos) return true;
    return false;
  }
  bool go_in_grouping(std::u32string_view g) {
    for (; cursor < limit; ++cursor)
      if (g.find(at(cursor)) == g.npos) return true;
    return false;
  }
  bool go_out_grouping_b(std::u32string_view g) {
    for (; cursor > limit_backward; --cursor)
      if (g.find(at(cursor - 1)) != g.npos) return true;
    return false;
  }

  bool eq_s(std::u32string_view s) {
    if (limit - cursor < static_cast<int>(s.size())) return false;
    if (std::u32string_view(current).substr(static_cast<std::size_t>(cursor), s.size()) != s)
      return false;
    cursor += static_cast<int>(s.size());
    return true;
  }
  bool eq_s_b(std::u32string_view s) {
    const int n = static_cast<int>(s.size());
    if (cursor - limit_backward < n) return false;
    if (std::u32string_view(current).substr(static_cast<std::size_t>(cursor - n), s.size()) != s)
      return false;
    cursor -= n;
    return true;
  }
  bool char_b(char32_t c) {
    if (cursor <= limit_backward || at(cursor - 1) != c) return false;
    --cursor;
    return true;
  }
  bool char_f(char32_t c) {
    if (cursor >= limit || at(cursor) != c) return false;
    ++cursor;
    return true;
  }

  // Longest entry matching at the cursor; 0 when none matches.
  int find_among(std::initializer_list<Among> table) {
    const Among* best = nullptr;
    const std::u32string_view view(current);
    for (const auto& a : table) {
      const int n = static_cast<int>(a.s.size());
      if (limit - cursor < n) continue;
      if (view.substr(static_cast<std::size_t>(cursor), a.s.size()) != a.s) continue;
      if (!best || a.s.size() > best->s.size()) best = &a;
    }
    if (!best) return 0;
    cursor += static_cast<int>(best->s.size());
    return best->result;
  }
  int find_among_b(std::initializer_list<Among> table) {
    const Among* best = nullptr;
    const std::u32string_view view(current);
    for (const auto& a : table) {
      const int n = static_cast<int>(a.s.size());
      if (cursor - limit_backward < n) continue;
      if (view.substr(static_cast<std::size_t>(cursor - n), a.s.size()) != a.s) continue;
      if (!best || a.s.size() > best->s.size()) best = &a;
    }
    if (!best) return 0;
    cursor -= static_cast<int>(best->s.size());
    return best->result;
  }

  void slice_from(std::u32string_view s) {
    const int adjustment = static_cast<int>(s.size()) - (ket - bra);
    current.replace(static_cast<std::size_t>(bra), static_cast<std::size_t>(ket - bra), s);
    limit += adjustment;
    if (cursor >= ket)
      cursor += adjustment;
    else if (cursor > bra)
      cursor = bra;
    ket = bra + static_cast<int>(s.size());
  }
  void slice_del() { slice_from(U""); }
};

}  // namespace adrcode::snowball
