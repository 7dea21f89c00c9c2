// Snowball English (Porter2) stemmer.

#include <array>

#include "adrcode/stemmer.hpp"
#include "adrcode/unicode.hpp"
#include "snowball_env.hpp"

namespace adrcode {
namespace {

using snowball::Env;

constexpr std::u32string_view kV = U"aeiouy";
constexpr std::u32string_view kVWXY = U"Yaeiouwxy";
constexpr std::u32string_view kValidLi = U"cdeghkmnrt";
constexpr std::u32string_view kAEO = U"aeo";

struct EnglishStemmer {
  Env z;
  bool y_found = false;
  int p1 = 0;
  int p2 = 0;

  bool r1() const { return p1 <= z.cursor; }
  bool r2() const { return p2 <= z.cursor; }

  void prelude() {
    y_found = false;
    const int start = z.cursor;
    z.bra = z.cursor;
    if (z.char_f(U'\'')) {
      z.ket = z.cursor;
      z.slice_del();
    }
    z.cursor = start;
    z.bra = z.cursor;
    if (z.char_f(U'y')) {
      z.ket = z.cursor;
      z.slice_from(U"Y");
      y_found = true;
    }
    z.cursor = start;
    for (;;) {
      const int outer = z.cursor;
      bool found = false;
      for (;;) {
        const int here = z.cursor;
        if (z.in_grouping(kV)) {
          z.bra = z.cursor;
          if (z.char_f(U'y')) {
            z.ket = z.cursor;
            z.cursor = here;
            found = true;
            break;
          }
        }
        z.cursor = here;
        if (z.cursor >= z.limit) break;
        ++z.cursor;
      }
      if (!found) {
        z.cursor = outer;
        break;
      }
      z.slice_from(U"Y");
      y_found = true;
    }
    z.cursor = start;
  }

  void mark_regions() {
    p1 = p2 = z.limit;
    const int start = z.cursor;
    [&] {
      const int v2 = z.cursor;
      if (z.find_among({{U"arsen", -1},
                        {U"commun", -1},
                        {U"emerg", -1},
                        {U"gener", -1},
                        {U"inter", -1},
                        {U"later", -1},
                        {U"organ", -1},
                        {U"past", -1},
                        {U"univers", -1}}) == 0) {
        z.cursor = v2;
        if (!z.go_out_grouping(kV)) return;
        ++z.cursor;
        if (!z.go_in_grouping(kV)) return;
        ++z.cursor;
      }
      p1 = z.cursor;
      if (!z.go_out_grouping(kV)) return;
      ++z.cursor;
      if (!z.go_in_grouping(kV)) return;
      ++z.cursor;
      p2 = z.cursor;
    }();
    z.cursor = start;
  }

  bool shortv() {
    const int v1 = z.limit - z.cursor;
    if (z.out_grouping_b(kVWXY) && z.in_grouping_b(kV) && z.out_grouping_b(kV)) return true;
    z.cursor = z.limit - v1;
    if (z.out_grouping_b(kV) && z.in_grouping_b(kV) && z.cursor <= z.limit_backward) return true;
    z.cursor = z.limit - v1;
    return z.eq_s_b(U"past");
  }

  bool step_1a() {
    const int v1 = z.limit - z.cursor;
    z.ket = z.cursor;
    if (z.find_among_b({{U"'", 1}, {U"'s'", 1}, {U"'s", 1}}) == 0) {
      z.cursor = z.limit - v1;
    } else {
      z.bra = z.cursor;
      z.slice_del();
    }
    z.ket = z.cursor;
    const int among = z.find_among_b(
        {{U"ied", 2}, {U"s", 3}, {U"ies", 2}, {U"sses", 1}, {U"ss", -1}, {U"us", -1}});
    if (among == 0) return false;
    z.bra = z.cursor;
    if (among == 1) {
      z.slice_from(U"ss");
    } else if (among == 2) {
      if (z.cursor - 2 >= z.limit_backward) {
        z.cursor -= 2;
        z.slice_from(U"i");
      } else {
        z.slice_from(U"ie");
      }
    } else if (among == 3) {
      if (z.cursor <= z.limit_backward) return false;
      --z.cursor;
      if (!z.go_out_grouping_b(kV)) return false;
      --z.cursor;
      z.slice_del();
    }
    return true;
  }

  bool step_1b() {
    z.ket = z.cursor;
    int among = z.find_among_b({{U"", -1},
                                {U"ed", 2},
                                {U"eed", 1},
                                {U"ing", 3},
                                {U"edly", 2},
                                {U"eedly", 1},
                                {U"ingly", 2}});
    z.bra = z.cursor;
    const int v1 = z.limit - z.cursor;
    bool fallthrough = false;
    if (among == 1) {
      const int v2 = z.limit - z.cursor;
      if (r1()) {
        const int v3 = z.limit - z.cursor;
        const bool kept =
            z.find_among_b({{U"succ", 1}, {U"proc", 1}, {U"exc", 1}}) != 0 &&
            z.cursor <= z.limit_backward;
        if (!kept) {
          z.cursor = z.limit - v3;
          z.slice_from(U"ee");
        }
      }
      z.cursor = z.limit - v2;
    } else if (among == 2) {
      fallthrough = true;
    } else if (among == 3) {
      among = z.find_among_b({{U"even", 2},
                              {U"cann", 2},
                              {U"inn", 2},
                              {U"earr", 2},
                              {U"herr", 2},
                              {U"out", 2},
                              {U"y", 1}});
      if (among == 0) {
        fallthrough = true;
      } else if (among == 1) {
        const int v4 = z.limit - z.cursor;
        if (!z.out_grouping_b(kV) || z.cursor > z.limit_backward) {
          fallthrough = true;
        } else {
          z.cursor = z.limit - v4;
          z.bra = z.cursor;
          z.slice_from(U"ie");
        }
      } else if (z.cursor > z.limit_backward) {
        fallthrough = true;
      }
    }
    if (!fallthrough) return true;

    z.cursor = z.limit - v1;
    const int v5 = z.limit - z.cursor;
    if (!z.go_out_grouping_b(kV)) return false;
    --z.cursor;
    z.cursor = z.limit - v5;
    z.slice_del();
    z.ket = z.cursor;
    z.bra = z.cursor;
    const int v6 = z.limit - z.cursor;
    among = z.find_among_b({{U"", 3},
                            {U"bb", 2},
                            {U"dd", 2},
                            {U"ff", 2},
                            {U"gg", 2},
                            {U"bl", 1},
                            {U"mm", 2},
                            {U"nn", 2},
                            {U"pp", 2},
                            {U"rr", 2},
                            {U"at", 1},
                            {U"tt", 2},
                            {U"iz", 1}});
    if (among == 1) {
      z.slice_from(U"e");
      return false;
    }
    if (among == 2) {
      const int v7 = z.limit - z.cursor;
      if (z.in_grouping_b(kAEO) && z.cursor <= z.limit_backward) return false;
      z.cursor = z.limit - v7;
    } else {
      if (z.cursor != p1) return false;
      const int v8 = z.limit - z.cursor;
      if (!shortv()) return false;
      z.cursor = z.limit - v8;
      z.slice_from(U"e");
      return false;
    }
    z.cursor = z.limit - v6;
    z.ket = z.cursor;
    if (z.cursor <= z.limit_backward) return false;
    --z.cursor;
    z.bra = z.cursor;
    z.slice_del();
    return true;
  }

  bool step_1c() {
    z.ket = z.cursor;
    if (!z.char_b(U'y') && !z.char_b(U'Y')) return false;
    z.bra = z.cursor;
    if (!z.out_grouping_b(kV)) return false;
    if (z.cursor <= z.limit_backward) return false;
    z.slice_from(U"i");
    return true;
  }

  bool step_2() {
    z.ket = z.cursor;
    const int among = z.find_among_b({
        {U"anci", 3},    {U"enci", 2},     {U"ogi", 14},     {U"li", 16},      {U"bli", 12},
        {U"abli", 4},    {U"alli", 8},     {U"fulli", 9},    {U"lessli", 15},  {U"ousli", 10},
        {U"entli", 5},   {U"aliti", 8},    {U"biliti", 12},  {U"iviti", 11},   {U"tional", 1},
        {U"ational", 7}, {U"alism", 8},    {U"ation", 7},    {U"ization", 6},  {U"izer", 6},
        {U"ator", 7},    {U"iveness", 11}, {U"fulness", 9},  {U"ousness", 10}, {U"ogist", 13},
    });
    if (among == 0) return false;
    z.bra = z.cursor;
    if (!r1()) return false;
    static constexpr std::array<std::u32string_view, 16> kReplacement = {
        U"",    U"tion", U"ence", U"ance", U"able", U"ent", U"ize", U"ate",
        U"al",  U"ful",  U"ous",  U"ive",  U"ble",  U"og",  U"og",  U"less"};
    if (among == 14) {
      if (!z.char_b(U'l')) return false;
      z.slice_from(U"og");
    } else if (among == 16) {
      if (!z.in_grouping_b(kValidLi)) return false;
      z.slice_del();
    } else {
      z.slice_from(kReplacement[static_cast<std::size_t>(among)]);
    }
    return true;
  }

  bool step_3() {
    z.ket = z.cursor;
    const int among = z.find_among_b({{U"icate", 4},
                                      {U"ative", 6},
                                      {U"alize", 3},
                                      {U"iciti", 4},
                                      {U"ical", 4},
                                      {U"tional", 1},
                                      {U"ational", 2},
                                      {U"ful", 5},
                                      {U"ness", 5}});
    if (among == 0) return false;
    z.bra = z.cursor;
    if (!r1()) return false;
    switch (among) {
      case 1: z.slice_from(U"tion"); break;
      case 2: z.slice_from(U"ate"); break;
      case 3: z.slice_from(U"al"); break;
      case 4: z.slice_from(U"ic"); break;
      case 5: z.slice_del(); break;
      default:
        if (!r2()) return false;
        z.slice_del();
    }
    return true;
  }

  bool step_4() {
    z.ket = z.cursor;
    const int among = z.find_among_b({{U"ic", 1},   {U"ance", 1}, {U"ence", 1}, {U"able", 1},
                                      {U"ible", 1}, {U"ate", 1},  {U"ive", 1},  {U"ize", 1},
                                      {U"iti", 1},  {U"al", 1},   {U"ism", 1},  {U"ion", 2},
                                      {U"er", 1},   {U"ous", 1},  {U"ant", 1},  {U"ent", 1},
                                      {U"ment", 1}, {U"ement", 1}});
    if (among == 0) return false;
    z.bra = z.cursor;
    if (!r2()) return false;
    if (among == 1) {
      z.slice_del();
    } else {
      if (!z.char_b(U's') && !z.char_b(U't')) return false;
      z.slice_del();
    }
    return true;
  }

  bool step_5() {
    z.ket = z.cursor;
    const int among = z.find_among_b({{U"e", 1}, {U"l", 2}});
    if (among == 0) return false;
    z.bra = z.cursor;
    if (among == 1) {
      if (!r2()) {
        if (!r1()) return false;
        const int v1 = z.limit - z.cursor;
        if (shortv()) return false;
        z.cursor = z.limit - v1;
      }
      z.slice_del();
    } else {
      if (!r2()) return false;
      if (!z.char_b(U'l')) return false;
      z.slice_del();
    }
    return true;
  }

  bool exception1() {
    z.bra = z.cursor;
    const int among = z.find_among({{U"andes", -1},
                                    {U"atlas", -1},
                                    {U"bias", -1},
                                    {U"cosmos", -1},
                                    {U"early", 6},
                                    {U"gently", 4},
                                    {U"howe", -1},
                                    {U"idly", 3},
                                    {U"news", -1},
                                    {U"only", 7},
                                    {U"singly", 8},
                                    {U"skies", 2},
                                    {U"skis", 1},
                                    {U"sky", -1},
                                    {U"ugly", 5}});
    if (among == 0) return false;
    z.ket = z.cursor;
    if (z.cursor < z.limit) return false;
    static constexpr std::array<std::u32string_view, 8> kForms = {
        U"ski", U"sky", U"idl", U"gentl", U"ugli", U"earli", U"onli", U"singl"};
    if (among > 0) z.slice_from(kForms[static_cast<std::size_t>(among - 1)]);
    return true;
  }

  void postlude() {
    if (!y_found) return;
    for (;;) {
      const int outer = z.cursor;
      bool found = false;
      for (;;) {
        const int here = z.cursor;
        z.bra = z.cursor;
        if (z.char_f(U'Y')) {
          z.ket = z.cursor;
          z.cursor = here;
          found = true;
          break;
        }
        z.cursor = here;
        if (z.cursor >= z.limit) break;
        ++z.cursor;
      }
      if (!found) {
        z.cursor = outer;
        return;
      }
      z.slice_from(U"y");
    }
  }

  void stem() {
    const int v1 = z.cursor;
    if (exception1()) return;
    z.cursor = v1;
    if (z.cursor + 3 > z.limit) return;
    prelude();
    mark_regions();
    z.limit_backward = z.cursor;
    z.cursor = z.limit;
    const auto run = [&](auto step) {
      const int mark = z.limit - z.cursor;
      (this->*step)();
      z.cursor = z.limit - mark;
    };
    run(&EnglishStemmer::step_1a);
    run(&EnglishStemmer::step_1b);
    run(&EnglishStemmer::step_1c);
    run(&EnglishStemmer::step_2);
    run(&EnglishStemmer::step_3);
    run(&EnglishStemmer::step_4);
    run(&EnglishStemmer::step_5);
    z.cursor = z.limit_backward;
    postlude();
  }
};

}  // namespace

std::string stem_english(std::string_view word) {
  EnglishStemmer s{snowball::Env(unicode::decode(word))};
  s.stem();
  return unicode::encode(std::u32string_view(s.z.current).substr(0, static_cast<std::size_t>(s.z.limit)));
}

Stemmer make_stemmer(std::string_view language) {
  if (language == "it") return stem_italian;
  if (language == "en") return stem_english;
  if (language == "none") return [](std::string_view w) { return std::string(w); };
  throw std::invalid_argument("unsupported stemmer language: " + std::string(language));
}

}  // namespace adrcode
