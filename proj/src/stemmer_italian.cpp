// Snowball Italian stemmer.

#include "adrcode/stemmer.hpp"
#include "adrcode/unicode.hpp"
#include "snowball_env.hpp"

namespace adrcode {
namespace {

using snowball::Env;

constexpr std::u32string_view kV = U"aeiouàèìòù";
constexpr std::u32string_view kAEIO = U"aeioàèìò";
constexpr std::u32string_view kCG = U"cg";

struct ItalianStemmer {
  Env z;
  int p_v = 0;
  int p1 = 0;
  int p2 = 0;

  bool rv() const { return p_v <= z.cursor; }
  bool r2() const { return p2 <= z.cursor; }

  bool elisions() {
    z.bra = z.cursor;
    if (z.find_among({{U"all'", -1}, {U"d'", -1},     {U"dall'", -1},  {U"dell'", -1},
                      {U"gl'", -1},  {U"l'", -1},     {U"m'", -1},     {U"nell'", -1},
                      {U"quell'", -1}, {U"quest'", -1}, {U"s'", -1},   {U"sull'", -1},
                      {U"t'", -1},   {U"tutt'", -1},  {U"un'", -1},    {U"v'", -1}}) == 0)
      return false;
    z.ket = z.cursor;
    if (z.cursor >= z.limit) return false;
    z.slice_del();
    return true;
  }

  void prelude() {
    const int start = z.cursor;
    for (;;) {
      const int save = z.cursor;
      z.bra = z.cursor;
      const int among = z.find_among({{U"", 7},
                                      {U"qu", 6},
                                      {U"á", 1},
                                      {U"é", 2},
                                      {U"í", 3},
                                      {U"ó", 4},
                                      {U"ú", 5}});
      z.ket = z.cursor;
      switch (among) {
        case 1: z.slice_from(U"à"); continue;
        case 2: z.slice_from(U"è"); continue;
        case 3: z.slice_from(U"ì"); continue;
        case 4: z.slice_from(U"ò"); continue;
        case 5: z.slice_from(U"ù"); continue;
        case 6: z.slice_from(U"qU"); continue;
        default:
          if (z.cursor >= z.limit) {
            z.cursor = save;
            break;
          }
          ++z.cursor;
          continue;
      }
      break;
    }
    z.cursor = start;
    // Mark u and i between vowels as consonants.
    for (;;) {
      const int outer = z.cursor;
      bool found = false;
      for (;;) {
        const int here = z.cursor;
        if (z.in_grouping(kV)) {
          z.bra = z.cursor;
          const int alt = z.cursor;
          if (z.char_f(U'u')) {
            z.ket = z.cursor;
            if (z.in_grouping(kV)) {
              z.slice_from(U"U");
              z.cursor = here;
              found = true;
              break;
            }
          }
          z.cursor = alt;
          if (z.char_f(U'i')) {
            z.ket = z.cursor;
            if (z.in_grouping(kV)) {
              z.slice_from(U"I");
              z.cursor = here;
              found = true;
              break;
            }
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
    }
  }

  void mark_regions() {
    p_v = p1 = p2 = z.limit;
    const int start = z.cursor;
    bool ok = false;
    {
      const int v2 = z.cursor;
      if (z.in_grouping(kV)) {
        const int v3 = z.cursor;
        if (z.out_grouping(kV) && z.go_out_grouping(kV)) {
          ++z.cursor;
          ok = true;
        } else {
          z.cursor = v3;
          if (z.in_grouping(kV) && z.go_in_grouping(kV)) {
            ++z.cursor;
            ok = true;
          }
        }
      }
      if (!ok) {
        z.cursor = v2;
        if (z.eq_s(U"divan")) ok = true;
      }
      if (!ok) {
        z.cursor = v2;
        if (z.out_grouping(kV)) {
          const int v4 = z.cursor;
          if (z.out_grouping(kV) && z.go_out_grouping(kV)) {
            ++z.cursor;
            ok = true;
          } else {
            z.cursor = v4;
            if (z.in_grouping(kV) && z.cursor < z.limit) {
              ++z.cursor;
              ok = true;
            }
          }
        }
      }
    }
    if (ok) p_v = z.cursor;
    z.cursor = start;
    [&] {
      if (!z.go_out_grouping(kV)) return;
      ++z.cursor;
      if (!z.go_in_grouping(kV)) return;
      ++z.cursor;
      p1 = z.cursor;
      if (!z.go_out_grouping(kV)) return;
      ++z.cursor;
      if (!z.go_in_grouping(kV)) return;
      ++z.cursor;
      p2 = z.cursor;
    }();
    z.cursor = start;
  }

  void postlude() {
    for (;;) {
      const int save = z.cursor;
      z.bra = z.cursor;
      const int among = z.find_among({{U"", 3}, {U"I", 1}, {U"U", 2}});
      z.ket = z.cursor;
      if (among == 1) {
        z.slice_from(U"i");
      } else if (among == 2) {
        z.slice_from(U"u");
      } else {
        if (z.cursor >= z.limit) {
          z.cursor = save;
          return;
        }
        ++z.cursor;
      }
    }
  }

  bool attached_pronoun() {
    z.ket = z.cursor;
    if (z.find_among_b({{U"la", -1},     {U"cela", -1},   {U"gliela", -1}, {U"mela", -1},
                        {U"tela", -1},   {U"vela", -1},   {U"le", -1},     {U"cele", -1},
                        {U"gliele", -1}, {U"mele", -1},   {U"tele", -1},   {U"vele", -1},
                        {U"ne", -1},     {U"cene", -1},   {U"gliene", -1}, {U"mene", -1},
                        {U"sene", -1},   {U"tene", -1},   {U"vene", -1},   {U"ci", -1},
                        {U"li", -1},     {U"celi", -1},   {U"glieli", -1}, {U"meli", -1},
                        {U"teli", -1},   {U"veli", -1},   {U"gli", -1},    {U"mi", -1},
                        {U"si", -1},     {U"ti", -1},     {U"vi", -1},     {U"lo", -1},
                        {U"celo", -1},   {U"glielo", -1}, {U"melo", -1},   {U"telo", -1},
                        {U"velo", -1}}) == 0)
      return false;
    z.bra = z.cursor;
    const int among =
        z.find_among_b({{U"ando", 1}, {U"endo", 1}, {U"ar", 2}, {U"er", 2}, {U"ir", 2}});
    if (among == 0) return false;
    if (!rv()) return false;
    z.slice_from(among == 1 ? U"" : U"e");
    return true;
  }

  // Optional deletion of `s` in R2; restores the cursor on failure.
  bool try_delete_r2(std::u32string_view s, int restore) {
    z.ket = z.cursor;
    if (!z.eq_s_b(s)) {
      z.cursor = z.limit - restore;
      return false;
    }
    z.bra = z.cursor;
    if (!r2()) {
      z.cursor = z.limit - restore;
      return false;
    }
    z.slice_del();
    return true;
  }

  bool standard_suffix() {
    z.ket = z.cursor;
    const int among = z.find_among_b({
        {U"ica", 1},    {U"logia", 3},  {U"osa", 1},    {U"ista", 1},   {U"iva", 9},
        {U"anza", 1},   {U"enza", 5},   {U"ice", 1},    {U"atrice", 1}, {U"iche", 1},
        {U"logie", 3},  {U"abile", 1},  {U"ibile", 1},  {U"usione", 4}, {U"azione", 2},
        {U"uzione", 4}, {U"atore", 2},  {U"ose", 1},    {U"ante", 1},   {U"mente", 1},
        {U"amente", 7}, {U"iste", 1},   {U"ive", 9},    {U"anze", 1},   {U"enze", 5},
        {U"ici", 1},    {U"atrici", 1}, {U"ichi", 1},   {U"abili", 1},  {U"ibili", 1},
        {U"ismi", 1},   {U"usioni", 4}, {U"azioni", 2}, {U"uzioni", 4}, {U"atori", 2},
        {U"osi", 1},    {U"anti", 1},   {U"amenti", 6}, {U"imenti", 6}, {U"isti", 1},
        {U"ivi", 9},    {U"ico", 1},    {U"ismo", 1},   {U"oso", 1},    {U"amento", 6},
        {U"imento", 6}, {U"ivo", 9},    {U"ità", 8},    {U"istà", 1},   {U"istè", 1},
        {U"istì", 1},
    });
    if (among == 0) return false;
    z.bra = z.cursor;
    switch (among) {
      case 1:
        if (!r2()) return false;
        z.slice_del();
        break;
      case 2: {
        if (!r2()) return false;
        z.slice_del();
        try_delete_r2(U"ic", z.limit - z.cursor);
        break;
      }
      case 3:
        if (!r2()) return false;
        z.slice_from(U"log");
        break;
      case 4:
        if (!r2()) return false;
        z.slice_from(U"u");
        break;
      case 5:
        if (!r2()) return false;
        z.slice_from(U"ente");
        break;
      case 6:
        if (!rv()) return false;
        z.slice_del();
        break;
      case 7: {
        if (p1 > z.cursor) return false;
        z.slice_del();
        const int v2 = z.limit - z.cursor;
        z.ket = z.cursor;
        const int inner = z.find_among_b({{U"ic", -1}, {U"abil", -1}, {U"os", -1}, {U"iv", 1}});
        if (inner == 0) {
          z.cursor = z.limit - v2;
          break;
        }
        z.bra = z.cursor;
        if (!r2()) {
          z.cursor = z.limit - v2;
          break;
        }
        z.slice_del();
        if (inner == 1) try_delete_r2(U"at", v2);
        break;
      }
      case 8: {
        if (!r2()) return false;
        z.slice_del();
        const int v3 = z.limit - z.cursor;
        z.ket = z.cursor;
        if (z.find_among_b({{U"ic", 1}, {U"abil", 1}, {U"iv", 1}}) == 0) {
          z.cursor = z.limit - v3;
          break;
        }
        z.bra = z.cursor;
        if (!r2()) {
          z.cursor = z.limit - v3;
          break;
        }
        z.slice_del();
        break;
      }
      default: {
        if (!r2()) return false;
        z.slice_del();
        const int v4 = z.limit - z.cursor;
        if (try_delete_r2(U"at", v4)) try_delete_r2(U"ic", v4);
        break;
      }
    }
    return true;
  }

  bool verb_suffix() {
    if (z.cursor < p_v) return false;
    const int saved_limit = z.limit_backward;
    z.limit_backward = p_v;
    z.ket = z.cursor;
    if (z.find_among_b({
            {U"isca", 1},     {U"enda", 1},     {U"ata", 1},    {U"ita", 1},    {U"uta", 1},
            {U"ava", 1},      {U"eva", 1},      {U"iva", 1},    {U"erebbe", 1}, {U"irebbe", 1},
            {U"isce", 1},     {U"ende", 1},     {U"are", 1},    {U"ere", 1},    {U"ire", 1},
            {U"asse", 1},     {U"ate", 1},      {U"avate", 1},  {U"evate", 1},  {U"ivate", 1},
            {U"ete", 1},      {U"erete", 1},    {U"irete", 1},  {U"ite", 1},    {U"ereste", 1},
            {U"ireste", 1},   {U"ute", 1},      {U"erai", 1},   {U"irai", 1},   {U"isci", 1},
            {U"endi", 1},     {U"erei", 1},     {U"irei", 1},   {U"assi", 1},   {U"ati", 1},
            {U"iti", 1},      {U"eresti", 1},   {U"iresti", 1}, {U"uti", 1},    {U"avi", 1},
            {U"evi", 1},      {U"ivi", 1},      {U"isco", 1},   {U"ando", 1},   {U"endo", 1},
            {U"Yamo", 1},     {U"iamo", 1},     {U"avamo", 1},  {U"evamo", 1},  {U"ivamo", 1},
            {U"eremo", 1},    {U"iremo", 1},    {U"assimo", 1}, {U"ammo", 1},   {U"emmo", 1},
            {U"eremmo", 1},   {U"iremmo", 1},   {U"immo", 1},   {U"ano", 1},    {U"iscano", 1},
            {U"avano", 1},    {U"evano", 1},    {U"ivano", 1},  {U"eranno", 1}, {U"iranno", 1},
            {U"ono", 1},      {U"iscono", 1},   {U"arono", 1},  {U"erono", 1},  {U"irono", 1},
            {U"erebbero", 1}, {U"irebbero", 1}, {U"assero", 1}, {U"essero", 1}, {U"issero", 1},
            {U"ato", 1},      {U"ito", 1},      {U"uto", 1},    {U"avo", 1},    {U"evo", 1},
            {U"ivo", 1},      {U"ar", 1},       {U"ir", 1},     {U"erà", 1},    {U"irà", 1},
            {U"erò", 1},      {U"irò", 1},
        }) == 0) {
      z.limit_backward = saved_limit;
      return false;
    }
    z.bra = z.cursor;
    z.slice_del();
    z.limit_backward = saved_limit;
    return true;
  }

  void vowel_suffix() {
    const int v1 = z.limit - z.cursor;
    [&] {
      z.ket = z.cursor;
      if (!z.in_grouping_b(kAEIO)) {
        z.cursor = z.limit - v1;
        return;
      }
      z.bra = z.cursor;
      if (!rv()) {
        z.cursor = z.limit - v1;
        return;
      }
      z.slice_del();
      z.ket = z.cursor;
      if (!z.char_b(U'i')) {
        z.cursor = z.limit - v1;
        return;
      }
      z.bra = z.cursor;
      if (!rv()) {
        z.cursor = z.limit - v1;
        return;
      }
      z.slice_del();
    }();
    const int v2 = z.limit - z.cursor;
    z.ket = z.cursor;
    if (!z.char_b(U'h')) {
      z.cursor = z.limit - v2;
      return;
    }
    z.bra = z.cursor;
    if (!z.in_grouping_b(kCG) || !rv()) {
      z.cursor = z.limit - v2;
      return;
    }
    z.slice_del();
  }

  void stem() {
    const int v1 = z.cursor;
    elisions();
    z.cursor = v1;
    prelude();
    z.cursor = v1;
    mark_regions();
    z.limit_backward = z.cursor;
    z.cursor = z.limit;

    int mark = z.limit - z.cursor;
    attached_pronoun();
    z.cursor = z.limit - mark;

    mark = z.limit - z.cursor;
    if (!standard_suffix()) {
      z.cursor = z.limit - mark;
      verb_suffix();
    }
    z.cursor = z.limit - mark;

    mark = z.limit - z.cursor;
    vowel_suffix();
    z.cursor = z.limit - mark;

    z.cursor = z.limit_backward;
    postlude();
  }
};

}  // namespace

std::string stem_italian(std::string_view word) {
  ItalianStemmer s{snowball::Env(unicode::decode(word))};
  s.stem();
  return unicode::encode(std::u32string_view(s.z.current).substr(0, static_cast<std::size_t>(s.z.limit)));
}

}  // namespace adrcode
