// Acceptance suite: one PASS/FAIL line per criterion, limits pinned below.
// Exits 1 if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "adrcode/benchmark.hpp"
#include "adrcode/encoder.hpp"
#include "adrcode/unicode.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace adrcode;

namespace {

constexpr double kExact = 1e-12;
constexpr int kOracleInstances = 500;
constexpr int kPermutationInstances = 200;
constexpr int kRandomStrings = 1000;
constexpr std::size_t kLargeTerms = 70000;
constexpr double kBuildLimitS = 5.0;
constexpr double kEncodeMedianLimitMs = 100.0;
constexpr double kEncodeP99LimitMs = 1000.0;
constexpr int kEncodeRuns = 300;
constexpr std::size_t kEncodeChars = 250;
constexpr double kScalingTolerance = 0.30;
constexpr int kBuildRepeats = 5;
constexpr std::size_t kBenchReports = 1000;
constexpr double kCorruptShare = 0.30;
constexpr double kCorruptTolerance = 0.02;

int failures = 0;

template <class... Args>
std::string format(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

void report(const char* name, bool ok, const std::string& detail) {
  std::printf("%s  %-26s %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

bool close(double a, double b) { return std::fabs(a - b) <= kExact; }

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Release properties, accumulated over every fuzz instance of the suite.
struct ReleaseTally {
  std::size_t instances = 0, violations = 0;
  std::string first;

  void check(const EncodingResult& result, const DictionaryBundle& bundle, const ReleaseThresholds& th) {
    ++instances;
    std::string why;
    for (const auto& s : result.selected) {
      const auto& text = bundle.term(s.vote.term).text;
      if (s.vote.voters.empty()) why = "'" + text + "' has no voter";
      if (s.weights.c3 >= th.c3_max) why = "'" + text + "' has c3 >= c3_max";
      if (static_cast<double>(s.weights.c5) >= th.c5_max) why = "'" + text + "' has c5 >= c5_max";
      for (const auto& o : result.selected)
        if (&o != &s && is_word_prefix(text, bundle.term(o.vote.term).text))
          why = "'" + text + "' prefixes '" + bundle.term(o.vote.term).text + "'";
    }
    if (!why.empty()) {
      if (first.empty()) first = why;
      ++violations;
    }
  }
};

ReleaseTally tally;

void formula_exactness() {
  const auto bundle = testing_support::make_bundle(
      testing_support::make_terms({{"T1", "anaphylactic shock"}, {"T2", "shock"}, {"T3", "cutaneous rash"}}),
      make_stemmer("en"));
  const auto tokens = preprocess("anaphylactic shock cutaneous rash", {}, bundle.stemmer);
  const auto records = vote(tokens, bundle.exact, bundle.stemmed);
  // (c1, c2, c3, c4, c5) per term id, worked out by hand from the definitions.
  const double expected[3][5] = {{0, 0, 0, 1, 1}, {0, 0, 0, 1, 0}, {0, 0, 0, 1, 1}};
  bool ok = records.size() == 3;
  std::string detail;
  for (const auto& r : records) {
    const auto w = compute_weights(r, bundle.term(r.term), tokens);
    const double got[5] = {w.c1, double(w.c2), w.c3, w.c4, double(w.c5)};
    for (int k = 0; k < 5; ++k) ok = ok && r.term < 3 && close(got[k], expected[r.term][k]);
    detail += format("%s=(%g,%g,%g,%g,%g) ", bundle.term(r.term).code.c_str(), got[0], got[1], got[2], got[3], got[4]);
  }
  report("formula_exactness", ok, detail + "tol 1e-12");
}

std::string random_unicode_string(std::mt19937& rng) {
  static const char* pieces[] = {"a", "b", "x", "Z", "é", "È", "ß", "ü", " ", "-", "1", "ñ", "ö", "Ω", "ж", "e\xCC\x81"};
  std::uniform_int_distribution<int> len(0, 24);
  std::uniform_int_distribution<std::size_t> pick(0, std::size(pieces) - 1);
  std::string s;
  for (int i = len(rng); i > 0; --i) s += pieces[pick(rng)];
  return s;
}

void pair_distance_check() {
  const double nn = pair_distance("night", "nacht");
  std::mt19937 rng(4242);
  int nonzero = 0;
  for (int i = 0; i < kRandomStrings; ++i) {
    const auto s = random_unicode_string(rng);
    if (pair_distance(s, s) != 0.0) ++nonzero;
  }
  report("pair_distance", close(nn, 0.75) && nonzero == 0,
         format("night/nacht=%.15g (0.75 +- 1e-12); d(x,x)!=0 on %d of %d random strings", nn, nonzero,
                kRandomStrings));
}

void oracle_equivalence() {
  std::mt19937 rng(90210);
  const ReleaseThresholds defaults;
  int vote_mismatches = 0, release_mismatches = 0;
  for (int round = 0; round < kOracleInstances; ++round) {
    const auto inst = testing_support::random_instance(rng);
    const auto bundle = testing_support::make_bundle(inst.terms, inst.stemmer());
    const auto tokens = preprocess(inst.text(), {}, bundle.stemmer);

    std::map<TermId, oracle::Vote> expected;
    const auto oracle_selected =
        oracle::encode(inst.terms, inst.description, inst.stemmer(), defaults.c3_max, defaults.c5_max, &expected);
    const auto records = vote(tokens, bundle.exact, bundle.stemmed);
    bool same = records.size() == expected.size();
    for (const auto& r : records) {
      const auto it = expected.find(r.term);
      same = same && it != expected.end() && it->second.voters == r.voters && it->second.voted == r.voted &&
             it->second.stem_used == r.stem_used;
    }
    if (!same) ++vote_mismatches;

    const auto result = encode(inst.text(), bundle);
    std::vector<std::string> got;
    for (const auto& c : result.selected) got.push_back(bundle.term(c.vote.term).code);
    if (got != oracle_selected) ++release_mismatches;
    tally.check(result, bundle, defaults);
  }
  report("oracle_equivalence", vote_mismatches == 0 && release_mismatches == 0,
         format("%d instances; vote mismatches %d, release mismatches %d", kOracleInstances, vote_mismatches,
                release_mismatches));
}

std::vector<std::string> selected_texts(const EncodingResult& r, const DictionaryBundle& bundle) {
  std::vector<std::string> out;
  for (const auto& c : r.selected) out.push_back(unicode::fold_case(bundle.term(c.vote.term).text));
  return out;
}

std::string missing_from(const std::vector<std::string>& have, std::initializer_list<const char*> want) {
  std::string missing;
  for (auto w : want)
    if (std::find(have.begin(), have.end(), w) == have.end()) missing += std::string(missing.empty() ? "" : ", ") + w;
  return missing;
}

void worked_examples() {
  const auto& fixture = testing_support::italian_fixture();
  const ReleaseThresholds defaults;
  std::string detail;

  const auto d1 = selected_texts(
      encode("Shock anafilattico (ipotensione + rash cutaneo) 1 h dopo assunzione x os del farmaco", fixture), fixture);
  const auto d1_missing = missing_from(d1, {"shock anafilattico", "ipotensione"});
  detail += d1_missing.empty() ? "D1 ok; " : "D1 missing " + d1_missing + "; ";

  const auto d3 =
      selected_texts(encode("Reazione locale estesa, dolore locale; cefalea e febbre per due giorni", fixture), fixture);
  const auto d3_missing = missing_from(d3, {"cefalea", "dolore", "febbre", "reazione locale"});
  detail += d3_missing.empty() ? "D3 ok; " : "D3 missing " + d3_missing + "; ";

  const std::string target = "vescicole in sede di vaccinazione";
  const bool present = std::any_of(fixture.terms.begin(), fixture.terms.end(),
                                   [&](const Term& t) { return unicode::fold_case(t.text) == target; });
  const auto r2 = encode(
      "gonfiore in sede di vaccinazione sx dal 5/11, febbre meno di 39,5 dal 21/11, vescicole, bolle presso la "
      "guancia dal 10/11",
      fixture);
  const auto d2 = selected_texts(r2, fixture);
  const bool d2_ok = present && std::find(d2.begin(), d2.end(), target) != d2.end();
  if (d2_ok) {
    detail += "D2 ok";
  } else if (!present) {
    detail += "D2 '" + target + "' absent from the fixture";
  } else {
    detail += "D2 '" + target + "' not selected";
    for (const auto& c : r2.ranked)
      if (unicode::fold_case(fixture.term(c.vote.term).text) == target)
        detail += format(": voted with c3=%.3f c5=%lld, release requires c3<%g and c5<%g", c.weights.c3,
                         static_cast<long long>(c.weights.c5), defaults.c3_max, defaults.c5_max);
  }
  report("worked_examples", d1_missing.empty() && d3_missing.empty() && d2_ok, detail);
}

void permutation() {
  std::mt19937 rng(1618);
  int changed = 0;
  for (int round = 0; round < kPermutationInstances; ++round) {
    auto inst = testing_support::random_instance(rng);
    const auto bundle = testing_support::make_bundle(inst.terms, inst.stemmer());
    const auto before = encode(inst.text(), bundle);
    std::shuffle(inst.description.begin(), inst.description.end(), rng);
    const auto after = encode(inst.text(), bundle);
    tally.check(before, bundle, {});
    tally.check(after, bundle, {});

    std::map<TermId, std::pair<double, int>> a, b;
    for (const auto& c : before.ranked) a[c.vote.term] = {c.weights.c1, c.weights.c2};
    for (const auto& c : after.ranked) b[c.vote.term] = {c.weights.c1, c.weights.c2};
    if (a != b) ++changed;
  }
  report("permutation", changed == 0,
         format("%d shuffled descriptions; voted set or (c1,c2) changed on %d", kPermutationInstances, changed));
}

// Synthetic dictionary of pseudo-Italian terms of 1..6 words.
std::vector<Term> synthetic_terms(std::size_t count) {
  static const char* syllables[] = {"ba", "ce", "di", "fo", "gu", "la", "me", "ni", "po", "ru", "sa", "te",
                                    "vo", "zi", "ca", "to", "re", "mi", "no", "pe", "ro", "se", "tu", "va"};
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::size_t> syl(0, std::size(syllables) - 1);
  std::vector<std::string> vocab;
  std::set<std::string> seen;
  while (vocab.size() < 30000) {
    std::string w;
    for (int i = std::uniform_int_distribution<int>(2, 5)(rng); i > 0; --i) w += syllables[syl(rng)];
    if (seen.insert(w).second) vocab.push_back(w);
  }
  std::uniform_int_distribution<std::size_t> word(0, vocab.size() - 1);
  std::uniform_int_distribution<int> length(1, 6);
  std::vector<Term> terms;
  terms.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::string text;
    for (int k = length(rng); k > 0; --k) text += (text.empty() ? "" : " ") + vocab[word(rng)];
    text[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
    terms.push_back(testing_support::make_term(format("%08zu", 10000000 + i), text, format("P%04zu", i % 5000)));
  }
  return terms;
}

double median_build_seconds(const std::vector<Term>& terms, const StopList& stop) {
  std::vector<double> times;
  for (int i = 0; i < kBuildRepeats; ++i) {
    auto copy = terms;
    const auto start = std::chrono::steady_clock::now();
    const auto bundle = DictionaryBundle::build(std::move(copy), stop, make_stemmer("it"), "synthetic");
    times.push_back(seconds_since(start));
  }
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

void performance() {
  const auto stop = StopList::load_file(testing_support::data_path("stopwords_it.txt"));
  const auto all = synthetic_terms(kLargeTerms);
  const std::vector<Term> half(all.begin(), all.begin() + kLargeTerms / 2);

  // Untimed first build so allocator and cache warm-up do not land on either size.
  median_build_seconds(half, stop);
  const double t_half = median_build_seconds(half, stop);
  const double t_full = median_build_seconds(all, stop);
  const double ratio = t_full / t_half;

  const auto bundle = DictionaryBundle::build(all, stop, make_stemmer("it"), "synthetic");
  std::mt19937 rng(99);
  std::vector<double> ms;
  std::size_t chars = 0;
  for (int i = 0; i < kEncodeRuns; ++i) {
    auto text = testing_support::synthetic_description(rng, bundle, kEncodeChars);
    text.resize(std::min(text.size(), kEncodeChars));
    chars += text.size();
    const auto start = std::chrono::steady_clock::now();
    [[maybe_unused]] const auto result = encode(text, bundle);
    ms.push_back(seconds_since(start) * 1000.0);
  }
  std::sort(ms.begin(), ms.end());
  const double median = ms[ms.size() / 2];
  const double p99 = ms[static_cast<std::size_t>(std::ceil(0.99 * ms.size())) - 1];

  const bool ok = t_full < kBuildLimitS && median < kEncodeMedianLimitMs && p99 < kEncodeP99LimitMs &&
                  std::fabs(ratio - 2.0) <= 2.0 * kScalingTolerance;
  report("performance", ok,
         format("build %zu terms %.3fs (<%gs), %zu terms %.3fs, ratio %.2f (2 +- 30%%); encode %zu chars median "
                "%.3fms (<%gms) p99 %.3fms (<%gms)",
                all.size(), t_full, kBuildLimitS, half.size(), t_half, ratio, chars / kEncodeRuns, median,
                kEncodeMedianLimitMs, p99, kEncodeP99LimitMs));
}

void benchmark_self_consistency() {
  const auto& fixture = testing_support::italian_fixture();
  std::mt19937 rng(2718);
  const std::size_t targets[] = {10, 30, 70, 180, 400};
  std::vector<bench::GoldReport> corpus;
  for (std::size_t i = 0; i < kBenchReports; ++i) {
    bench::GoldReport r;
    r.report_id = format("s%zu", i);
    r.description = testing_support::synthetic_description(rng, fixture, targets[i % 5]);
    for (const auto& c : encode(r.description, fixture).selected) r.gold_llt_codes.push_back(fixture.term(c.vote.term).code);
    corpus.push_back(r);
  }

  const auto clean = bench::run_benchmark(corpus, fixture, {});
  bool ok = clean.overall.n_flagged == 0;
  std::string per_bucket;
  for (const auto& b : clean.buckets) {
    ok = ok && b.n_reports > 0 && b.identical_rate == 1.0;
    per_bucket += format("%s%s=%.3f", per_bucket.empty() ? "" : " ", b.bucket.c_str(), b.identical_rate);
  }

  // Corrupt a fixed share of gold sets by adding a PT the encoder did not produce.
  std::vector<std::size_t> order(corpus.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  const auto corrupt = static_cast<std::size_t>(std::lround(kCorruptShare * static_cast<double>(corpus.size())));
  for (std::size_t k = 0; k < corrupt; ++k) {
    auto& r = corpus[order[k]];
    const auto pts = bench::map_to_pt(r.gold_llt_codes, fixture);
    for (const auto& t : fixture.terms)
      if (!pts.count(t.pt_code)) {
        r.gold_llt_codes.push_back(t.code);
        break;
      }
  }
  const auto dirty = bench::run_benchmark(corpus, fixture, {});
  const double rate = dirty.overall.identical_rate;
  ok = ok && std::fabs(rate - (1.0 - kCorruptShare)) <= kCorruptTolerance;
  report("benchmark_consistency", ok,
         format("%zu reports; clean %s; %zu corrupted -> %.4f (0.70 +- 0.02)", corpus.size(), per_bucket.c_str(),
                corrupt, rate));
}

void release_properties() {
  report("release_properties", tally.violations == 0,
         format("%zu fuzz encodings; %zu violations%s", tally.instances, tally.violations,
                tally.first.empty() ? "" : ("; first: " + tally.first).c_str()));
}

}  // namespace

int main() {
  formula_exactness();
  pair_distance_check();
  oracle_equivalence();
  worked_examples();
  permutation();
  performance();
  benchmark_self_consistency();
  release_properties();
  return failures == 0 ? 0 : 1;
}
