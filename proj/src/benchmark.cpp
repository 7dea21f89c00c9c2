#include "adrcode/benchmark.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "adrcode/csv.hpp"
#include "adrcode/serialize.hpp"
#include "adrcode/unicode.hpp"

namespace adrcode::bench {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::string lower_ascii(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::vector<std::string> split_codes(std::string_view field) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= field.size()) {
    auto end = field.find(';', start);
    if (end == std::string_view::npos) end = field.size();
    auto code = trim(field.substr(start, end - start));
    if (!code.empty()) out.push_back(std::move(code));
    start = end + 1;
  }
  return out;
}

Json to_array(const PtSet& s) {
  Json a = Json::array();
  for (const auto& x : s) a.push_back(x);
  return a;
}

struct Accumulator {
  std::size_t n = 0, identical = 0, flagged = 0;
  double jaccard_sum = 0;

  BucketStats finish(std::string label) const {
    BucketStats s;
    s.bucket = std::move(label);
    s.n_reports = n;
    s.n_identical = identical;
    s.n_flagged = flagged;
    const auto ok = n - flagged;
    if (ok > 0) {
      s.identical_rate = static_cast<double>(identical) / static_cast<double>(ok);
      s.mean_jaccard = jaccard_sum / static_cast<double>(ok);
    }
    return s;
  }
};

}  // namespace

CorpusError::CorpusError(std::size_t line, const std::string& what)
    : std::runtime_error("corpus line " + std::to_string(line) + ": " + what), line_(line) {}

UnknownCode::UnknownCode(std::string code)
    : std::runtime_error("unknown term code " + code), code_(std::move(code)) {}

std::vector<GoldReport> load_corpus(std::istream& in) {
  std::vector<GoldReport> out;
  std::unordered_set<std::string> ids;
  csv::Reader reader(in);
  try {
    auto header = reader.next();
    if (!header) return out;
    auto& names = header->fields;
    if (!names.empty() && names[0].starts_with("\xEF\xBB\xBF")) names[0].erase(0, 3);
    static const char* expected[] = {"report_id", "description", "gold_llt_codes"};
    if (names.size() != 3) throw CorpusError(header->line, "header must have 3 columns");
    for (std::size_t i = 0; i < 3; ++i)
      if (lower_ascii(trim(names[i])) != expected[i])
        throw CorpusError(header->line, "unexpected header column '" + names[i] + "'");

    while (auto rec = reader.next()) {
      auto& f = rec->fields;
      if (f.size() == 1 && f[0].empty()) continue;
      if (f.size() != 3) throw CorpusError(rec->line, "expected 3 columns, got " + std::to_string(f.size()));
      GoldReport r;
      r.report_id = trim(f[0]);
      r.description = std::move(f[1]);
      r.gold_llt_codes = split_codes(f[2]);
      r.line = rec->line;
      if (r.report_id.empty()) throw CorpusError(rec->line, "empty report_id");
      if (!unicode::is_valid_utf8(r.description)) throw CorpusError(rec->line, "invalid UTF-8");
      if (trim(r.description).empty()) throw CorpusError(rec->line, "empty description");
      if (!ids.insert(r.report_id).second) throw CorpusError(rec->line, "duplicate report_id " + r.report_id);
      out.push_back(std::move(r));
    }
  } catch (const csv::ParseError& e) {
    throw CorpusError(e.line(), e.what());
  }
  return out;
}

std::vector<GoldReport> load_corpus_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError(0, "cannot open " + path);
  return load_corpus(in);
}

PtSet map_to_pt(std::span<const std::string> llt_codes, const DictionaryBundle& bundle) {
  PtSet out;
  for (const auto& code : llt_codes) {
    const Term* t = bundle.find(code);
    if (!t) throw UnknownCode(code);
    out.insert(t->pt_code);
  }
  return out;
}

Comparison compare_pt_sets(const PtSet& gold, const PtSet& automatic) {
  Comparison c;
  std::size_t shared = 0;
  for (const auto& p : automatic) shared += gold.count(p);
  const auto united = gold.size() + automatic.size() - shared;
  c.identical = gold == automatic;
  c.jaccard = united == 0 ? 1.0 : static_cast<double>(shared) / static_cast<double>(united);
  c.false_positives = automatic.size() - shared;
  c.omissions = gold.size() - shared;
  return c;
}

namespace {

std::vector<std::string> selected_codes(const EncodingResult& result, const DictionaryBundle& bundle) {
  std::vector<std::string> codes;
  for (const auto& c : result.selected) codes.push_back(bundle.term(c.vote.term).code);
  return codes;
}

}  // namespace

Comparison compare_report(const GoldReport& gold, const EncodingResult& automatic, const DictionaryBundle& bundle) {
  const auto codes = selected_codes(automatic, bundle);
  return compare_pt_sets(map_to_pt(gold.gold_llt_codes, bundle), map_to_pt(codes, bundle));
}

std::size_t bucket_of(std::size_t chars) {
  if (chars <= 20) return 0;
  if (chars <= 40) return 1;
  if (chars <= 100) return 2;
  if (chars <= 250) return 3;
  return 4;
}

BenchmarkSummary run_benchmark(std::span<const GoldReport> corpus, const DictionaryBundle& bundle,
                               const EncoderConfig& config, std::ostream* detail) {
  std::array<Accumulator, kBucketLabels.size()> acc{};
  Accumulator all;

  for (const auto& report : corpus) {
    Json line;
    line["report_id"] = report.report_id;
    std::size_t bucket = 0;
    try {
      bucket = bucket_of(unicode::code_point_count(report.description));
      line["bucket"] = kBucketLabels[bucket];
      const auto result = encode(report.description, bundle, config);
      const auto auto_codes = selected_codes(result, bundle);
      const auto gold_pts = map_to_pt(report.gold_llt_codes, bundle);
      const auto auto_pts = map_to_pt(auto_codes, bundle);
      const auto cmp = compare_pt_sets(gold_pts, auto_pts);

      line["identical"] = cmp.identical;
      line["jaccard"] = cmp.jaccard;
      line["auto_pts"] = to_array(auto_pts);
      line["gold_pts"] = to_array(gold_pts);
      line["auto_llts"] = auto_codes;
      line["false_positives"] = cmp.false_positives;
      line["omissions"] = cmp.omissions;
      for (auto* a : {&acc[bucket], &all}) {
        ++a->n;
        a->identical += cmp.identical ? 1 : 0;
        a->jaccard_sum += cmp.jaccard;
      }
    } catch (const std::exception& e) {
      if (!line.contains("bucket")) line["bucket"] = kBucketLabels[bucket];
      line["error"] = e.what();
      for (auto* a : {&acc[bucket], &all}) {
        ++a->n;
        ++a->flagged;
      }
    }
    if (detail) *detail << line.dump() << '\n';
  }

  BenchmarkSummary summary;
  for (std::size_t b = 0; b < kBucketLabels.size(); ++b) summary.buckets.push_back(acc[b].finish(std::string(kBucketLabels[b])));
  summary.overall = all.finish("all");
  return summary;
}

void write_summary_csv(const BenchmarkSummary& summary, std::ostream& out) {
  out << "bucket,n_reports,identical_rate,mean_jaccard,n_flagged\n";
  auto row = [&](const BucketStats& s) {
    std::ostringstream rate, jac;
    rate << std::fixed << std::setprecision(6) << s.identical_rate;
    jac << std::fixed << std::setprecision(6) << s.mean_jaccard;
    out << csv::join_row({s.bucket, std::to_string(s.n_reports), rate.str(), jac.str(), std::to_string(s.n_flagged)})
        << '\n';
  };
  for (const auto& s : summary.buckets) row(s);
  row(summary.overall);
}

}  // namespace adrcode::bench
