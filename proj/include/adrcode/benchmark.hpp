#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "adrcode/dictionary.hpp"
#include "adrcode/encoder.hpp"

namespace adrcode::bench {

// One manually coded report.
struct GoldReport {
  std::string report_id;
  std::string description;
  std::vector<std::string> gold_llt_codes;
  std::size_t line = 0;
};

class CorpusError : public std::runtime_error {
 public:
  CorpusError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// CSV with header report_id, description, gold_llt_codes; codes separated by ';'.
std::vector<GoldReport> load_corpus(std::istream& in);
std::vector<GoldReport> load_corpus_file(const std::string& path);

class UnknownCode : public std::runtime_error {
 public:
  explicit UnknownCode(std::string code);
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

using PtSet = std::set<std::string>;

PtSet map_to_pt(std::span<const std::string> llt_codes, const DictionaryBundle& bundle);

struct Comparison {
  bool identical = false;
  double jaccard = 0;
  std::size_t false_positives = 0;  // automatic PTs missing from gold
  std::size_t omissions = 0;        // gold PTs missing from automatic
};

Comparison compare_pt_sets(const PtSet& gold, const PtSet& automatic);

// Compares at PT level using the full selected list (no display cap).
Comparison compare_report(const GoldReport& gold, const EncodingResult& automatic, const DictionaryBundle& bundle);

inline constexpr std::array<std::string_view, 5> kBucketLabels{"<=20", "20-40", "40-100", "100-250", ">250"};

// Bucket index for a description of `chars` code points.
std::size_t bucket_of(std::size_t chars);

struct BucketStats {
  std::string bucket;
  std::size_t n_reports = 0;
  std::size_t n_identical = 0;
  double identical_rate = 0;  // over reports that did not fail
  double mean_jaccard = 0;
  std::size_t n_flagged = 0;  // reports with an error in the detail stream
};

struct BenchmarkSummary {
  std::vector<BucketStats> buckets;  // one per label, always all present
  BucketStats overall;
};

// Encodes every report, writes one JSON object per line to `detail` in corpus
// order, and aggregates per bucket. Per-report errors are recorded, not thrown.
BenchmarkSummary run_benchmark(std::span<const GoldReport> corpus, const DictionaryBundle& bundle,
                               const EncoderConfig& config, std::ostream* detail = nullptr);

// bucket,n_reports,identical_rate,mean_jaccard,n_flagged; buckets then "all".
void write_summary_csv(const BenchmarkSummary& summary, std::ostream& out);

}  // namespace adrcode::bench
