// Command-line front end: build-dict, encode, bench, serve.
//
// Exit codes: 0 success, 1 input error, 2 bad arguments, 3 dictionary load
// failure.

#include <pthread.h>
#include <signal.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "adrcode/benchmark.hpp"
#include "adrcode/encoder.hpp"
#include "adrcode/serialize.hpp"
#include "adrcode/service/config.hpp"
#include "adrcode/service/http.hpp"
#include "adrcode/service/review.hpp"
#include "adrcode/unicode.hpp"

namespace {

using namespace adrcode;
using service::ServiceConfig;

constexpr int kInputError = 1;
constexpr int kUsage = 2;
constexpr int kDictionaryError = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flags shared by every subcommand; unset flags leave the config value alone.
struct CommonFlags {
  std::optional<std::string> config_file, dict, language, stopwords, negations;
  std::optional<double> c3_max, c5_max;
  std::optional<std::size_t> display_cap;

  void add_to(CLI::App* app) {
    app->add_option("--config", config_file, "JSON configuration file")->check(CLI::ExistingFile);
    app->add_option("--dict", dict, "dictionary CSV (llt_code,llt_text,pt_code,pt_text)");
    app->add_option("--language", language, "stemmer language: it, en or none");
    app->add_option("--stopwords", stopwords, "stop-word list file");
    app->add_option("--c3-max", c3_max, "release threshold on c3 (default 0.5)");
    app->add_option("--c5-max", c5_max, "release threshold on c5 (default 3)");
    app->add_option("--display-cap", display_cap, "terms shown per description (default 6)")->check(CLI::PositiveNumber);
  }

  ServiceConfig resolve() const {
    ServiceConfig c;
    try {
      c = service::load_service_config(config_file);
    } catch (const service::ConfigError& e) {
      throw UsageError(e.what());
    }
    if (dict) c.dictionary_path = *dict;
    if (language) c.language = *language;
    if (stopwords) c.stopwords_path = *stopwords;
    if (negations) c.negations_path = *negations;
    if (c3_max) c.encoder.thresholds.c3_max = *c3_max;
    if (c5_max) c.encoder.thresholds.c5_max = *c5_max;
    if (display_cap) c.encoder.display_cap = *display_cap;
    if (c.dictionary_path.empty()) throw UsageError("a dictionary is required (--dict)");
    if (c.language != "it" && c.language != "en" && c.language != "none")
      throw UsageError("unknown language '" + c.language + "'");
    return c;
  }
};

std::shared_ptr<const DictionaryBundle> load(const ServiceConfig& config) { return service::load_bundle(config); }

std::string fixed(double v, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

// Left-aligned columns separated by two spaces.
void print_table(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (width.size() <= i) width.push_back(0);
      width[i] = std::max(width[i], unicode::code_point_count(r[i]));
    }
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      line += r[i];
      if (i + 1 < r.size()) line += std::string(width[i] - unicode::code_point_count(r[i]) + 2, ' ');
    }
    out << line << '\n';
  }
}

int cmd_build_dict(const CommonFlags& flags) {
  const auto config = flags.resolve();
  const auto bundle = load(config);
  const auto& b = *bundle;
  std::size_t words = 0;
  for (const auto& t : b.terms) words += t.size();
  print_table(std::cout, {{"dictionary", config.dictionary_path},
                          {"version", b.version},
                          {"terms", std::to_string(b.terms.size())},
                          {"words", std::to_string(words)},
                          {"exact_keys", std::to_string(b.exact.key_count())},
                          {"exact_postings", std::to_string(b.exact.posting_count())},
                          {"stem_keys", std::to_string(b.stemmed.key_count())},
                          {"stem_postings", std::to_string(b.stemmed.posting_count())},
                          {"stop_words", std::to_string(b.stop_words.size())}});
  return 0;
}

struct EncodeFlags {
  std::optional<std::string> text, input;
  bool json = false, keep_going = false;
};

int cmd_encode(const CommonFlags& flags, const EncodeFlags& ef) {
  if (ef.text && ef.input) throw UsageError("give either a text or --input, not both");
  if (!ef.text && !ef.input) throw UsageError("nothing to encode: give a text or --input");
  const auto config = flags.resolve();
  const auto bundle = load(config);
  const auto cap = config.encoder.display_cap;

  std::vector<std::string> lines;
  if (ef.text) {
    lines.push_back(*ef.text);
  } else {
    std::ifstream file;
    std::istream* in = &std::cin;
    if (*ef.input != "-") {
      file.open(*ef.input, std::ios::binary);
      if (!file) throw InputError("cannot open " + *ef.input);
      in = &file;
    }
    std::string line;
    while (std::getline(*in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.push_back(line);
    }
  }

  const bool numbered = ef.input.has_value();
  std::vector<std::vector<std::string>> rows;
  int failures = 0;
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const auto& line = lines[n];
    if (!unicode::is_valid_utf8(line)) {
      const auto msg = (numbered ? "line " + std::to_string(n + 1) + ": " : std::string()) + "invalid UTF-8";
      if (!ef.keep_going) throw InputError(msg);
      std::cerr << "adrcode: " << msg << '\n';
      ++failures;
      continue;
    }
    const auto result = encode(line, *bundle, config.encoder);
    if (ef.json) {
      std::cout << to_json(result, bundle->terms, cap).dump() << '\n';
      continue;
    }
    for (const auto& c : result.displayed(cap)) {
      const auto& t = bundle->term(c.vote.term);
      const auto& w = c.weights;
      std::vector<std::string> row;
      if (numbered) row.push_back(std::to_string(n + 1));
      for (auto cell : {t.code, t.text, t.pt_code, t.pt_text, fixed(w.c1, 3), std::to_string(w.c2), fixed(w.c3, 3),
                        fixed(w.c4, 3), std::to_string(w.c5), std::string(c.vote.stem_used ? "stem" : "exact")})
        row.push_back(std::move(cell));
      rows.push_back(std::move(row));
    }
  }
  if (!ef.json && !rows.empty()) {
    std::vector<std::string> header{"llt_code", "llt_text", "pt_code", "pt_text", "c1", "c2", "c3", "c4", "c5", "match"};
    if (numbered) header.insert(header.begin(), "input");
    rows.insert(rows.begin(), header);
    print_table(std::cout, rows);
  }
  return failures ? kInputError : 0;
}

struct BenchFlags {
  std::string corpus, out;
};

int cmd_bench(const CommonFlags& flags, const BenchFlags& bf) {
  const auto config = flags.resolve();
  std::vector<bench::GoldReport> corpus;
  try {
    corpus = bench::load_corpus_file(bf.corpus);
  } catch (const bench::CorpusError& e) {
    throw InputError(e.what());
  }
  const auto bundle = load(config);

  std::filesystem::create_directories(bf.out);
  const auto detail_path = std::filesystem::path(bf.out) / "detail.jsonl";
  const auto summary_path = std::filesystem::path(bf.out) / "summary.csv";
  std::ofstream detail(detail_path, std::ios::binary);
  if (!detail) throw InputError("cannot write " + detail_path.string());
  const auto summary = bench::run_benchmark(corpus, *bundle, config.encoder, &detail);
  std::ofstream summary_file(summary_path, std::ios::binary);
  if (!summary_file) throw InputError("cannot write " + summary_path.string());
  bench::write_summary_csv(summary, summary_file);

  std::vector<std::vector<std::string>> rows{{"bucket", "n_reports", "identical_rate", "mean_jaccard", "n_flagged"}};
  auto add = [&](const bench::BucketStats& s) {
    rows.push_back({s.bucket, std::to_string(s.n_reports), fixed(s.identical_rate, 4), fixed(s.mean_jaccard, 4),
                    std::to_string(s.n_flagged)});
  };
  for (const auto& s : summary.buckets) add(s);
  add(summary.overall);
  print_table(std::cout, rows);
  return 0;
}

struct ServeFlags {
  std::optional<std::string> listen, data_dir, negations;
};

int cmd_serve(CommonFlags flags, const ServeFlags& sf) {
  flags.negations = sf.negations;
  auto config = flags.resolve();
  if (sf.listen) {
    try {
      service::apply_listen(config, *sf.listen);
    } catch (const service::ConfigError& e) {
      throw UsageError(e.what());
    }
  }
  if (sf.data_dir) config.data_dir = *sf.data_dir;

  const auto bundle = load(config);
  StopList negations;
  try {
    negations = StopList::load_file(service::negations_path_for(config));
  } catch (const std::exception& e) {
    if (config.negations_path.empty()) {
      std::cerr << service::utc_now() << " no negation list for '" << config.language << "', flagging disabled\n";
    } else {
      throw InputError(e.what());
    }
  }

  // Signals go to a dedicated thread so the server can shut down cleanly.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  service::ReviewService svc(bundle, config, std::move(negations));
  service::HttpServer server(svc);
  int port = 0;
  try {
    port = server.bind(config.host, config.port);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  std::cerr << service::utc_now() << " dictionary " << bundle->version << ", " << bundle->terms.size()
            << " terms, " << svc.session_count() << " sessions restored\n";
  std::cout << "listening on http://" << config.host << ':' << port << std::endl;

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  });
  server.serve();
  server.stop();
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  std::cerr << service::utc_now() << " stopped\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Encode free-text adverse reaction descriptions into dictionary terms."};
  app.require_subcommand(1);

  CommonFlags build_flags, encode_flags, bench_flags, serve_flags;
  EncodeFlags ef;
  BenchFlags bf;
  ServeFlags sf;

  auto* build = app.add_subcommand("build-dict", "load a dictionary, build both indexes and print statistics");
  build_flags.add_to(build);

  auto* enc = app.add_subcommand("encode", "encode a text, or each line of a file");
  encode_flags.add_to(enc);
  enc->add_option("text", ef.text, "description to encode");
  enc->add_option("--input", ef.input, "file with one description per line ('-' for stdin)");
  enc->add_flag("--json", ef.json, "JSON lines instead of a table");
  enc->add_flag("--keep-going", ef.keep_going, "report bad lines on stderr and continue");

  auto* bench = app.add_subcommand("bench", "compare encodings with a gold corpus");
  bench_flags.add_to(bench);
  bench->add_option("--corpus", bf.corpus, "CSV: report_id,description,gold_llt_codes")->required();
  bench->add_option("--out", bf.out, "output directory for summary.csv and detail.jsonl")->required();

  auto* serve = app.add_subcommand("serve", "run the HTTP review service");
  serve_flags.add_to(serve);
  serve->add_option("--listen", sf.listen, "host:port (default 127.0.0.1:8080)");
  serve->add_option("--data-dir", sf.data_dir, "session storage directory");
  serve->add_option("--negations", sf.negations, "negation word list");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "adrcode: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  CLI::App* active = app.get_subcommands().front();
  try {
    if (active == build) return cmd_build_dict(build_flags);
    if (active == enc) return cmd_encode(encode_flags, ef);
    if (active == bench) return cmd_bench(bench_flags, bf);
    return cmd_serve(serve_flags, sf);
  } catch (const UsageError& e) {
    std::cerr << "adrcode: " << e.what() << "\n\n" << active->help();
    return kUsage;
  } catch (const DictionaryError& e) {
    std::cerr << "adrcode: " << e.what() << '\n';
    return kDictionaryError;
  } catch (const service::ConfigError& e) {
    std::cerr << "adrcode: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "adrcode: " << e.what() << '\n';
    return kInputError;
  }
}
