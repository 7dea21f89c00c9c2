#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "adrcode/serialize.hpp"
#include "doctest.h"
#include "httplib.h"
#include "support.hpp"

namespace fs = std::filesystem;
using adrcode::Json;

namespace {

struct Run {
  int code = -1;
  std::string out, err;
};

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("adrcode-cli-" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name, const std::string& content) const {
    std::ofstream(path / name, std::ios::binary) << content;
    return (path / name).string();
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<char*> argv_of(std::vector<std::string>& args) {
  std::vector<char*> v;
  for (auto& a : args) v.push_back(a.data());
  v.push_back(nullptr);
  return v;
}

// Runs the CLI binary with stdin from `input`, capturing both streams.
Run run(std::vector<std::string> args, const std::string& input = {}) {
  TempDir io;
  const auto in_path = io.file("stdin", input);
  const auto out_path = io.path / "stdout", err_path = io.path / "stderr";
  args.insert(args.begin(), ADRCODE_CLI);
  auto argv = argv_of(args);
  const pid_t pid = fork();
  if (pid == 0) {
    const int in = ::open(in_path.c_str(), O_RDONLY);
    const int out = ::open(out_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    const int err = ::open(err_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    dup2(in, 0);
    dup2(out, 1);
    dup2(err, 2);
    execv(argv[0], argv.data());
    _exit(127);
  }
  int status = 0;
  waitpid(pid, &status, 0);
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  return r;
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

const std::string kDict = testing_support::data_path("fixtures/dictionary_it.csv");

}  // namespace

TEST_CASE("encode prints a table") {
  const auto r = run({"encode", "cefalea", "--dict", kDict});
  CHECK(r.code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0].rfind("llt_code", 0) == 0);
  CHECK(lines[1].find("Cefalea") != std::string::npos);
  CHECK(lines[1].find("exact") != std::string::npos);
}

TEST_CASE("encode of empty text prints nothing") {
  const auto r = run({"encode", "", "--dict", kDict});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
}

TEST_CASE("usage errors exit 2") {
  auto r = run({"encode", "cefalea"});
  CHECK(r.code == 2);
  CHECK(r.err.find("Usage") != std::string::npos);
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"encode", "x", "--dict", kDict, "--display-cap", "0"}).code == 2);
  CHECK(run({"encode", "x", "--dict", kDict, "--language", "xx"}).code == 2);
  CHECK(run({"encode", "--dict", kDict}).code == 2);
  CHECK(run({"bench", "--dict", kDict}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("dictionary failures exit 3") {
  TempDir dir;
  CHECK(run({"encode", "x", "--dict", (dir.path / "missing.csv").string()}).code == 3);
  const auto bad = dir.file("bad.csv", "llt_code,llt_text,pt_code,pt_text\n1,a,2,a\n1,b,2,b\n");
  const auto r = run({"encode", "x", "--dict", bad});
  CHECK(r.code == 3);
  CHECK(r.err.find("line 3") != std::string::npos);
  CHECK(run({"build-dict", "--dict", bad}).code == 3);
}

TEST_CASE("build-dict reports index sizes") {
  const auto r = run({"build-dict", "--dict", kDict});
  CHECK(r.code == 0);
  CHECK(r.out.find("terms") != std::string::npos);
  CHECK(r.out.find("exact_keys") != std::string::npos);
  CHECK(run({"build-dict", "--dict", kDict}).out == r.out);
}

TEST_CASE("encode a file as JSON lines") {
  TempDir dir;
  const auto input = dir.file("in.txt", "cefalea e febbre\n\nShock anafilattico\r\n");
  const auto r = run({"encode", "--input", input, "--dict", kDict, "--json"});
  CHECK(r.code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 3);
  CHECK(Json::parse(lines[0])["selected"].size() == 2);
  CHECK(Json::parse(lines[1])["selected"].empty());
  CHECK(Json::parse(lines[2])["selected"][0]["llt_text"] == "Shock anafilattico");
  // Byte-identical on a rerun, and the same from stdin.
  CHECK(run({"encode", "--input", input, "--dict", kDict, "--json"}).out == r.out);
  CHECK(run({"encode", "--input", "-", "--dict", kDict, "--json"}, slurp(input)).out == r.out);

  const auto table = run({"encode", "--input", input, "--dict", kDict});
  CHECK(lines_of(table.out)[0].rfind("input", 0) == 0);
}

TEST_CASE("bad input lines") {
  TempDir dir;
  const auto input = dir.file("in.txt", "cefalea\n\xC3\nfebbre\n");
  auto r = run({"encode", "--input", input, "--dict", kDict, "--json"});
  CHECK(r.code == 1);
  CHECK(r.err.find("line 2") != std::string::npos);
  CHECK(lines_of(r.out).size() == 1);

  r = run({"encode", "--input", input, "--dict", kDict, "--json", "--keep-going"});
  CHECK(r.code == 1);
  CHECK(lines_of(r.out).size() == 2);
  CHECK(r.err.find("line 2: invalid UTF-8") != std::string::npos);
  CHECK(run({"encode", "--input", (dir.path / "none.txt").string(), "--dict", kDict}).code == 1);
}

TEST_CASE("bench writes summary and detail") {
  TempDir dir;
  const auto corpus = dir.file("corpus.csv",
                               "report_id,description,gold_llt_codes\n"
                               "r1,cefalea e febbre,90000007;90000013\n"
                               "r2,\"Shock anafilattico (ipotensione + rash cutaneo) 1 h dopo assunzione x os del farmaco\","
                               "90000001;90000003;90000005;90000006\n"
                               "r3,dolore,90009999\n");
  const auto out = dir.path / "out";
  const auto r = run({"bench", "--corpus", corpus, "--dict", kDict, "--out", out.string()});
  CHECK(r.code == 0);
  const auto summary = lines_of(slurp(out / "summary.csv"));
  REQUIRE(summary.size() == 7);
  CHECK(summary[1] == "<=20,2,1.000000,1.000000,1");
  CHECK(summary[3] == "40-100,1,1.000000,1.000000,0");
  CHECK(summary[6] == "all,3,1.000000,1.000000,1");
  const auto detail = lines_of(slurp(out / "detail.jsonl"));
  REQUIRE(detail.size() == 3);
  CHECK(Json::parse(detail[2]).contains("error"));
  CHECK(r.out.find("1.0000") != std::string::npos);

  const auto first = slurp(out / "detail.jsonl");
  run({"bench", "--corpus", corpus, "--dict", kDict, "--out", out.string()});
  CHECK(slurp(out / "detail.jsonl") == first);
}

TEST_CASE("bench on an empty corpus") {
  TempDir dir;
  const auto corpus = dir.file("corpus.csv", "report_id,description,gold_llt_codes\n");
  const auto out = dir.path / "out";
  const auto r = run({"bench", "--corpus", corpus, "--dict", kDict, "--out", out.string()});
  CHECK(r.code == 0);
  CHECK(slurp(out / "detail.jsonl").empty());
  CHECK(lines_of(slurp(out / "summary.csv"))[6] == "all,0,0.000000,0.000000,0");
  CHECK(run({"bench", "--corpus", (dir.path / "none.csv").string(), "--dict", kDict, "--out", out.string()}).code == 1);
}

TEST_CASE("serve answers and stops on SIGTERM") {
  TempDir dir;
  int pipefd[2];
  REQUIRE(pipe(pipefd) == 0);
  std::vector<std::string> args{ADRCODE_CLI, "serve", "--dict", kDict, "--listen", "127.0.0.1:0", "--data-dir",
                                (dir.path / "data").string()};
  auto argv = argv_of(args);
  const pid_t pid = fork();
  if (pid == 0) {
    dup2(pipefd[1], 1);
    const int devnull = ::open("/dev/null", O_WRONLY);
    dup2(devnull, 2);
    close(pipefd[0]);
    execv(argv[0], argv.data());
    _exit(127);
  }
  close(pipefd[1]);
  std::string first;
  char c;
  while (read(pipefd[0], &c, 1) == 1 && c != '\n') first.push_back(c);
  close(pipefd[0]);
  REQUIRE(first.rfind("listening on http://127.0.0.1:", 0) == 0);
  const int port = std::stoi(first.substr(first.rfind(':') + 1));

  httplib::Client cli("127.0.0.1", port);
  auto res = cli.Get("/health");
  REQUIRE(res);
  CHECK(res->status == 200);
  res = cli.Post("/encode", R"({"text": "cefalea"})", "application/json");
  REQUIRE(res);
  CHECK(Json::parse(res->body)["selected"][0]["llt_text"] == "Cefalea");

  kill(pid, SIGTERM);
  int status = 0;
  waitpid(pid, &status, 0);
  CHECK(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == 0);
}

TEST_CASE("serve with a bad dictionary exits 3") {
  TempDir dir;
  CHECK(run({"serve", "--dict", (dir.path / "missing.csv").string(), "--listen", "127.0.0.1:0"}).code == 3);
}
