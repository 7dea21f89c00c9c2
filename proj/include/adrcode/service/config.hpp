#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "adrcode/dictionary.hpp"
#include "adrcode/encoder.hpp"
#include "adrcode/textprep.hpp"

namespace adrcode::service {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ServiceConfig {
  std::string dictionary_path;
  std::string stopwords_path;  // empty: shipped list for the language
  std::string negations_path;  // empty: shipped list for the language
  std::string language = "it";
  EncoderConfig encoder;
  std::string data_dir = "adrcode-data";
  std::string host = "127.0.0.1";
  int port = 8080;
  std::size_t max_text_chars = 10000;
};

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

// The process environment.
std::optional<std::string> process_env(const std::string& name);

// Starts from defaults, applies the JSON file (if any), then ADRCODE_*
// environment variables. Keys: dictionary, stopwords, negations, language,
// c3_max, c5_max, display_cap, data_dir, listen ("host:port").
ServiceConfig load_service_config(const std::optional<std::string>& file, const EnvLookup& env = process_env);

// Splits "host:port"; a bare port keeps the host.
void apply_listen(ServiceConfig& config, const std::string& listen);

// Directory holding the shipped stop-word and negation lists.
std::string default_data_dir();

std::string stopwords_path_for(const ServiceConfig& config);
std::string negations_path_for(const ServiceConfig& config);

// Loads the dictionary and word lists named by the config. Throws
// DictionaryError on a bad dictionary, std::runtime_error otherwise.
std::shared_ptr<const DictionaryBundle> load_bundle(const ServiceConfig& config);

}  // namespace adrcode::service
