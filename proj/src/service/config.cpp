#include "adrcode/service/config.hpp"

#include <cstdlib>
#include <fstream>

#include "adrcode/serialize.hpp"
#include "adrcode/stemmer.hpp"

#ifndef ADRCODE_RESOURCE_DIR
#define ADRCODE_RESOURCE_DIR "data"
#endif

namespace adrcode::service {

namespace {

double parse_double(const std::string& name, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(name + ": not a number: '" + value + "'");
  }
}

std::size_t parse_count(const std::string& name, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used != value.size() || v < 0) throw std::invalid_argument(value);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw ConfigError(name + ": not a non-negative integer: '" + value + "'");
  }
}

// Every setting as a string, so file values and environment values share one path.
void apply(ServiceConfig& c, const std::string& key, const std::string& value) {
  if (key == "dictionary") c.dictionary_path = value;
  else if (key == "stopwords") c.stopwords_path = value;
  else if (key == "negations") c.negations_path = value;
  else if (key == "language") c.language = value;
  else if (key == "c3_max") c.encoder.thresholds.c3_max = parse_double(key, value);
  else if (key == "c5_max") c.encoder.thresholds.c5_max = parse_double(key, value);
  else if (key == "display_cap") c.encoder.display_cap = parse_count(key, value);
  else if (key == "data_dir") c.data_dir = value;
  else if (key == "listen") apply_listen(c, value);
  else throw ConfigError("unknown configuration key '" + key + "'");
}

const char* const kKeys[] = {"dictionary", "stopwords",   "negations", "language", "c3_max",
                             "c5_max",     "display_cap", "data_dir",  "listen"};

}  // namespace

std::optional<std::string> process_env(const std::string& name) {
  if (const char* v = std::getenv(name.c_str())) return std::string(v);
  return std::nullopt;
}

void apply_listen(ServiceConfig& config, const std::string& listen) {
  const auto colon = listen.rfind(':');
  const std::string port = colon == std::string::npos ? listen : listen.substr(colon + 1);
  const auto n = parse_count("listen", port);
  if (n > 65535) throw ConfigError("listen: port out of range: " + port);
  if (colon != std::string::npos && colon > 0) config.host = listen.substr(0, colon);
  config.port = static_cast<int>(n);
}

ServiceConfig load_service_config(const std::optional<std::string>& file, const EnvLookup& env) {
  ServiceConfig c;
  if (file) {
    std::ifstream in(*file);
    if (!in) throw ConfigError("cannot open config file " + *file);
    Json j;
    try {
      j = Json::parse(in);
    } catch (const Json::parse_error& e) {
      throw ConfigError("config file " + *file + ": " + e.what());
    }
    if (!j.is_object()) throw ConfigError("config file " + *file + ": expected a JSON object");
    for (const auto& [key, value] : j.items()) {
      if (value.is_string()) apply(c, key, value.get<std::string>());
      else if (value.is_number()) apply(c, key, value.dump());
      else throw ConfigError("config key '" + key + "' must be a string or number");
    }
  }
  for (const char* key : kKeys) {
    std::string name = "ADRCODE_";
    for (const char* p = key; *p; ++p) name += static_cast<char>(std::toupper(static_cast<unsigned char>(*p)));
    if (auto v = env(name)) apply(c, key, *v);
  }
  if (c.encoder.display_cap == 0) throw ConfigError("display_cap must be at least 1");
  return c;
}

std::string default_data_dir() {
  if (auto v = process_env("ADRCODE_RESOURCE_DIR")) return *v;
  return ADRCODE_RESOURCE_DIR;
}

std::string stopwords_path_for(const ServiceConfig& config) {
  if (!config.stopwords_path.empty()) return config.stopwords_path;
  return default_data_dir() + "/stopwords_" + config.language + ".txt";
}

std::string negations_path_for(const ServiceConfig& config) {
  if (!config.negations_path.empty()) return config.negations_path;
  return default_data_dir() + "/negations_" + config.language + ".txt";
}

std::shared_ptr<const DictionaryBundle> load_bundle(const ServiceConfig& config) {
  if (config.dictionary_path.empty()) throw ConfigError("no dictionary configured");
  auto stemmer = make_stemmer(config.language);
  auto terms = load_dictionary_file(config.dictionary_path);
  auto stop = config.language == "none" && config.stopwords_path.empty() ? StopList{}
                                                                          : StopList::load_file(stopwords_path_for(config));
  return std::make_shared<const DictionaryBundle>(DictionaryBundle::build(
      std::move(terms), std::move(stop), std::move(stemmer), file_fingerprint(config.dictionary_path)));
}

}  // namespace adrcode::service
