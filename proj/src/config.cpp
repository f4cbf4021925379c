#include "gecforge/config.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "gecforge/errors.hpp"

namespace gecforge {

using nlohmann::json;

namespace {

json defaults_json() {
  json j;
  for (const ErrorType& e : taxonomy()) {
    j["shares"][e.code] = e.target_share;
    j["method"][e.code] = std::string(to_string(e.method));
  }
  auto mu_json = [](const OpDistribution& mu) {
    json m;
    m["substitution"] = mu.substitution;
    m["deletion"] = mu.deletion;
    m["insertion"] = mu.insertion;
    m["keep"] = mu.keep;
    return m;
  };
  j["noise"]["mu"] = mu_json(default_mu());
  j["noise"]["char_mu"] = mu_json(default_mu());

  const CharMaps maps = CharMaps::defaults();
  j["charmaps"]["keyboard_proximity"] = maps.keyboard_proximity;
  json pairs = json::array();
  for (const auto& [d, b] : maps.diacritic_pairs) pairs.push_back(json::array({d, b}));
  j["charmaps"]["diacritic_pairs"] = std::move(pairs);
  j["charmaps"]["common_misspellings"] = maps.common_misspellings;

  const ConfusionLists lists = ConfusionLists::defaults();
  j["confusion"]["p"] = 0.3;
  for (const auto& [code, words] : lists.lists) j["confusion"]["lists"][code] = words;

  const PunctMatrix punct = PunctMatrix::defaults();
  j["punct"]["symbols"] = punct.symbols;
  j["punct"]["rows"] = punct.rows;

  j["llm"]["model_id"] = "gpt-4o";
  j["llm"]["temperature"] = 0.7;
  j["llm"]["endpoint"] = "";
  j["llm"]["auth_env"] = "LLM_API_TOKEN";
  j["llm"]["fixture"] = "";
  j["llm"]["ces"] = "";
  j["llm"]["max_retries"] = 3;
  j["llm"]["retry_backoff_ms"] = 500;
  j["llm"]["max_in_flight"] = 1;

  j["corpus_label"] = "corpus";
  return j;
}

OpDistribution mu_from_json(const json& j) {
  OpDistribution mu;
  mu.substitution = j.at("substitution").get<double>();
  mu.deletion = j.at("deletion").get<double>();
  mu.insertion = j.at("insertion").get<double>();
  mu.keep = j.at("keep").get<double>();
  return mu;
}

ToolkitConfig from_json(const json& j) {
  ToolkitConfig c;
  for (const auto& [code, share] : j.at("shares").items()) {
    c.shares[code] = share.get<double>();
  }
  for (const auto& [code, method] : j.at("method").items()) {
    c.methods[code] = gen_method_from_string(method.get<std::string>());
  }
  c.word_mu = mu_from_json(j.at("noise").at("mu"));
  c.char_mu = mu_from_json(j.at("noise").at("char_mu"));

  const json& maps = j.at("charmaps");
  for (const auto& [key, value] : maps.at("keyboard_proximity").items()) {
    c.charmaps.keyboard_proximity[key] = value.get<std::string>();
  }
  for (const auto& pair : maps.at("diacritic_pairs")) {
    if (!pair.is_array() || pair.size() != 2) {
      throw ConfigError("diacritic_pairs entries must be [diacritic, base] pairs");
    }
    c.charmaps.diacritic_pairs.emplace_back(pair[0].get<std::string>(),
                                            pair[1].get<std::string>());
  }
  for (const auto& [key, value] : maps.at("common_misspellings").items()) {
    c.charmaps.common_misspellings[key] = value.get<std::string>();
  }

  c.confusion_p = j.at("confusion").at("p").get<double>();
  for (const auto& [code, words] : j.at("confusion").at("lists").items()) {
    c.confusion_lists.lists[code] = words.get<std::vector<std::string>>();
  }

  c.punct.symbols = j.at("punct").at("symbols").get<std::vector<std::string>>();
  c.punct.rows = j.at("punct").at("rows").get<std::vector<std::vector<double>>>();

  const json& llm = j.at("llm");
  c.llm.model_id = llm.at("model_id").get<std::string>();
  c.llm.temperature = llm.at("temperature").get<double>();
  c.llm.max_retries = llm.at("max_retries").get<int>();
  c.llm.retry_backoff_ms = llm.at("retry_backoff_ms").get<int>();
  c.llm.max_in_flight = llm.at("max_in_flight").get<int>();
  c.llm_endpoint = llm.at("endpoint").get<std::string>();
  c.llm_auth_env = llm.at("auth_env").get<std::string>();
  c.llm_fixture = llm.at("fixture").get<std::string>();
  c.llm_ces = llm.at("ces").get<std::string>();
  c.corpus_label = j.at("corpus_label").get<std::string>();
  return c;
}

// "confusion.p" -> "/confusion/p"; share codes contain ':' but not '.'.
std::string dot_path_to_pointer(const std::string& key) {
  std::string out;
  for (char ch : key) {
    out.push_back(ch == '.' ? '/' : ch);
  }
  return "/" + out;
}

}  // namespace

ToolkitConfig ToolkitConfig::defaults() { return from_json(defaults_json()); }

ToolkitConfig ToolkitConfig::load(const std::string& path,
                                  std::span<const std::string> overrides) {
  json j = defaults_json();
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    json file;
    try {
      in >> file;
    } catch (const json::exception& e) {
      throw ConfigError(path + ": " + e.what());
    }
    j.merge_patch(file);
  }
  for (const std::string& entry : overrides) {
    const size_t eq = entry.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("override '" + entry + "' is not of the form key=value");
    }
    const std::string key = entry.substr(0, eq);
    const std::string value = entry.substr(eq + 1);
    json parsed;
    try {
      parsed = json::parse(value);
    } catch (const json::exception&) {
      parsed = value;  // plain string
    }
    try {
      j[json::json_pointer(dot_path_to_pointer(key))] = parsed;
    } catch (const json::exception& e) {
      throw ConfigError("override '" + entry + "': " + e.what());
    }
  }
  ToolkitConfig config;
  try {
    config = from_json(j);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  config.validate();
  return config;
}

void ToolkitConfig::validate() const {
  double share_sum = 0.0;
  for (const auto& [code, share] : shares) {
    if (!is_error_code(code)) throw ConfigError("shares: unknown error code " + code);
    if (share < 0.0) throw ConfigError("shares." + code + " is negative");
    share_sum += share;
  }
  if (shares.size() != taxonomy().size()) {
    throw ConfigError("shares must cover all " + std::to_string(taxonomy().size()) +
                      " error codes");
  }
  if (std::abs(share_sum - 1.0) > 1e-6) {
    throw ConfigError("shares sum to " + std::to_string(share_sum) + ", expected 1");
  }
  for (const auto& [code, _] : methods) {
    if (!is_error_code(code)) throw ConfigError("method: unknown error code " + code);
  }
  word_mu.validate();
  char_mu.validate();
  charmaps.validate();
  confusion_lists.validate();
  if (confusion_p < 0.0 || confusion_p > 1.0) {
    throw ConfigError("confusion.p must be in [0,1]");
  }
  punct.validate();
  if (llm.max_retries < 1) throw ConfigError("llm.max_retries must be >= 1");
  if (llm.max_in_flight < 1) throw ConfigError("llm.max_in_flight must be >= 1");
}

std::pair<ConfusionLists, PunctMatrix> load_confusion_config(const std::string& path) {
  const ToolkitConfig config = ToolkitConfig::load(path);
  return {config.confusion_lists, config.punct};
}

}  // namespace gecforge
