#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "gecforge/confusion.hpp"
#include "gecforge/llm.hpp"
#include "gecforge/noise.hpp"
#include "gecforge/taxonomy.hpp"

namespace gecforge {

// The toolkit's single configuration surface. Every field has an embedded
// default; a JSON config file overrides per key, and --set key=value
// overrides override the file.
struct ToolkitConfig {
  std::map<std::string, double> shares;
  std::map<std::string, GenMethod> methods;
  OpDistribution word_mu;
  OpDistribution char_mu;
  CharMaps charmaps;
  ConfusionLists confusion_lists;
  double confusion_p = 0.3;
  PunctMatrix punct;
  LlmOptions llm;
  std::string llm_endpoint;
  std::string llm_auth_env = "LLM_API_TOKEN";
  std::string llm_fixture;
  std::string llm_ces;  // CES file feeding two-shot prompts
  std::string corpus_label = "corpus";

  static ToolkitConfig defaults();

  // path may be empty (defaults only). Overrides are dot paths,
  // e.g. "confusion.p=0.4" or "shares.SPELL=0.3".
  static ToolkitConfig load(const std::string& path,
                            std::span<const std::string> overrides = {});

  void validate() const;
};

}  // namespace gecforge
