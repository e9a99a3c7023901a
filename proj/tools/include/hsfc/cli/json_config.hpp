#pragma once

// CLI11 config formatter for JSON files. Objects nest per subcommand:
//   {"command": "bound", "out": "runs/b", "bound": {"cases": 100, "p": ["1", "inf"]}}
// Numbers are forwarded with full precision; arrays become multi-valued options.
// Options given on the command line take precedence over the file.

#include <istream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

namespace hsfc::cli {

class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
    return dump(app, default_also).dump(2) + "\n";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    nlohmann::json j;
    try {
      input >> j;
    } catch (const nlohmann::json::exception& e) {
      throw CLI::ConversionError("config", std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConversionError("config", "top level must be an object");
    std::vector<CLI::ConfigItem> items;
    flatten(j, {}, items);
    return items;
  }

  /// Value of the top-level "command" key, if any.
  static std::string command_of(std::istream& input) {
    nlohmann::json j = nlohmann::json::parse(input, nullptr, false);
    if (j.is_object() && j.contains("command") && j["command"].is_string()) return j["command"].get<std::string>();
    return {};
  }

 private:
  static std::string scalar(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
  }

  static void flatten(const nlohmann::json& obj, const std::vector<std::string>& parents,
                      std::vector<CLI::ConfigItem>& items) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (parents.empty() && it.key() == "command") continue;
      if (it->is_object()) {
        auto sub = parents;
        sub.push_back(it.key());
        flatten(*it, sub, items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = it.key();
      if (it->is_array()) {
        for (const auto& v : *it) item.inputs.push_back(scalar(v));
      } else if (!it->is_null()) {
        item.inputs.push_back(scalar(*it));
      }
      items.push_back(std::move(item));
    }
  }

  static nlohmann::json dump(const CLI::App* app, bool default_also) {
    nlohmann::json j = nlohmann::json::object();
    for (const CLI::Option* opt : app->get_options()) {
      if (!opt->get_configurable() || opt->get_lnames().empty() || opt->get_lnames().front() == "help") continue;
      const std::string key = opt->get_lnames().front();
      if (!opt->results().empty()) {
        if (opt->results().size() == 1) {
          j[key] = opt->results().front();
        } else {
          j[key] = opt->results();
        }
      } else if (default_also && !opt->get_default_str().empty()) {
        j[key] = opt->get_default_str();
      }
    }
    for (const CLI::App* sub : app->get_subcommands({})) {
      nlohmann::json s = dump(sub, default_also);
      if (!s.empty()) j[sub->get_name()] = s;
    }
    return j;
  }
};

}  // namespace hsfc::cli
