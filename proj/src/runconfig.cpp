#include "plab/runconfig.hpp"

#include <nlohmann/json.hpp>

namespace plab {

const char* const kToolVersion = "poincarelab 0.1.0";

std::string RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["tool"] = kToolVersion;
  j["command"] = command;
  j["seed"] = seed;
  nlohmann::ordered_json a = nlohmann::ordered_json::object();
  for (const auto& kv : args) a[kv.first] = kv.second;
  j["args"] = a;
  return j.dump();
}

std::string RunConfig::header_line() const { return "# run: " + to_json(); }

}  // namespace plab
