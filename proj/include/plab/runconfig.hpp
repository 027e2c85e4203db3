#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace plab {

extern const char* const kToolVersion;

// Everything that determines a run's output, serialized into result headers
// so a rerun can be matched byte for byte against its config.
struct RunConfig {
  std::string command;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> args;  // semantic arguments only
  std::string to_json() const;
  std::string header_line() const;  // "# run: {...}"
};

}  // namespace plab
