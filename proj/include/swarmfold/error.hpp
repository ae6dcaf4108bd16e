#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace swarmfold {

// Exception carrying the name of the module that raised it, so the CLI can
// report "<module>: <message>".
class Error : public std::runtime_error {
 public:
  Error(std::string module, const std::string& message)
      : std::runtime_error(module + ": " + message), module_(std::move(module)) {}

  const std::string& module() const noexcept { return module_; }

 private:
  std::string module_;
};

// Non-fatal diagnostics accumulate here; nullptr sinks discard them.
using Warnings = std::vector<std::string>;

inline void warn(Warnings* sink, std::string message) {
  if (sink) sink->push_back(std::move(message));
}

}  // namespace swarmfold
