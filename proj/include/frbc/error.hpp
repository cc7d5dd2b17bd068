#pragma once

#include <stdexcept>
#include <string>

namespace frbc {

// All library failures throw this. `stage` tags where in a pipeline run
// the failure happened ("load", "reduction", "biclustering", "rules",
// "boosting", ...) so callers can report it without string-parsing.
class Error : public std::runtime_error {
 public:
  Error(std::string stage, const std::string& message)
      : std::runtime_error(stage + ": " + message), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

}  // namespace frbc
