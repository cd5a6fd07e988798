#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace qreset {

// Tagged runtime error. tag() is a stable machine-readable name; the CLI maps
// tags to exit codes, tests match on them.
class Error : public std::runtime_error {
public:
  Error(std::string tag, const std::string& detail)
      : std::runtime_error(tag + ": " + detail), tag_(std::move(tag)) {}

  const std::string& tag() const noexcept { return tag_; }

private:
  std::string tag_;
};

[[noreturn]] inline void fail(std::string tag, const std::string& detail) {
  throw Error(std::move(tag), detail);
}

}
