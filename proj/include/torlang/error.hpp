#pragma once

#include <stdexcept>
#include <string>

namespace torlang {

// Every failure carries a short machine tag ("not-a-subgroup", "no-extension", ...)
// plus a human message.
class Error : public std::runtime_error {
 public:
  Error(std::string tag, const std::string& message)
      : std::runtime_error(tag + ": " + message), tag_(std::move(tag)) {}

  const std::string& tag() const { return tag_; }

 private:
  std::string tag_;
};

}  // namespace torlang
