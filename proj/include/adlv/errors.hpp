#ifndef ADLV_ERRORS_HPP_
#define ADLV_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <vector>

namespace adlv {

// Unknown type labels, malformed diagram automorphisms, bad config files.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition violated by a caller (dimension mismatch, non-dominant input,
// hypothesis of a formula not met).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A search ran past its node budget. Carries whatever partial progress the
// search made, rendered as text lines.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::vector<std::string> partial = {})
      : std::runtime_error(what), partial_(std::move(partial)) {}

  const std::vector<std::string>& partial() const noexcept { return partial_; }

 private:
  std::vector<std::string> partial_;
};

// Internal consistency failure: two computations that must agree did not.
// Always indicates a bug.
class IntegrityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace adlv

#endif  // ADLV_ERRORS_HPP_
