#include "bgkc/errors.hpp"

namespace bgkc {

namespace {

std::string join_items(const std::vector<std::string>& items) {
  std::string out = "invalid configuration:";
  for (const auto& item : items) {
    out += "\n  - ";
    out += item;
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> items)
    : std::runtime_error(join_items(items)), items_(std::move(items)) {}

}  // namespace bgkc
