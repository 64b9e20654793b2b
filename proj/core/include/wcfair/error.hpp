#pragma once

#include <stdexcept>
#include <string>

namespace wcfair {

// Base of every error raised by the library. The category maps onto the CLI
// exit codes (usage = 1, data = 2, internal invariant = 3).
class Error : public std::runtime_error {
 public:
  enum class Category { kUsage, kData, kInternal };

  Error(Category category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  Category category() const noexcept { return category_; }

 private:
  Category category_;
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(Category::kUsage, what) {}
};

class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(Category::kData, what) {}
};

class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what)
      : Error(Category::kInternal, what) {}
};

}  // namespace wcfair
