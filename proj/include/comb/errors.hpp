#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace comb {

/// Thrown when a request exceeds the documented limit of an exact routine.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Thrown when memory runs out mid-experiment; carries the replicate index reached.
class CapacityError : public std::runtime_error {
 public:
  CapacityError(const std::string& what, std::uint64_t replicate)
      : std::runtime_error(what), replicate_(replicate) {}

  std::uint64_t replicate() const noexcept { return replicate_; }

 private:
  std::uint64_t replicate_;
};

}  // namespace comb
