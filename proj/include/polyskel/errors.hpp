#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace polyskel {

/// Two values of different ambient dimension were combined.
class DimensionMismatch : public std::invalid_argument {
 public:
  DimensionMismatch(int lhs, int rhs)
      : std::invalid_argument("dimension mismatch: " + std::to_string(lhs) + " vs " +
                              std::to_string(rhs)) {}
};

/// A size guard (enumeration budget, solver budget) refused the input.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// BFS in Q_n^d did not reach every vertex.
class DisconnectedGraph : public std::runtime_error {
 public:
  DisconnectedGraph(const std::string& what, std::uint64_t unreached)
      : std::runtime_error(what + " (" + std::to_string(unreached) + " vertices unreached)"),
        unreached_(unreached) {}

  std::uint64_t unreached() const noexcept { return unreached_; }

 private:
  std::uint64_t unreached_;
};

}  // namespace polyskel
