#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace localgraph {

/// Vertex ids are 1-based; n+1 is the "no more neighbors" sentinel.
using Vertex = std::int64_t;
using Count = std::int64_t;

/// Raised when a caller breaks an operation's contract or an internal
/// invariant is found violated. The CLI maps it to exit code 1.
class Fault : public std::logic_error {
 public:
  explicit Fault(const std::string& what) : std::logic_error(what) {}
};

/// A query the generator cannot answer (e.g. random-neighbor on the
/// deterministic generator). The CLI maps it to exit code 2.
class Unsupported : public std::runtime_error {
 public:
  explicit Unsupported(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace localgraph
