#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "localgraph/rng.hpp"
#include "localgraph/types.hpp"

namespace localgraph {

enum class QueryKind { NextNeighbor, RandomNeighbor, VertexPair, AllNeighbors };

const char* query_name(QueryKind kind);

// A stateful view of one random graph on vertices 1..n that is realized only
// as far as the queries so far require. All answers are consistent with a
// single sample of the underlying distribution.
class LocalGenerator {
 public:
  virtual ~LocalGenerator() = default;

  virtual std::string name() const = 0;
  virtual Vertex vertex_count() const = 0;
  virtual bool supports(QueryKind kind) const = 0;

  // Smallest neighbor of v above the previous answer for v, or n+1.
  virtual Vertex next_neighbor(Vertex v) = 0;
  // Uniform neighbor of v in the realized graph, or nullopt if v is isolated.
  virtual std::optional<Vertex> random_neighbor(Vertex v);
  virtual bool vertex_pair(Vertex u, Vertex v) = 0;
  // Sorted neighbor list of v.
  virtual std::vector<Vertex> all_neighbors(Vertex v) = 0;

  // Throws Fault if an internal invariant does not hold.
  virtual void check_invariants() {}
  // Random words drawn so far.
  virtual std::uint64_t words_consumed() const = 0;
  // Number of stored vertex ids, counters and marks, as a space measure.
  virtual std::size_t stored_entries() const = 0;

 protected:
  void check_vertex(Vertex v) const;
  [[noreturn]] void unsupported(QueryKind kind) const;
};

// Hides self-loops: next/random-neighbor re-invoke the wrapped generator when
// it answers v itself, vertex_pair(v, v) is 0 and all_neighbors drops v.
class NoSelfLoops final : public LocalGenerator {
 public:
  explicit NoSelfLoops(std::unique_ptr<LocalGenerator> inner) : inner_(std::move(inner)) {}

  std::string name() const override { return inner_->name(); }
  Vertex vertex_count() const override { return inner_->vertex_count(); }
  bool supports(QueryKind kind) const override { return inner_->supports(kind); }
  Vertex next_neighbor(Vertex v) override;
  std::optional<Vertex> random_neighbor(Vertex v) override;
  bool vertex_pair(Vertex u, Vertex v) override;
  std::vector<Vertex> all_neighbors(Vertex v) override;
  void check_invariants() override { inner_->check_invariants(); }
  std::uint64_t words_consumed() const override { return inner_->words_consumed(); }
  std::size_t stored_entries() const override { return inner_->stored_entries(); }

  LocalGenerator& inner() { return *inner_; }

 private:
  std::unique_ptr<LocalGenerator> inner_;
};

}  // namespace localgraph
