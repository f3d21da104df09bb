#pragma once

#include <memory>
#include <string>

#include "localgraph/bucket_generator.hpp"
#include "localgraph/edge_model.hpp"
#include "localgraph/generator.hpp"
#include "localgraph/small_world.hpp"

namespace localgraph {

enum class ModelKind { Gnp, Sbm, SmallWorld };

struct ModelConfig {
  ModelKind kind = ModelKind::Gnp;
  Vertex n = 0;
  double p = 0.0;
  SbmSpec sbm;
  SmallWorldParams small_world;
  BucketParams bucket;
};

// Generator names: naive, skip, bucket, det, smallworld.
bool is_generator_name(const std::string& name);

// Edge model for vertices 1..n; block models draw their labels from stream 1
// of `seed`.
std::unique_ptr<EdgeModel> make_model(const ModelConfig& config, std::uint64_t seed);

// Generator over a fresh model; the generator draws from stream 0 of `seed`.
// Throws Unsupported for a generator/model mismatch. If `model_out` is given
// it receives the model owned by the generator (null for small world).
std::unique_ptr<LocalGenerator> make_generator(const std::string& name, const ModelConfig& config,
                                               std::uint64_t seed, EdgeModel** model_out = nullptr);

}  // namespace localgraph
