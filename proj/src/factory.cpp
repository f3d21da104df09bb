#include "localgraph/factory.hpp"

#include "localgraph/det_generator.hpp"
#include "localgraph/naive_generator.hpp"
#include "localgraph/skip_generator.hpp"

namespace localgraph {

bool is_generator_name(const std::string& name) {
  return name == "naive" || name == "skip" || name == "bucket" || name == "det" || name == "smallworld";
}

std::unique_ptr<EdgeModel> make_model(const ModelConfig& config, std::uint64_t seed) {
  switch (config.kind) {
    case ModelKind::Gnp: return std::make_unique<GnpModel>(config.n, config.p);
    case ModelKind::Sbm: return std::make_unique<SbmModel>(config.n, config.sbm, RandomSource(seed, 1));
    case ModelKind::SmallWorld: break;
  }
  throw Unsupported("the small-world model has no undirected edge model");
}

std::unique_ptr<LocalGenerator> make_generator(const std::string& name, const ModelConfig& config,
                                               std::uint64_t seed, EdgeModel** model_out) {
  if (model_out != nullptr) *model_out = nullptr;
  if (!is_generator_name(name)) throw Unsupported("unknown generator: " + name);
  if ((name == "smallworld") != (config.kind == ModelKind::SmallWorld)) {
    throw Unsupported("generator " + name + " does not support this model");
  }
  if (name == "smallworld") {
    SmallWorldParams params = config.small_world;
    params.seed = seed;
    return std::make_unique<SmallWorldGenerator>(params);
  }
  RandomSource rng(seed, 0);
  auto model = make_model(config, seed);
  if (model_out != nullptr) *model_out = model.get();
  if (name == "naive") return std::make_unique<NaiveGenerator>(std::move(model), rng);
  if (name == "skip") return std::make_unique<SkipGenerator>(std::move(model), rng);
  if (name == "bucket") return std::make_unique<BucketGenerator>(std::move(model), rng, config.bucket);
  return std::make_unique<DetGenerator>(std::move(model), rng);
}

}  // namespace localgraph
