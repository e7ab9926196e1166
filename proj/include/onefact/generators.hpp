#pragma once

#include <cstdint>
#include <string>

#include "onefact/graph.hpp"

namespace onefact {

enum class GenModel { kComplete, kCycle, kRandomRegular, kBipartiteRegular };

struct GenSpec {
  GenModel model = GenModel::kComplete;
  int n = 0;
  int d = 0;  // ignored for complete/cycle
  std::uint64_t seed = 0;
};

GenModel parse_gen_model(const std::string& name);

// Deterministic for a fixed spec. Random regular graphs come from the
// pairing model with whole-sample rejection; for d > n/3 the sampler
// switches to superposing d random perfect matchings. The bipartite model
// is a union of d random permutations on sides of size n/2, with vertices
// 0..n/2-1 on side A. Throws std::invalid_argument on parity/degree
// violations and std::runtime_error if the rejection budget runs out.
Graph generate(const GenSpec& spec);

}  // namespace onefact
