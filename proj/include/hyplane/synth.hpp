#pragma once

#include <cstdint>

#include "hyplane/feature_grid.hpp"

namespace hyplane
{

//! Unit-variance uniform noise in [-sqrt 3, sqrt 3], drawn texel by texel from SplitMix64(seed).
FeatureGrid noise_grid(int height, int width, int channels, std::uint64_t seed);
FeatureGrid constant_grid(int height, int width, int channels, float value);

}  // namespace hyplane
