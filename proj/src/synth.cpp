#include "hyplane/synth.hpp"

#include <cmath>
#include <vector>

#include "hyplane/splitmix64.hpp"

namespace hyplane
{

FeatureGrid noise_grid(int height, int width, int channels, std::uint64_t seed)
{
    FeatureGrid grid(height, width, channels);
    SplitMix64 rng(seed);
    const double amp = std::sqrt(3.0);
    for (int r = 0; r < height; ++r)
        for (int c = 0; c < width; ++c)
            for (int k = 0; k < channels; ++k)
                grid.set(r, c, k, static_cast<float>(rng.uniform(-amp, amp)));
    return grid;
}

FeatureGrid constant_grid(int height, int width, int channels, float value)
{
    return FeatureGrid(height, width, channels,
                       std::vector<float>(static_cast<std::size_t>(height) * width * channels, value));
}

}  // namespace hyplane
