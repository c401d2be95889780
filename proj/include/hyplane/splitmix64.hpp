#pragma once

#include <cmath>
#include <cstdint>

namespace hyplane
{

//! SplitMix64 (Steele, Lea, Flood; constants from Vigna's reference code).
//! Bit-exact across platforms; every seeded stream in the library comes from here.
class SplitMix64
{
  public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t operator()()
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    static constexpr std::uint64_t min() { return 0; }
    static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

    //! Uniform in [0, 1) from the top 53 bits.
    double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  private:
    std::uint64_t state_;
};

}  // namespace hyplane
