#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "hyplane/feature_grid.hpp"

namespace hyplane
{

//! HYPL grid file: "HYPL", u32 version, u32 H, u32 W, u32 C, then H*W*C
//! float32 values; all little-endian, row-major, channel-fastest.
inline constexpr std::uint32_t kHyplVersion = 1;

void write_grid(std::ostream& out, const FeatureGrid& grid);
FeatureGrid read_grid(std::istream& in);

//! Written to a temporary sibling and renamed into place.
void save_grid(const std::filesystem::path& path, const FeatureGrid& grid);
FeatureGrid load_grid(const std::filesystem::path& path);

}  // namespace hyplane
