#pragma once

#include <map>
#include <string>
#include <vector>

#include "hyplane/feature_grid.hpp"
#include "hyplane/repr.hpp"

namespace hyplane
{

//! Name of a region that build() ignores (tri-plane in a 2x2 split).
inline constexpr const char* kUnusedRegion = "unused";

struct LayoutEntry
{
    std::string name;
    Rect rect;

    bool operator==(const LayoutEntry&) const = default;
};

//! Named, pairwise-disjoint rectangles inside a height x width map.
class RegionLayout
{
  public:
    //! Throws Error on duplicate names, rects that do not fit, rects under 2x2, or overlaps.
    RegionLayout(int height, int width, std::vector<LayoutEntry> entries);

    int height() const { return height_; }
    int width() const { return width_; }
    const std::vector<LayoutEntry>& entries() const { return entries_; }
    //! Throws Error if the name is absent.
    const Rect& rect(const std::string& name) const;

    bool operator==(const RegionLayout&) const = default;

  private:
    int height_;
    int width_;
    std::vector<LayoutEntry> entries_;
};

//! Region count per texel from an exhaustive scan (row-major, height x width).
std::vector<int> coverage_counts(const RegionLayout& layout);
//! Every texel covered exactly once.
bool tiles_exactly(const RegionLayout& layout);

//! 2x2 equal quadrants; names are assigned bottom-left, bottom-right, top-left, top-right.
//! Throws Error unless size is even (>= 4) and exactly four names are given.
RegionLayout even_layout(int size, const std::vector<std::string>& names);
//! Quadrants named after the variant's planes, padded with "unused" for three-plane variants.
RegionLayout even_layout(int size, Variant variant);

//! Sphere 384x384, planar_xy 128 wide x 384 tall, planar_yz 384 wide x 128 tall,
//! planar_xz 128x128 at size 512; other sizes scale with even rounding and the
//! short side absorbs the remainder. Throws Error for size < 8.
RegionLayout area_biased_layout_31(int size = 512);

//! Large sphere_b, small cap sphere_a (side = cap_fraction * size, rounded to
//! even) and two elongated planar regions, tiled like the (3+1) split.
//! Throws Error unless cap_fraction is in (0, 0.5] and every side is >= 2.
RegionLayout area_biased_layout_22(int size = 512, double cap_fraction = 0.25);

//! One shared map split spatially into plane regions. Writes through grid are
//! visible in every split view; finish writing before sharing across threads.
struct UnifiedMap
{
    FeatureGrid grid;
    RegionLayout layout;

    //! Throws Error if the layout size differs from the grid.
    UnifiedMap(FeatureGrid g, RegionLayout l);
};

//! Aliasing views, one per layout entry (no copies).
std::map<std::string, FeatureGrid> split(const UnifiedMap& um);

//! Assembles the variant from the split views; "unused" regions are skipped.
//! Throws Error listing missing or extra regions.
Representation build(const UnifiedMap& um, const VariantSpec& spec);

}  // namespace hyplane
