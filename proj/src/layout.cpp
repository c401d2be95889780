#include "hyplane/layout.hpp"

#include <cmath>
#include <set>

#include "hyplane/error.hpp"

namespace hyplane
{
namespace
{
bool overlaps(const Rect& a, const Rect& b)
{
    return a.x0 < b.x0 + b.w && b.x0 < a.x0 + a.w && a.y0 < b.y0 + b.h && b.y0 < a.y0 + a.h;
}

int round_even(double x)
{
    return 2 * static_cast<int>(std::lround(x / 2.0));
}

// Large square at the origin, two elongated strips and a small square in the far corner.
RegionLayout corner_split(int size, int small, const std::string& large_name, const std::string& tall_name,
                          const std::string& wide_name, const std::string& small_name)
{
    int large = size - small;
    if (small < 2 || large < 2)
        throw Error("infeasible tiling for map size " + std::to_string(size));
    return RegionLayout(size, size,
                        {{large_name, {0, 0, large, large}},
                         {tall_name, {large, 0, small, large}},
                         {wide_name, {0, large, large, small}},
                         {small_name, {large, large, small, small}}});
}
}  // namespace

RegionLayout::RegionLayout(int height, int width, std::vector<LayoutEntry> entries)
    : height_(height), width_(width), entries_(std::move(entries))
{
    if (height < 2 || width < 2)
        throw Error("layout map must be at least 2x2");
    std::set<std::string> names;
    for (std::size_t i = 0; i < entries_.size(); ++i)
    {
        const auto& e = entries_[i];
        if (!names.insert(e.name).second)
            throw Error("duplicate region name '" + e.name + "'");
        const Rect& r = e.rect;
        if (r.w < 2 || r.h < 2 || r.x0 < 0 || r.y0 < 0 || r.x0 + r.w > width || r.y0 + r.h > height)
            throw Error("region '" + e.name + "' does not fit the map");
        for (std::size_t j = 0; j < i; ++j)
            if (overlaps(r, entries_[j].rect))
                throw Error("regions '" + entries_[j].name + "' and '" + e.name + "' overlap");
    }
}

const Rect& RegionLayout::rect(const std::string& name) const
{
    for (const auto& e : entries_)
        if (e.name == name)
            return e.rect;
    throw Error("no region named '" + name + "'");
}

std::vector<int> coverage_counts(const RegionLayout& layout)
{
    std::vector<int> counts(static_cast<std::size_t>(layout.height()) * layout.width(), 0);
    for (const auto& e : layout.entries())
        for (int row = e.rect.y0; row < e.rect.y0 + e.rect.h; ++row)
            for (int col = e.rect.x0; col < e.rect.x0 + e.rect.w; ++col)
                ++counts[static_cast<std::size_t>(row) * layout.width() + col];
    return counts;
}

bool tiles_exactly(const RegionLayout& layout)
{
    for (int c : coverage_counts(layout))
        if (c != 1)
            return false;
    return true;
}

RegionLayout even_layout(int size, const std::vector<std::string>& names)
{
    if (names.size() != 4)
        throw Error("even layout splits into exactly four regions");
    if (size < 4 || size % 2 != 0)
        throw Error("even layout needs an even map size >= 4 (got " + std::to_string(size) + ")");
    int h = size / 2;
    return RegionLayout(size, size,
                        {{names[0], {0, 0, h, h}},
                         {names[1], {h, 0, h, h}},
                         {names[2], {0, h, h, h}},
                         {names[3], {h, h, h, h}}});
}

RegionLayout even_layout(int size, Variant variant)
{
    std::vector<std::string> names = plane_names({variant});
    if (names.size() == 3)
        names.push_back(kUnusedRegion);
    if (names.size() != 4)
        throw Error("variant " + std::string(to_string(variant)) + " does not fit a 2x2 split");
    if (variant == Variant::HyPlane31)
        names = {"sphere", "planar_xy", "planar_xz", "planar_yz"};
    else if (variant == Variant::HyPlane22)
        names = {"sphere_b", "planar_xy", "planar_yz", "sphere_a"};
    return even_layout(size, names);
}

RegionLayout area_biased_layout_31(int size)
{
    if (size < 8)
        throw Error("area-biased layout needs a map size >= 8");
    int large = round_even(384.0 * size / 512.0);
    return corner_split(size, size - large, "sphere", "planar_xy", "planar_yz", "planar_xz");
}

RegionLayout area_biased_layout_22(int size, double cap_fraction)
{
    if (!(cap_fraction > 0) || cap_fraction > 0.5)
        throw Error("cap fraction must lie in (0, 0.5]");
    return corner_split(size, round_even(cap_fraction * size), "sphere_b", "planar_xy", "planar_yz", "sphere_a");
}

UnifiedMap::UnifiedMap(FeatureGrid g, RegionLayout l) : grid(std::move(g)), layout(std::move(l))
{
    if (grid.empty() || grid.height() != layout.height() || grid.width() != layout.width())
        throw Error("layout size does not match the unified map");
}

std::map<std::string, FeatureGrid> split(const UnifiedMap& um)
{
    std::map<std::string, FeatureGrid> views;
    for (const auto& e : um.layout.entries())
        views.emplace(e.name, um.grid.window(e.rect));
    return views;
}

Representation build(const UnifiedMap& um, const VariantSpec& spec)
{
    auto views = split(um);
    views.erase(kUnusedRegion);
    return assemble(spec, views);
}

}  // namespace hyplane
