#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyplane/layout.hpp"
#include "hyplane/repr.hpp"

namespace hyplane
{

//! Static description of one plane, as recorded in bundle manifests.
struct PlaneInfo
{
    std::string name;
    std::string role;  //!< "planar", "spherical", "radial" or "depth-stack"
    std::optional<SphereFrame> frame;
    std::optional<WarpKind> warp;
    double disc_radius = kLaeaRadius;
    std::string axes;  //!< projection axes for planar roles, e.g. "xy"
};

std::vector<PlaneInfo> describe_planes(const Representation& rep);

nlohmann::ordered_json frame_to_json(const SphereFrame& f);
nlohmann::ordered_json layout_to_json(const RegionLayout& layout, const Representation& rep);

//! A representation on disk: manifest.json plus HYPL grids, either one unified
//! map ("storage": "unified", with the layout) or one file per plane.
void save_bundle(const std::filesystem::path& dir, const VariantSpec& spec, const UnifiedMap& um);
void save_bundle(const std::filesystem::path& dir, const VariantSpec& spec,
                 const std::map<std::string, FeatureGrid>& planes);

struct LoadedBundle
{
    VariantSpec spec;
    Representation rep;
    std::optional<UnifiedMap> unified;
};

//! Throws Error if the manifest is malformed or disagrees with the variant's frame conventions.
LoadedBundle load_bundle(const std::filesystem::path& dir);

}  // namespace hyplane
