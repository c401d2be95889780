#include "hyplane/bundle.hpp"

#include <algorithm>
#include <fstream>

#include "hyplane/atomic_file.hpp"
#include "hyplane/error.hpp"
#include "hyplane/grid_io.hpp"

namespace hyplane
{
namespace
{
using ojson = nlohmann::ordered_json;

constexpr const char* kManifest = "manifest.json";

void add_sphere(std::vector<PlaneInfo>& out, const std::string& name, const SphericalPlane& s)
{
    out.push_back({name, "spherical", s.frame, s.kind, s.disc_radius, ""});
}

void add_radial(std::vector<PlaneInfo>& out, const std::string& prefix, const SphericalTriPlane& s)
{
    add_sphere(out, prefix + "sphere", s.sphere);
    out.push_back({prefix + "r_theta", "radial", s.sphere.frame, std::nullopt, kLaeaRadius, "r-theta"});
    out.push_back({prefix + "r_phi", "radial", s.sphere.frame, std::nullopt, kLaeaRadius, "r-phi"});
}

void add_planar(std::vector<PlaneInfo>& out, const std::string& name, const PlanarPlane& p)
{
    out.push_back({name, "planar", std::nullopt, std::nullopt, kLaeaRadius,
                   std::string(to_string(p.u_axis)) + std::string(to_string(p.v_axis))});
}

ojson vec_json(Vec3 v)
{
    return ojson::array({v.x, v.y, v.z});
}

Vec3 vec_from(const nlohmann::json& j)
{
    if (!j.is_array() || j.size() != 3)
        throw Error("manifest vectors must have three components");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

ojson info_json(const PlaneInfo& info)
{
    ojson j;
    j["name"] = info.name;
    j["plane"] = info.role;
    if (!info.axes.empty())
        j["axes"] = info.axes;
    if (info.frame)
        j["frame"] = frame_to_json(*info.frame);
    if (info.warp)
    {
        j["warp"] = std::string(to_string(*info.warp));
        j["disc_radius"] = info.disc_radius;
    }
    return j;
}

ojson spec_json(const VariantSpec& spec, int channels)
{
    ojson j;
    j["format"] = "hyplane-bundle";
    j["version"] = 1;
    j["variant"] = std::string(to_string(spec.variant));
    j["warp"] = std::string(to_string(spec.warp));
    j["wrap_longitude"] = spec.wrap_longitude;
    j["depth"] = spec.depth;
    j["channels"] = channels;
    return j;
}

void write_manifest(const std::filesystem::path& dir, const ojson& manifest)
{
    write_file_atomic(dir / kManifest, manifest.dump(2) + "\n");
}

// Frames in the manifest must agree with the ones the variant conventions produce.
void check_frames(const nlohmann::json& entries, const Representation& rep)
{
    auto infos = describe_planes(rep);
    for (const auto& e : entries)
    {
        if (!e.contains("frame"))
            continue;
        std::string name = e.at("name").get<std::string>();
        for (const auto& info : infos)
        {
            if (info.name != name || !info.frame)
                continue;
            SphereFrame stored(vec_from(e["frame"].at("north")), vec_from(e["frame"].at("ref_azimuth")));
            if (norm(stored.north() - info.frame->north()) > 1e-12
                || norm(stored.ref_azimuth() - info.frame->ref_azimuth()) > 1e-12)
                throw Error("manifest frame of '" + name + "' disagrees with the variant convention");
        }
    }
}
}  // namespace

std::vector<PlaneInfo> describe_planes(const Representation& rep)
{
    std::vector<PlaneInfo> out;
    if (auto* t = std::get_if<TriPlane>(&rep))
    {
        add_planar(out, "planar_xy", t->xy);
        add_planar(out, "planar_xz", t->xz);
        add_planar(out, "planar_yz", t->yz);
    }
    else if (auto* g = std::get_if<TriGrid>(&rep))
    {
        for (const char* axes : {"xy", "xz", "yz"})
            for (int i = 0; i < g->depth(); ++i)
                out.push_back({std::string("grid_") + axes + "_" + std::to_string(i), "depth-stack", std::nullopt,
                               std::nullopt, kLaeaRadius, axes});
    }
    else if (auto* s = std::get_if<SphericalTriPlane>(&rep))
        add_radial(out, "", *s);
    else if (auto* d = std::get_if<DualSphericalTriPlane>(&rep))
    {
        add_radial(out, "a_", d->a);
        add_radial(out, "b_", d->b);
    }
    else if (auto* h = std::get_if<HyPlane31>(&rep))
    {
        add_planar(out, "planar_xy", h->xy);
        add_planar(out, "planar_xz", h->xz);
        add_planar(out, "planar_yz", h->yz);
        add_sphere(out, "sphere", h->sphere);
    }
    else if (auto* h2 = std::get_if<HyPlane22>(&rep))
    {
        add_planar(out, "planar_xy", h2->xy);
        add_planar(out, "planar_yz", h2->yz);
        add_sphere(out, "sphere_a", h2->sphere_a);
        add_sphere(out, "sphere_b", h2->sphere_b);
    }
    return out;
}

nlohmann::ordered_json frame_to_json(const SphereFrame& f)
{
    return {{"north", vec_json(f.north())}, {"ref_azimuth", vec_json(f.ref_azimuth())}};
}

nlohmann::ordered_json layout_to_json(const RegionLayout& layout, const Representation& rep)
{
    auto infos = describe_planes(rep);
    ojson entries = ojson::array();
    for (const auto& e : layout.entries())
    {
        ojson j;
        auto it = std::find_if(infos.begin(), infos.end(), [&](const PlaneInfo& i) { return i.name == e.name; });
        j = (it != infos.end()) ? info_json(*it) : ojson{{"name", e.name}, {"plane", kUnusedRegion}};
        j["rect"] = {e.rect.x0, e.rect.y0, e.rect.w, e.rect.h};
        entries.push_back(std::move(j));
    }
    return entries;
}

void save_bundle(const std::filesystem::path& dir, const VariantSpec& spec, const UnifiedMap& um)
{
    Representation rep = build(um, spec);
    std::filesystem::create_directories(dir);
    save_grid(dir / "unified.hypl", um.grid);
    ojson m = spec_json(spec, um.grid.channels());
    m["storage"] = "unified";
    m["unified"] = {{"file", "unified.hypl"},
                    {"height", um.layout.height()},
                    {"width", um.layout.width()},
                    {"layout", layout_to_json(um.layout, rep)}};
    write_manifest(dir, m);
}

void save_bundle(const std::filesystem::path& dir, const VariantSpec& spec,
                 const std::map<std::string, FeatureGrid>& planes)
{
    Representation rep = assemble(spec, planes);
    std::filesystem::create_directories(dir);
    ojson entries = ojson::array();
    for (const auto& info : describe_planes(rep))
    {
        std::string file = info.name + ".hypl";
        save_grid(dir / file, planes.at(info.name));
        ojson j = info_json(info);
        j["file"] = file;
        entries.push_back(std::move(j));
    }
    ojson m = spec_json(spec, channels(rep));
    m["storage"] = "planes";
    m["planes"] = std::move(entries);
    write_manifest(dir, m);
}

LoadedBundle load_bundle(const std::filesystem::path& dir)
{
    std::ifstream in(dir / kManifest);
    if (!in)
        throw Error("cannot open " + (dir / kManifest).string());
    nlohmann::json m;
    try
    {
        m = nlohmann::json::parse(in);
        if (m.at("format") != "hyplane-bundle" || m.at("version") != 1)
            throw Error("unsupported bundle manifest");
        VariantSpec spec;
        spec.variant = variant_from_string(m.at("variant").get<std::string>());
        spec.warp = warp_kind_from_string(m.at("warp").get<std::string>());
        spec.wrap_longitude = m.value("wrap_longitude", false);
        spec.depth = m.value("depth", 3);
        int c = m.at("channels").get<int>();

        std::string storage = m.at("storage").get<std::string>();
        if (storage == "unified")
        {
            const auto& u = m.at("unified");
            std::vector<LayoutEntry> entries;
            for (const auto& e : u.at("layout"))
            {
                const auto& r = e.at("rect");
                entries.push_back({e.at("name").get<std::string>(),
                                   {r.at(0).get<int>(), r.at(1).get<int>(), r.at(2).get<int>(), r.at(3).get<int>()}});
            }
            FeatureGrid grid = load_grid(dir / u.at("file").get<std::string>());
            if (grid.channels() != c)
                throw Error("bundle channel count disagrees with its grid");
            UnifiedMap um(grid, RegionLayout(u.at("height").get<int>(), u.at("width").get<int>(), entries));
            Representation rep = build(um, spec);
            check_frames(u.at("layout"), rep);
            return {spec, std::move(rep), std::move(um)};
        }
        if (storage == "planes")
        {
            std::map<std::string, FeatureGrid> planes;
            for (const auto& e : m.at("planes"))
            {
                FeatureGrid g = load_grid(dir / e.at("file").get<std::string>());
                if (g.channels() != c)
                    throw Error("bundle channel count disagrees with its grids");
                planes.emplace(e.at("name").get<std::string>(), std::move(g));
            }
            Representation rep = assemble(spec, planes);
            check_frames(m.at("planes"), rep);
            return {spec, std::move(rep), std::nullopt};
        }
        throw Error("unknown bundle storage '" + storage + "'");
    }
    catch (const nlohmann::json::exception& e)
    {
        throw Error(std::string("malformed bundle manifest: ") + e.what());
    }
}

}  // namespace hyplane
