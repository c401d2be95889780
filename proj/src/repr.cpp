#include "hyplane/repr.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "hyplane/error.hpp"

namespace hyplane
{
namespace
{
template<class... Ts>
struct Overloaded : Ts...
{
    using Ts::operator()...;
};
template<class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool near(Vec3 a, Vec3 b)
{
    return norm(a - b) <= 1e-12;
}

Feature zeros(int channels)
{
    return Feature(static_cast<std::size_t>(channels), 0.0);
}

Feature planar(const PlanarPlane& plane, Vec3 p)
{
    return sample_planar(plane, p);
}

// Linear blend along the dropped axis between the two bracketing parallel grids.
Feature depth_stack(const std::vector<FeatureGrid>& stack, UV q, double depth)
{
    Feature f = zeros(stack.front().channels());
    const int d = static_cast<int>(stack.size());
    if (d == 1)
    {
        accumulate_bilinear(stack.front(), q, f);
        return f;
    }
    double s = std::clamp((depth + 1.0) * 0.5 * (d - 1), 0.0, static_cast<double>(d - 1));
    int i0 = std::min(static_cast<int>(s), d - 2);
    double t = s - i0;
    accumulate_bilinear(stack[i0], q, f, 1.0 - t);
    accumulate_bilinear(stack[i0 + 1], q, f, t);
    return f;
}

struct RadialCoords
{
    double r_coord;
    SphericalDir dir;
};

RadialCoords radial(Vec3 p, const SphereFrame& frame)
{
    return {2.0 * norm(p) / kRadialMax - 1.0, cartesian_to_dir(p, frame)};
}

void spherical_triplane_planes(const SphericalTriPlane& s, Vec3 p, const std::string& prefix,
                               std::vector<NamedFeature>& out)
{
    RadialCoords rc = radial(p, s.sphere.frame);
    out.push_back({prefix + "sphere", sample_spherical(s.sphere, p)});
    out.push_back({prefix + "r_theta", sample_bilinear(s.r_theta, {rc.r_coord, 2.0 * rc.dir.theta / kPi - 1.0})});
    out.push_back({prefix + "r_phi", sample_bilinear(s.r_phi, {rc.r_coord, rc.dir.phi / kPi})});
}

Feature mean_range(const std::vector<NamedFeature>& planes, std::size_t begin, std::size_t end)
{
    std::vector<const Feature*> ptrs;
    for (std::size_t i = begin; i < end; ++i)
        ptrs.push_back(&planes[i].feature);
    return mean_of(ptrs);
}

double laea_radius(const SphericalPlane& s, Vec3 p)
{
    return laea_forward(cartesian_to_dir(p, s.frame)).radius;
}

const FeatureGrid& take(const std::map<std::string, FeatureGrid>& grids, const std::string& name)
{
    return grids.at(name);
}

void check_planar(const PlanarPlane& plane, Axis u, Axis v, const char* name)
{
    if (plane.u_axis != u || plane.v_axis != v)
        throw Error(std::string("plane ") + name + " has the wrong projection axes");
}

void check_triplane_axes(const PlanarPlane& xy, const PlanarPlane& xz, const PlanarPlane& yz)
{
    check_planar(xy, Axis::X, Axis::Y, "planar_xy");
    check_planar(xz, Axis::X, Axis::Z, "planar_xz");
    check_planar(yz, Axis::Y, Axis::Z, "planar_yz");
}
}  // namespace

std::string_view to_string(Variant v)
{
    switch (v)
    {
        case Variant::TriPlane: return "tri-plane";
        case Variant::TriGrid: return "tri-grid";
        case Variant::SphericalTriPlane: return "spherical-tri-plane";
        case Variant::DualSphericalTriPlane: return "dual-spherical-tri-plane";
        case Variant::HyPlane31: return "hy-plane-3+1";
        case Variant::HyPlane22: return "hy-plane-2+2";
    }
    return "unknown";
}

Variant variant_from_string(std::string_view name)
{
    for (Variant v : {Variant::TriPlane, Variant::TriGrid, Variant::SphericalTriPlane,
                      Variant::DualSphericalTriPlane, Variant::HyPlane31, Variant::HyPlane22})
        if (name == to_string(v))
            return v;
    throw Error("unknown variant '" + std::string(name) + "'");
}

Variant variant_of(const Representation& rep)
{
    return static_cast<Variant>(rep.index());
}

namespace frames
{
SphereFrame hyplane31_sphere() { return SphereFrame({0, 1, 0}, {0, 0, 1}); }
SphereFrame hyplane22_sphere_a() { return SphereFrame({0, 0, -1}, {0, 1, 0}); }
SphereFrame hyplane22_sphere_b() { return SphereFrame({0, 0, 1}, {0, 1, 0}); }
SphereFrame dual_second() { return SphereFrame({1, 0, 0}, {0, 1, 0}); }
}  // namespace frames

std::vector<std::string> plane_names(const VariantSpec& spec)
{
    switch (spec.variant)
    {
        case Variant::TriPlane: return {"planar_xy", "planar_xz", "planar_yz"};
        case Variant::TriGrid:
        {
            if (spec.depth < 1)
                throw Error("tri-grid depth must be >= 1");
            std::vector<std::string> names;
            for (const char* axes : {"xy", "xz", "yz"})
                for (int i = 0; i < spec.depth; ++i)
                    names.push_back(std::string("grid_") + axes + "_" + std::to_string(i));
            return names;
        }
        case Variant::SphericalTriPlane: return {"sphere", "r_theta", "r_phi"};
        case Variant::DualSphericalTriPlane:
            return {"a_sphere", "a_r_theta", "a_r_phi", "b_sphere", "b_r_theta", "b_r_phi"};
        case Variant::HyPlane31: return {"planar_xy", "planar_xz", "planar_yz", "sphere"};
        case Variant::HyPlane22: return {"planar_xy", "planar_yz", "sphere_a", "sphere_b"};
    }
    return {};
}

Representation assemble(const VariantSpec& spec, const std::map<std::string, FeatureGrid>& grids)
{
    std::vector<std::string> wanted = plane_names(spec);
    std::set<std::string> wanted_set(wanted.begin(), wanted.end());
    std::string missing, extra;
    for (const auto& name : wanted)
        if (!grids.count(name))
            missing += (missing.empty() ? "" : ", ") + name;
    for (const auto& [name, grid] : grids)
        if (!wanted_set.count(name))
            extra += (extra.empty() ? "" : ", ") + name;
    if (!missing.empty() || !extra.empty())
        throw Error("plane names do not match " + std::string(to_string(spec.variant)) + ": missing [" + missing
                    + "], extra [" + extra + "]");

    auto sphere = [&](const std::string& name, SphereFrame frame) {
        SphericalPlane s{frame, spec.warp, take(grids, name)};
        s.wrap_longitude = spec.wrap_longitude;
        return s;
    };
    auto spherical_triplane = [&](const std::string& prefix, SphereFrame frame) {
        return SphericalTriPlane{sphere(prefix + "sphere", frame), take(grids, prefix + "r_theta"),
                                 take(grids, prefix + "r_phi")};
    };

    Representation rep = [&]() -> Representation {
        switch (spec.variant)
        {
            case Variant::TriPlane:
                return TriPlane{{Axis::X, Axis::Y, take(grids, "planar_xy")},
                                {Axis::X, Axis::Z, take(grids, "planar_xz")},
                                {Axis::Y, Axis::Z, take(grids, "planar_yz")}};
            case Variant::TriGrid:
            {
                TriGrid g;
                for (int i = 0; i < spec.depth; ++i)
                {
                    g.xy.push_back(take(grids, "grid_xy_" + std::to_string(i)));
                    g.xz.push_back(take(grids, "grid_xz_" + std::to_string(i)));
                    g.yz.push_back(take(grids, "grid_yz_" + std::to_string(i)));
                }
                return g;
            }
            case Variant::SphericalTriPlane: return spherical_triplane("", frames::head_up());
            case Variant::DualSphericalTriPlane:
                return DualSphericalTriPlane{spherical_triplane("a_", frames::head_up()),
                                             spherical_triplane("b_", frames::dual_second())};
            case Variant::HyPlane31:
                return HyPlane31{{Axis::X, Axis::Y, take(grids, "planar_xy")},
                                 {Axis::X, Axis::Z, take(grids, "planar_xz")},
                                 {Axis::Y, Axis::Z, take(grids, "planar_yz")},
                                 sphere("sphere", frames::hyplane31_sphere())};
            case Variant::HyPlane22:
            {
                HyPlane22 h{{Axis::X, Axis::Y, take(grids, "planar_xy")},
                            {Axis::Y, Axis::Z, take(grids, "planar_yz")},
                            sphere("sphere_a", frames::hyplane22_sphere_a()),
                            sphere("sphere_b", frames::hyplane22_sphere_b())};
                double area_a = static_cast<double>(h.sphere_a.grid.height()) * h.sphere_a.grid.width();
                double area_b = static_cast<double>(h.sphere_b.grid.height()) * h.sphere_b.grid.width();
                if (area_a < area_b)
                    h.sphere_a.disc_radius = kLaeaRadius * std::sqrt(area_a / area_b);
                else if (area_b < area_a)
                    h.sphere_b.disc_radius = kLaeaRadius * std::sqrt(area_b / area_a);
                return h;
            }
        }
        throw Error("unknown variant");
    }();
    validate(rep);
    return rep;
}

void validate(const Representation& rep)
{
    int c = channels(rep);
    auto same_c = [c](const FeatureGrid& g) {
        if (g.empty() || g.channels() != c)
            throw Error("all planes of a representation must share one channel count");
    };
    auto check_sphere = [&](const SphericalPlane& s) {
        same_c(s.grid);
        if (s.is_cap() && (s.kind == WarpKind::NaiveThetaPhi || !(s.disc_radius > 0)))
            throw Error("polar caps need an LAEA warp and a positive disc radius");
    };
    std::visit(Overloaded{
                   [&](const TriPlane& t) {
                       check_triplane_axes(t.xy, t.xz, t.yz);
                       same_c(t.xy.grid), same_c(t.xz.grid), same_c(t.yz.grid);
                   },
                   [&](const TriGrid& t) {
                       if (t.xy.empty() || t.xy.size() != t.xz.size() || t.xy.size() != t.yz.size())
                           throw Error("tri-grid needs the same nonzero depth on every axis");
                       for (const auto* stack : {&t.xy, &t.xz, &t.yz})
                           for (const auto& g : *stack)
                               same_c(g);
                   },
                   [&](const SphericalTriPlane& s) {
                       check_sphere(s.sphere);
                       same_c(s.r_theta), same_c(s.r_phi);
                   },
                   [&](const DualSphericalTriPlane& d) {
                       for (const auto* s : {&d.a, &d.b})
                       {
                           check_sphere(s->sphere);
                           same_c(s->r_theta), same_c(s->r_phi);
                       }
                       if (std::abs(dot(d.a.sphere.frame.north(), d.b.sphere.frame.north())) > 1e-12)
                           throw Error("dual spherical tri-plane frames must be orthogonal");
                   },
                   [&](const HyPlane31& h) {
                       check_triplane_axes(h.xy, h.xz, h.yz);
                       same_c(h.xy.grid), same_c(h.xz.grid), same_c(h.yz.grid);
                       check_sphere(h.sphere);
                       if (!near(h.sphere.frame.north(), {0, 1, 0}))
                           throw Error("hy-plane (3+1) sphere North Pole must point along +y");
                   },
                   [&](const HyPlane22& h) {
                       check_planar(h.xy, Axis::X, Axis::Y, "planar_xy");
                       check_planar(h.yz, Axis::Y, Axis::Z, "planar_yz");
                       same_c(h.xy.grid), same_c(h.yz.grid);
                       check_sphere(h.sphere_a), check_sphere(h.sphere_b);
                       if (!near(h.sphere_a.frame.north(), {0, 0, -1}))
                           throw Error("hy-plane (2+2) sphere_a North Pole must point along -z");
                       if (!near(h.sphere_b.frame.north(), -h.sphere_a.frame.north()))
                           throw Error("hy-plane (2+2) spheres must have antipodal poles");
                       if (h.sphere_a.is_cap() && h.sphere_b.is_cap())
                           throw Error("at most one hy-plane (2+2) sphere may be a cap");
                   },
               },
               rep);
}

int channels(const Representation& rep)
{
    return std::visit(Overloaded{
                          [](const TriPlane& t) { return t.xy.grid.channels(); },
                          [](const TriGrid& t) { return t.xy.empty() ? 0 : t.xy.front().channels(); },
                          [](const SphericalTriPlane& s) { return s.sphere.grid.channels(); },
                          [](const DualSphericalTriPlane& d) { return d.a.sphere.grid.channels(); },
                          [](const HyPlane31& h) { return h.xy.grid.channels(); },
                          [](const HyPlane22& h) { return h.xy.grid.channels(); },
                      },
                      rep);
}

bool has_spherical_plane(const Representation& rep)
{
    Variant v = variant_of(rep);
    return v != Variant::TriPlane && v != Variant::TriGrid;
}

double blend_weight(double radius, double radius_max)
{
    double gap = radius_max - radius;
    return gap > 0 ? gap * gap : 0.0;
}

Feature blend_dual_sphere(const Feature& f_a, const Feature& f_b, double radius_a, double radius_b,
                          double radius_max_a, double radius_max_b)
{
    if (f_a.size() != f_b.size())
        throw Error("blended features must have equal length");
    if (radius_a < 0 || radius_b < 0 || radius_a > kLaeaRadius || radius_b > kLaeaRadius)
        throw Error("blend radii must lie in [0, 2]");
    double w_a = blend_weight(radius_a, radius_max_a);
    double w_b = blend_weight(radius_b, radius_max_b);
    double total = w_a + w_b;
    if (!(total > 0))
        throw Error("degenerate blend");
    Feature f(f_a.size());
    for (std::size_t k = 0; k < f.size(); ++k)
        f[k] = (w_a * f_a[k] + w_b * f_b[k]) / total;
    return f;
}

Feature mean_of(const std::vector<const Feature*>& features)
{
    if (features.empty())
        throw Error("mean of no features");
    Feature f(features.front()->size(), 0.0);
    for (const Feature* g : features)
    {
        if (g->size() != f.size())
            throw Error("aggregated features must have equal length");
        for (std::size_t k = 0; k < f.size(); ++k)
            f[k] += (*g)[k];
    }
    const double inv = 1.0 / static_cast<double>(features.size());
    for (double& v : f)
        v *= inv;
    return f;
}

QueryBreakdown query_breakdown(const Representation& rep, Vec3 p)
{
    QueryBreakdown out;
    auto& planes = out.planes;
    std::visit(Overloaded{
                   [&](const TriPlane& t) {
                       planes.push_back({"planar_xy", planar(t.xy, p)});
                       planes.push_back({"planar_xz", planar(t.xz, p)});
                       planes.push_back({"planar_yz", planar(t.yz, p)});
                       out.aggregate = mean_range(planes, 0, 3);
                   },
                   [&](const TriGrid& t) {
                       planes.push_back({"grid_xy", depth_stack(t.xy, {p.x, p.y}, p.z)});
                       planes.push_back({"grid_xz", depth_stack(t.xz, {p.x, p.z}, p.y)});
                       planes.push_back({"grid_yz", depth_stack(t.yz, {p.y, p.z}, p.x)});
                       out.aggregate = mean_range(planes, 0, 3);
                   },
                   [&](const SphericalTriPlane& s) {
                       spherical_triplane_planes(s, p, "", planes);
                       out.aggregate = mean_range(planes, 0, 3);
                   },
                   [&](const DualSphericalTriPlane& d) {
                       spherical_triplane_planes(d.a, p, "a_", planes);
                       spherical_triplane_planes(d.b, p, "b_", planes);
                       out.aggregate = blend_dual_sphere(mean_range(planes, 0, 3), mean_range(planes, 3, 6),
                                                         laea_radius(d.a.sphere, p), laea_radius(d.b.sphere, p),
                                                         d.a.sphere.disc_radius, d.b.sphere.disc_radius);
                   },
                   [&](const HyPlane31& h) {
                       planes.push_back({"planar_xy", planar(h.xy, p)});
                       planes.push_back({"planar_xz", planar(h.xz, p)});
                       planes.push_back({"planar_yz", planar(h.yz, p)});
                       planes.push_back({"sphere", sample_spherical(h.sphere, p)});
                       out.aggregate = mean_range(planes, 0, 4);
                   },
                   [&](const HyPlane22& h) {
                       planes.push_back({"planar_xy", planar(h.xy, p)});
                       planes.push_back({"planar_yz", planar(h.yz, p)});
                       planes.push_back({"sphere_a", sample_spherical(h.sphere_a, p)});
                       planes.push_back({"sphere_b", sample_spherical(h.sphere_b, p)});
                       Feature blended = blend_dual_sphere(planes[2].feature, planes[3].feature,
                                                           laea_radius(h.sphere_a, p), laea_radius(h.sphere_b, p),
                                                           h.sphere_a.disc_radius, h.sphere_b.disc_radius);
                       out.aggregate = mean_of({&planes[0].feature, &planes[1].feature, &blended});
                   },
               },
               rep);
    return out;
}

Feature query(const Representation& rep, Vec3 p)
{
    return query_breakdown(rep, p).aggregate;
}

MirrorPair mirror_pair_features(const Representation& rep, Vec3 p)
{
    Vec3 m{p.x, p.y, -p.z};
    return {p, m, query_breakdown(rep, p), query_breakdown(rep, m)};
}

}  // namespace hyplane
