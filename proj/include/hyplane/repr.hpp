#pragma once

#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hyplane/plane.hpp"

namespace hyplane
{

//! Radial normaliser of the (r, angle) planes: the cube diagonal.
inline const double kRadialMax = std::sqrt(3.0);

struct TriPlane
{
    PlanarPlane xy, xz, yz;
};

//! D parallel grids per axis pair at equispaced depths spanning [-1, 1]
//! (a single grid sits at depth 0); linear interpolation along depth.
struct TriGrid
{
    std::vector<FeatureGrid> xy, xz, yz;

    int depth() const { return static_cast<int>(xy.size()); }
};

//! Direction plane plus two radial planes indexed by (r, theta) and (r, phi).
struct SphericalTriPlane
{
    SphericalPlane sphere;
    FeatureGrid r_theta;
    FeatureGrid r_phi;
};

struct DualSphericalTriPlane
{
    SphericalTriPlane a, b;
};

//! Three planar planes plus one sphere whose North Pole is +y (South Pole hidden downward).
struct HyPlane31
{
    PlanarPlane xy, xz, yz;
    SphericalPlane sphere;
};

//! Two planar planes plus two spheres with opposing poles: sphere_a North = -z, sphere_b North = +z.
struct HyPlane22
{
    PlanarPlane xy, yz;
    SphericalPlane sphere_a, sphere_b;
};

using Representation = std::variant<TriPlane, TriGrid, SphericalTriPlane, DualSphericalTriPlane, HyPlane31, HyPlane22>;

enum class Variant
{
    TriPlane,
    TriGrid,
    SphericalTriPlane,
    DualSphericalTriPlane,
    HyPlane31,
    HyPlane22,
};

std::string_view to_string(Variant v);
//! Accepts "tri-plane", "tri-grid", "spherical-tri-plane", "dual-spherical-tri-plane", "hy-plane-3+1", "hy-plane-2+2".
Variant variant_from_string(std::string_view name);
Variant variant_of(const Representation& rep);

//! How to assemble a representation from named grids.
struct VariantSpec
{
    Variant variant = Variant::HyPlane31;
    WarpKind warp = WarpKind::LaeaElliptical;
    int depth = 3;                //!< TriGrid only
    bool wrap_longitude = false;  //!< NaiveThetaPhi spheres: periodic u
};

//! Plane names a variant is assembled from.
std::vector<std::string> plane_names(const VariantSpec& spec);

namespace frames
{
SphereFrame hyplane31_sphere();   //!< North +y, ref +z
SphereFrame hyplane22_sphere_a(); //!< North -z, ref +y
SphereFrame hyplane22_sphere_b(); //!< North +z, ref +y
SphereFrame dual_second();        //!< North +x, ref +y
}  // namespace frames

//! Builds a representation from named grids and validates its invariants
//! (shared channel count, frame conventions). For HyPlane22 the sphere with
//! the smaller grid becomes a polar cap whose disc radius keeps texel density
//! equal to the larger sphere: 2 sqrt(area_small / area_large).
//! Throws Error naming missing or extra planes.
Representation assemble(const VariantSpec& spec, const std::map<std::string, FeatureGrid>& grids);

//! Throws Error if the representation breaks a structural invariant.
void validate(const Representation& rep);

int channels(const Representation& rep);
//! True for variants that need |p| > 0.
bool has_spherical_plane(const Representation& rep);

struct NamedFeature
{
    std::string name;
    Feature feature;
};

//! Per-plane features together with the aggregate they produce.
struct QueryBreakdown
{
    std::vector<NamedFeature> planes;
    Feature aggregate;
};

//! Aggregate = arithmetic mean over constituents, where the two spheres of a
//! dual arrangement first merge into one constituent with blend_dual_sphere.
QueryBreakdown query_breakdown(const Representation& rep, Vec3 p);
Feature query(const Representation& rep, Vec3 p);

//! Dual-sphere weighting: w = (R_max - R)^2 (zero beyond R_max), f = (w_a f_a + w_b f_b)/(w_a + w_b).
//! Throws Error("degenerate blend") if both weights vanish.
Feature blend_dual_sphere(const Feature& f_a, const Feature& f_b, double radius_a, double radius_b,
                          double radius_max_a = kLaeaRadius, double radius_max_b = kLaeaRadius);
double blend_weight(double radius, double radius_max = kLaeaRadius);

//! Arithmetic mean of equally sized features.
Feature mean_of(const std::vector<const Feature*>& features);

struct MirrorPair
{
    Vec3 point;
    Vec3 mirrored;  //!< z -> -z
    QueryBreakdown at_point;
    QueryBreakdown at_mirrored;
};

MirrorPair mirror_pair_features(const Representation& rep, Vec3 p);

}  // namespace hyplane
