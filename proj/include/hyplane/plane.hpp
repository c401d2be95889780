#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "hyplane/feature_grid.hpp"
#include "hyplane/geometry.hpp"
#include "hyplane/warp.hpp"

namespace hyplane
{

using Feature = std::vector<double>;

//! Default per-plane feature width.
inline constexpr int kDefaultChannels = 32;

enum class Addressing
{
    ClampToEdge,  //!< align-corners texel centres, edges clamped
    WrapU,        //!< u periodic with period W (longitude wrap for theta/phi maps)
};

//! Adds weight * bilinear(grid, q) into out (out.size() == channels).
//! Clamp mode: col = (u+1)/2 (W-1), row = (v+1)/2 (H-1), out-of-range coordinates clamped.
void accumulate_bilinear(const FeatureGrid& grid, UV q, std::span<double> out, double weight = 1.0,
                         Addressing mode = Addressing::ClampToEdge);
Feature sample_bilinear(const FeatureGrid& grid, UV q, Addressing mode = Addressing::ClampToEdge);

enum class Axis
{
    X,
    Y,
    Z
};

double component(Vec3 p, Axis a);
std::string_view to_string(Axis a);

//! Plane queried by orthogonal projection: u = p[u_axis], v = p[v_axis].
struct PlanarPlane
{
    Axis u_axis;
    Axis v_axis;
    FeatureGrid grid;

    //! Throws Error if the axes coincide.
    PlanarPlane(Axis u, Axis v, FeatureGrid g);
};

void accumulate_planar(const PlanarPlane& plane, Vec3 p, std::span<double> out, double weight = 1.0);
Feature sample_planar(const PlanarPlane& plane, Vec3 p);

//! Plane queried by direction only. A disc_radius below 2 makes the plane a
//! polar cap around the frame's North Pole (LAEA kinds only).
struct SphericalPlane
{
    SphereFrame frame;
    WarpKind kind = WarpKind::LaeaElliptical;
    FeatureGrid grid;
    double disc_radius = kLaeaRadius;
    bool wrap_longitude = false;  //!< NaiveThetaPhi only: periodic u instead of clamp

    bool is_cap() const { return disc_radius < kLaeaRadius; }
    UV uv_of(SphericalDir d) const { return sphere_to_uv(d, kind, disc_radius); }
};

//! Throws Error("degenerate direction") for p = 0.
void accumulate_spherical(const SphericalPlane& plane, Vec3 p, std::span<double> out, double weight = 1.0);
Feature sample_spherical(const SphericalPlane& plane, Vec3 p);

}  // namespace hyplane
