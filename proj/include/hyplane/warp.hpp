#pragma once

#include <string_view>

#include "hyplane/geometry.hpp"

namespace hyplane
{

//! Canonical square coordinates; -1 is the left/bottom edge.
struct UV
{
    double u = 0;
    double v = 0;
};

struct DiscXY
{
    double x = 0;
    double y = 0;
};

enum class WarpKind
{
    NaiveThetaPhi,   //!< (phi/pi, 2 theta/pi - 1): seam at phi = +-pi, poles stretched to edges
    LaeaDiscOnly,    //!< equal-area disc inscribed in the square; corners unused
    LaeaElliptical,  //!< equal-area disc stretched onto the full square
};

std::string_view to_string(WarpKind kind);
//! Accepts "naive", "disc", "elliptical" as well as the enumerator names.
WarpKind warp_kind_from_string(std::string_view name);

//! Radius of the equal-area disc of the unit sphere.
inline constexpr double kLaeaRadius = 2.0;

// Lambert azimuthal equal-area flattening centred on the North Pole; the
// South Pole opens onto the R = 2 boundary and the azimuth is negated.
PolarPoint laea_forward(SphericalDir d);
//! Throws Error("outside disc") for R > 2 (beyond 1e-9 slack).
SphericalDir laea_inverse(PolarPoint p);

DiscXY polar_to_xy(PolarPoint p);

//! Elliptical grid mapping, disc of the given radius onto [-1,1]^2. Division
//! free; points within 1e-9 (relative) outside the disc are pulled onto it.
UV disc_to_square(DiscXY p, double disc_radius);
//! Inverse elliptical grid mapping; q is clamped to the closed square.
DiscXY square_to_disc(UV q, double disc_radius);

//! Composite sphere -> square map. disc_radius < 2 restricts the LAEA kinds to
//! a polar cap of disc radius disc_radius (the cap then fills the square).
UV sphere_to_uv(SphericalDir d, WarpKind kind, double disc_radius = kLaeaRadius);
//! Inverse composite. For LaeaDiscOnly, points outside the inscribed disc throw Error("outside disc").
SphericalDir uv_to_sphere(UV q, WarpKind kind, double disc_radius = kLaeaRadius);

//! Central finite-difference |det J| of sphere -> UV per unit solid angle.
//! Throws Error("too close to singular point") if theta is within h of a pole.
double area_scale(SphericalDir d, WarpKind kind, double h = 1e-5);

//! Same estimate for the LAEA flattening alone (sphere -> disc of radius 2).
double laea_area_scale(SphericalDir d, double h = 1e-5);

}  // namespace hyplane
