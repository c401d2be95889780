#include "hyplane/warp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hyplane/error.hpp"

namespace hyplane
{
namespace
{
constexpr double kDiscSlack = 1e-9;

double half_sqrt(double radicand)
{
    return 0.5 * std::sqrt(std::max(radicand, 0.0));
}

template<class F>
double jacobian_scale(SphericalDir d, double h, F&& map)
{
    if (!(h > 0) || h > 1e-3)
        throw Error("finite-difference step must lie in (0, 1e-3]");
    if (d.theta <= h || d.theta >= kPi - h)
        throw Error("too close to singular point");

    auto at = [&](double theta, double phi) { return map(SphericalDir{theta, wrap_angle(phi)}); };
    auto dt_plus = at(d.theta + h, d.phi);
    auto dt_minus = at(d.theta - h, d.phi);
    double dxt = (dt_plus.first - dt_minus.first) / (2 * h);
    double dyt = (dt_plus.second - dt_minus.second) / (2 * h);

    // Keep the longitude stencil on one side of the +-pi seam.
    double dxp, dyp;
    if (d.phi + h > kPi)
    {
        auto a = at(d.theta, d.phi), b = at(d.theta, d.phi - h), c = at(d.theta, d.phi - 2 * h);
        dxp = (3 * a.first - 4 * b.first + c.first) / (2 * h);
        dyp = (3 * a.second - 4 * b.second + c.second) / (2 * h);
    }
    else if (d.phi - h <= -kPi)
    {
        auto a = at(d.theta, d.phi), b = at(d.theta, d.phi + h), c = at(d.theta, d.phi + 2 * h);
        dxp = (-3 * a.first + 4 * b.first - c.first) / (2 * h);
        dyp = (-3 * a.second + 4 * b.second - c.second) / (2 * h);
    }
    else
    {
        auto plus = at(d.theta, d.phi + h), minus = at(d.theta, d.phi - h);
        dxp = (plus.first - minus.first) / (2 * h);
        dyp = (plus.second - minus.second) / (2 * h);
    }
    return std::abs(dxt * dyp - dyt * dxp) / std::sin(d.theta);
}
}  // namespace

std::string_view to_string(WarpKind kind)
{
    switch (kind)
    {
        case WarpKind::NaiveThetaPhi: return "naive";
        case WarpKind::LaeaDiscOnly: return "disc";
        case WarpKind::LaeaElliptical: return "elliptical";
    }
    return "unknown";
}

WarpKind warp_kind_from_string(std::string_view name)
{
    if (name == "naive" || name == "NaiveThetaPhi")
        return WarpKind::NaiveThetaPhi;
    if (name == "disc" || name == "LaeaDiscOnly")
        return WarpKind::LaeaDiscOnly;
    if (name == "elliptical" || name == "LaeaElliptical")
        return WarpKind::LaeaElliptical;
    throw Error("unknown warp kind '" + std::string(name) + "'");
}

PolarPoint laea_forward(SphericalDir d)
{
    PolarPoint p;
    p.radius = 2.0 * std::sin(0.5 * d.theta);
    p.azimuth = (p.radius == 0) ? 0.0 : wrap_angle(-d.phi);
    return p;
}

SphericalDir laea_inverse(PolarPoint p)
{
    if (p.radius < 0 || p.radius > kLaeaRadius * (1 + kDiscSlack))
        throw Error("outside disc");
    double half = std::min(0.5 * p.radius, 1.0);
    SphericalDir d;
    d.theta = 2.0 * std::asin(half);
    d.phi = (p.radius == 0 || half == 1.0) ? 0.0 : wrap_angle(-p.azimuth);
    return d;
}

DiscXY polar_to_xy(PolarPoint p)
{
    return {p.radius * std::cos(p.azimuth), p.radius * std::sin(p.azimuth)};
}

UV disc_to_square(DiscXY p, double disc_radius)
{
    double x = p.x / disc_radius;
    double y = p.y / disc_radius;
    double r2 = x * x + y * y;
    if (r2 > 1.0)
    {
        if (r2 > (1 + kDiscSlack) * (1 + kDiscSlack))
            throw Error("outside disc");
        double r = std::sqrt(r2);
        x /= r;
        y /= r;
    }
    const double s8x = 2.0 * std::numbers::sqrt2 * x;
    const double s8y = 2.0 * std::numbers::sqrt2 * y;
    const double xx = x * x, yy = y * y;
    double u = half_sqrt(2 + xx - yy + s8x) - half_sqrt(2 + xx - yy - s8x);
    double v = half_sqrt(2 - xx + yy + s8y) - half_sqrt(2 - xx + yy - s8y);
    return {std::clamp(u, -1.0, 1.0), std::clamp(v, -1.0, 1.0)};
}

DiscXY square_to_disc(UV q, double disc_radius)
{
    double u = std::clamp(q.u, -1.0, 1.0);
    double v = std::clamp(q.v, -1.0, 1.0);
    return {disc_radius * u * std::sqrt(1 - 0.5 * v * v), disc_radius * v * std::sqrt(1 - 0.5 * u * u)};
}

UV sphere_to_uv(SphericalDir d, WarpKind kind, double disc_radius)
{
    switch (kind)
    {
        case WarpKind::NaiveThetaPhi:
            return {d.phi / kPi, 2.0 * d.theta / kPi - 1.0};
        case WarpKind::LaeaDiscOnly:
        {
            DiscXY xy = polar_to_xy(laea_forward(d));
            double r = std::hypot(xy.x, xy.y);
            double scale = (r > disc_radius) ? 1.0 / r : 1.0 / disc_radius;
            return {xy.x * scale, xy.y * scale};
        }
        case WarpKind::LaeaElliptical:
        {
            PolarPoint pp = laea_forward(d);
            pp.radius = std::min(pp.radius, disc_radius);
            return disc_to_square(polar_to_xy(pp), disc_radius);
        }
    }
    return {};
}

SphericalDir uv_to_sphere(UV q, WarpKind kind, double disc_radius)
{
    switch (kind)
    {
        case WarpKind::NaiveThetaPhi:
        {
            double u = std::clamp(q.u, -1.0, 1.0);
            double v = std::clamp(q.v, -1.0, 1.0);
            SphericalDir d{0.5 * kPi * (v + 1.0), wrap_angle(kPi * u)};
            if (d.theta == 0 || d.theta == kPi)
                d.phi = 0;
            return d;
        }
        case WarpKind::LaeaDiscOnly:
        {
            double x = q.u * disc_radius, y = q.v * disc_radius;
            double r = std::hypot(x, y);
            if (r > disc_radius * (1 + kDiscSlack))
                throw Error("outside disc");
            return laea_inverse({std::min(r, disc_radius), std::atan2(y, x)});
        }
        case WarpKind::LaeaElliptical:
        {
            DiscXY xy = square_to_disc(q, disc_radius);
            double r = std::min(std::hypot(xy.x, xy.y), disc_radius);
            return laea_inverse({r, std::atan2(xy.y, xy.x)});
        }
    }
    return {};
}

double area_scale(SphericalDir d, WarpKind kind, double h)
{
    return jacobian_scale(d, h, [kind](SphericalDir s) {
        UV q = sphere_to_uv(s, kind);
        return std::pair{q.u, q.v};
    });
}

double laea_area_scale(SphericalDir d, double h)
{
    return jacobian_scale(d, h, [](SphericalDir s) {
        DiscXY xy = polar_to_xy(laea_forward(s));
        return std::pair{xy.x, xy.y};
    });
}

}  // namespace hyplane
