#include "hyplane/plane.hpp"

#include <algorithm>
#include <cmath>

#include "hyplane/error.hpp"

namespace hyplane
{
namespace
{
struct Tap
{
    int i0, i1;
    double t;
};

Tap clamp_tap(double coord, int size)
{
    double c = std::clamp((coord + 1.0) * 0.5 * (size - 1), 0.0, static_cast<double>(size - 1));
    int i0 = std::min(static_cast<int>(c), size - 2);
    return {i0, i0 + 1, c - i0};
}

Tap wrap_tap(double coord, int size)
{
    double c = (std::clamp(coord, -1.0, 1.0) + 1.0) * 0.5 * size - 0.5;
    double f = std::floor(c);
    int i0 = static_cast<int>(f) % size;
    if (i0 < 0)
        i0 += size;
    return {i0, (i0 + 1) % size, c - f};
}
}  // namespace

void accumulate_bilinear(const FeatureGrid& grid, UV q, std::span<double> out, double weight, Addressing mode)
{
    Tap col = (mode == Addressing::WrapU) ? wrap_tap(q.u, grid.width()) : clamp_tap(q.u, grid.width());
    Tap row = clamp_tap(q.v, grid.height());
    const double w00 = (1 - col.t) * (1 - row.t) * weight;
    const double w01 = col.t * (1 - row.t) * weight;
    const double w10 = (1 - col.t) * row.t * weight;
    const double w11 = col.t * row.t * weight;
    auto a = grid.texel(row.i0, col.i0);
    auto b = grid.texel(row.i0, col.i1);
    auto c = grid.texel(row.i1, col.i0);
    auto d = grid.texel(row.i1, col.i1);
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] += w00 * a[k] + w01 * b[k] + w10 * c[k] + w11 * d[k];
}

Feature sample_bilinear(const FeatureGrid& grid, UV q, Addressing mode)
{
    Feature f(grid.channels(), 0.0);
    accumulate_bilinear(grid, q, f, 1.0, mode);
    return f;
}

double component(Vec3 p, Axis a)
{
    switch (a)
    {
        case Axis::X: return p.x;
        case Axis::Y: return p.y;
        case Axis::Z: return p.z;
    }
    return 0;
}

std::string_view to_string(Axis a)
{
    switch (a)
    {
        case Axis::X: return "x";
        case Axis::Y: return "y";
        case Axis::Z: return "z";
    }
    return "?";
}

PlanarPlane::PlanarPlane(Axis u, Axis v, FeatureGrid g) : u_axis(u), v_axis(v), grid(std::move(g))
{
    if (u == v)
        throw Error("planar plane axes must be distinct");
}

void accumulate_planar(const PlanarPlane& plane, Vec3 p, std::span<double> out, double weight)
{
    accumulate_bilinear(plane.grid, {component(p, plane.u_axis), component(p, plane.v_axis)}, out, weight);
}

Feature sample_planar(const PlanarPlane& plane, Vec3 p)
{
    Feature f(plane.grid.channels(), 0.0);
    accumulate_planar(plane, p, f);
    return f;
}

void accumulate_spherical(const SphericalPlane& plane, Vec3 p, std::span<double> out, double weight)
{
    SphericalDir d = cartesian_to_dir(p, plane.frame);
    Addressing mode = (plane.wrap_longitude && plane.kind == WarpKind::NaiveThetaPhi) ? Addressing::WrapU
                                                                                      : Addressing::ClampToEdge;
    accumulate_bilinear(plane.grid, plane.uv_of(d), out, weight, mode);
}

Feature sample_spherical(const SphericalPlane& plane, Vec3 p)
{
    Feature f(plane.grid.channels(), 0.0);
    accumulate_spherical(plane, p, f);
    return f;
}

}  // namespace hyplane
