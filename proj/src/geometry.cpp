#include "hyplane/geometry.hpp"

#include "hyplane/error.hpp"

namespace hyplane
{

Vec3 normalized(Vec3 v)
{
    double n = norm(v);
    if (!(n > 0))
        throw Error("degenerate direction");
    return v * (1.0 / n);
}

SphereFrame::SphereFrame(Vec3 north, Vec3 ref_azimuth) : north_(north), ref_(ref_azimuth)
{
    if (std::abs(norm(north) - 1.0) > 1e-12 || std::abs(norm(ref_azimuth) - 1.0) > 1e-12)
        throw Error("sphere frame axes must be unit vectors");
    if (std::abs(dot(north, ref_azimuth)) > 1e-12)
        throw Error("sphere frame reference azimuth must be orthogonal to the polar axis");
    // ref x north puts phi = -pi/2 at +x for the (+y north, +z ref) head frame.
    quarter_ = cross(ref_, north_);
}

namespace frames
{
SphereFrame head_up()
{
    return SphereFrame({0, 1, 0}, {0, 0, 1});
}
}  // namespace frames

double wrap_angle(double a)
{
    if (a > kPi || a <= -kPi)
    {
        a = std::remainder(a, 2 * kPi);
        if (a <= -kPi)
            a += 2 * kPi;
    }
    return a;
}

SphericalDir cartesian_to_dir(Vec3 p, const SphereFrame& frame)
{
    if (!(norm(p) > 0))
        throw Error("degenerate direction");
    double along = dot(p, frame.north());
    double e1 = dot(p, frame.ref_azimuth());
    double e2 = dot(p, frame.quarter_azimuth());
    double across = std::hypot(e1, e2);
    SphericalDir d;
    d.theta = std::atan2(across, along);
    d.phi = (across == 0) ? 0.0 : wrap_angle(std::atan2(e2, e1));
    return d;
}

Vec3 dir_to_cartesian(SphericalDir d, const SphereFrame& frame)
{
    double s = std::sin(d.theta);
    return frame.north() * std::cos(d.theta)
           + frame.ref_azimuth() * (s * std::cos(d.phi))
           + frame.quarter_azimuth() * (s * std::sin(d.phi));
}

double angular_distance(Vec3 a, Vec3 b)
{
    return std::atan2(norm(cross(a, b)), dot(a, b));
}

}  // namespace hyplane
