#pragma once

#include <cmath>
#include <numbers>

namespace hyplane
{

inline constexpr double kPi = std::numbers::pi;

//! World-space point or direction; the rendering volume is [-1,1]^3 with
//! +z toward the face and +y toward the top of the head.
struct Vec3
{
    double x = 0;
    double y = 0;
    double z = 0;

    constexpr Vec3 operator+(Vec3 o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(Vec3 o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr bool operator==(const Vec3&) const = default;
};

constexpr Vec3 operator*(double s, Vec3 v) { return v * s; }
constexpr double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(Vec3 a, Vec3 b)
{
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 v) { return std::sqrt(dot(v, v)); }
Vec3 normalized(Vec3 v);

//! Direction on a sphere relative to a SphereFrame.
//! theta is colatitude in [0, pi], phi is longitude in (-pi, pi]; phi is 0 at the poles.
struct SphericalDir
{
    double theta = 0;
    double phi = 0;
};

//! Point on the flattened disc: radius in [0, 2], azimuth in (-pi, pi]; azimuth is 0 at R = 0.
struct PolarPoint
{
    double radius = 0;
    double azimuth = 0;
};

//! Orientation of a spherical plane: polar axis plus the longitude-zero direction.
class SphereFrame
{
  public:
    //! Throws Error unless north is unit length and orthogonal to ref_azimuth (1e-12).
    SphereFrame(Vec3 north, Vec3 ref_azimuth);

    Vec3 north() const { return north_; }
    Vec3 ref_azimuth() const { return ref_; }
    //! Direction of phi = +pi/2 on the equator.
    Vec3 quarter_azimuth() const { return quarter_; }

    //! Same polar axis flipped; ref_azimuth is kept.
    SphereFrame antipodal() const { return SphereFrame(-north_, ref_); }

    bool operator==(const SphereFrame& o) const { return north_ == o.north_ && ref_ == o.ref_; }

  private:
    Vec3 north_;
    Vec3 ref_;
    Vec3 quarter_;
};

namespace frames
{
//! Head frame used by single-sphere planes: North = +y (top of head), phi = 0 toward the face.
SphereFrame head_up();
}  // namespace frames

//! Wraps an angle into (-pi, pi].
double wrap_angle(double a);

//! Throws Error("degenerate direction") for a zero-length p.
SphericalDir cartesian_to_dir(Vec3 p, const SphereFrame& frame);
Vec3 dir_to_cartesian(SphericalDir d, const SphereFrame& frame);

//! Great-circle distance between two unit vectors.
double angular_distance(Vec3 a, Vec3 b);

}  // namespace hyplane
