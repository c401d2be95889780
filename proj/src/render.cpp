#include "hyplane/render.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hyplane/error.hpp"
#include "hyplane/parallel.hpp"
#include "hyplane/splitmix64.hpp"

namespace hyplane
{

Camera::Camera(Vec3 position, Vec3 look_at, Vec3 up, double vertical_fov, int width, int height)
    : position_(position), width_(width), height_(height)
{
    if (position == look_at || !(vertical_fov > 0) || !(vertical_fov < kPi) || width < 1 || height < 1)
        throw Error("invalid camera");
    forward_ = normalized(look_at - position);
    Vec3 side = cross(forward_, up);
    if (!(norm(side) > 1e-12))
        throw Error("invalid camera");
    right_ = normalized(side);
    up_ = cross(right_, forward_);
    tan_half_fov_ = std::tan(0.5 * vertical_fov);
}

Camera Camera::orbit(double azimuth, double radius, double elevation, double vertical_fov, int width, int height)
{
    Vec3 pos{radius * std::sin(azimuth) * std::cos(elevation), radius * std::sin(elevation),
             radius * std::cos(azimuth) * std::cos(elevation)};
    return Camera(pos, {0, 0, 0}, {0, 1, 0}, vertical_fov, width, height);
}

Vec3 Camera::ray_direction(int col, int row) const
{
    double aspect = static_cast<double>(width_) / height_;
    double x = (2.0 * (col + 0.5) / width_ - 1.0) * tan_half_fov_ * aspect;
    double y = (1.0 - 2.0 * (row + 0.5) / height_) * tan_half_fov_;
    return normalized(forward_ + right_ * x + up_ * y);
}

double softplus(double x)
{
    return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

double logistic(double x)
{
    if (x >= 0)
        return 1.0 / (1.0 + std::exp(-x));
    double e = std::exp(x);
    return e / (1.0 + e);
}

ToyDecoder ToyDecoder::from_seed(std::uint64_t seed, int channels)
{
    if (channels < 1)
        throw Error("decoder needs at least one channel");
    SplitMix64 rng(seed);
    const std::size_t row = static_cast<std::size_t>(channels) + 1;
    const double scale = std::sqrt(static_cast<double>(row));
    auto draw = [&] { return (rng.uniform01() * 2.0 - 1.0) / scale; };
    std::vector<double> density(row), color(3 * row);
    for (auto& w : density)
        w = draw();
    for (auto& w : color)
        w = draw();
    return from_weights(channels, std::move(density), std::move(color));
}

ToyDecoder ToyDecoder::from_weights(int channels, std::vector<double> density, std::vector<double> color)
{
    const std::size_t row = static_cast<std::size_t>(channels) + 1;
    if (channels < 1 || density.size() != row || color.size() != 3 * row)
        throw Error("decoder weight shapes do not match the channel count");
    ToyDecoder d;
    d.channels_ = channels;
    d.density_ = std::move(density);
    d.color_ = std::move(color);
    return d;
}

ToyDecoder ToyDecoder::zero(int channels)
{
    const std::size_t row = static_cast<std::size_t>(channels) + 1;
    return from_weights(channels, std::vector<double>(row, 0.0), std::vector<double>(3 * row, 0.0));
}

ToyDecoder::Output ToyDecoder::decode(std::span<const double> f) const
{
    if (f.size() != static_cast<std::size_t>(channels_))
        throw Error("feature length does not match the decoder");
    const std::size_t row = f.size() + 1;
    auto affine = [&](const double* w) {
        double acc = w[row - 1];
        for (std::size_t k = 0; k < f.size(); ++k)
            acc += w[k] * f[k];
        return acc;
    };
    Output out;
    out.sigma = softplus(affine(density_.data()));
    for (int c = 0; c < 3; ++c)
        out.rgb[c] = logistic(affine(color_.data() + c * row));
    return out;
}

std::optional<std::pair<double, double>> intersect_unit_cube(Vec3 origin, Vec3 dir)
{
    double t_near = -std::numeric_limits<double>::infinity();
    double t_far = std::numeric_limits<double>::infinity();
    const double o[3] = {origin.x, origin.y, origin.z};
    const double d[3] = {dir.x, dir.y, dir.z};
    for (int a = 0; a < 3; ++a)
    {
        if (d[a] == 0)
        {
            if (o[a] < -1 || o[a] > 1)
                return std::nullopt;
            continue;
        }
        double t1 = (-1 - o[a]) / d[a];
        double t2 = (1 - o[a]) / d[a];
        t_near = std::max(t_near, std::min(t1, t2));
        t_far = std::min(t_far, std::max(t1, t2));
    }
    t_near = std::max(t_near, 0.0);
    if (!(t_far > t_near))
        return std::nullopt;
    return std::pair{t_near, t_far};
}

RayResult trace_ray(const Representation& rep, const ToyDecoder& dec, Vec3 origin, Vec3 dir, int n_samples,
                    bool keep_weights)
{
    RayResult out;
    auto hit = intersect_unit_cube(origin, dir);
    if (!hit)
        return out;
    const auto [t0, t1] = *hit;
    out.chord = t1 - t0;
    const double dt = out.chord / n_samples;
    const bool spherical = has_spherical_plane(rep);
    double transmittance = 1.0;
    if (keep_weights)
        out.weights.reserve(n_samples);
    for (int i = 0; i < n_samples; ++i)
    {
        Vec3 p = origin + dir * (t0 + (i + 0.5) * dt);
        // Directions are undefined at the centre; step just off it along the ray.
        if (spherical && p == Vec3{})
            p = dir * 1e-9;
        ToyDecoder::Output s = dec.decode(query(rep, p));
        double a = 1.0 - std::exp(-s.sigma * dt);
        double w = transmittance * a;
        for (int c = 0; c < 3; ++c)
            out.rgb[c] += w * s.rgb[c];
        transmittance *= 1.0 - a;
        if (keep_weights)
            out.weights.push_back(w);
    }
    out.alpha = 1.0 - transmittance;
    return out;
}

RenderedImage render(const Representation& rep, const Camera& cam, const ToyDecoder& dec, int n_samples,
                     unsigned threads)
{
    if (n_samples < 2)
        throw Error("render needs at least two samples per ray");
    if (dec.channels() != channels(rep))
        throw Error("decoder channel count does not match the representation");
    RenderedImage img;
    img.width = cam.width();
    img.height = cam.height();
    img.rgb.assign(static_cast<std::size_t>(img.width) * img.height * 3, 0.0);
    img.alpha.assign(static_cast<std::size_t>(img.width) * img.height, 0.0);
    parallel_for(
        static_cast<std::size_t>(img.height),
        [&](std::size_t row) {
            for (int col = 0; col < img.width; ++col)
            {
                RayResult r = trace_ray(rep, dec, cam.position(), cam.ray_direction(col, static_cast<int>(row)),
                                        n_samples);
                std::size_t px = row * img.width + col;
                for (int c = 0; c < 3; ++c)
                    img.rgb[3 * px + c] = std::clamp(r.rgb[c], 0.0, 1.0);
                img.alpha[px] = std::clamp(r.alpha, 0.0, 1.0);
            }
        },
        threads);
    return img;
}

}  // namespace hyplane
