#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hyplane/repr.hpp"

namespace hyplane
{

//! Pinhole camera; pixel (0, 0) is the top-left corner.
class Camera
{
  public:
    //! Throws Error("invalid camera") if position == look_at, up is parallel to
    //! the view direction, fov is outside (0, pi) or the image is empty.
    Camera(Vec3 position, Vec3 look_at, Vec3 up, double vertical_fov, int width, int height);

    //! Camera on a horizontal circle around the origin: azimuth 0 looks from +z, pi/2 from +x.
    static Camera orbit(double azimuth, double radius, double elevation, double vertical_fov, int width,
                        int height);

    Vec3 position() const { return position_; }
    int width() const { return width_; }
    int height() const { return height_; }
    //! Unit ray direction through the centre of pixel (col, row).
    Vec3 ray_direction(int col, int row) const;

  private:
    Vec3 position_;
    Vec3 forward_, right_, up_;
    double tan_half_fov_;
    int width_, height_;
};

//! Fixed linear decoder: sigma = softplus(w_d . [f; 1]), rgb = logistic(W_c [f; 1]).
class ToyDecoder
{
  public:
    //! Draws density weights then the three colour rows (bias last in each row)
    //! from SplitMix64(seed), mapped to uniform [-1, 1] and scaled by 1/sqrt(C+1).
    static ToyDecoder from_seed(std::uint64_t seed, int channels);
    //! density has C+1 entries, color 3*(C+1) (row-major).
    static ToyDecoder from_weights(int channels, std::vector<double> density, std::vector<double> color);
    static ToyDecoder zero(int channels);

    int channels() const { return channels_; }
    const std::vector<double>& density_weights() const { return density_; }
    const std::vector<double>& color_weights() const { return color_; }

    struct Output
    {
        double sigma;
        double rgb[3];
    };
    //! Throws Error if f has the wrong length.
    Output decode(std::span<const double> f) const;

  private:
    int channels_ = 0;
    std::vector<double> density_;
    std::vector<double> color_;
};

double softplus(double x);
double logistic(double x);

struct RenderedImage
{
    int width = 0;
    int height = 0;
    std::vector<double> rgb;    //!< 3 per pixel, rows top to bottom
    std::vector<double> alpha;  //!< 1 per pixel
};

struct RayResult
{
    double rgb[3] = {0, 0, 0};
    double alpha = 0;
    double chord = 0;              //!< length of the ray inside the cube, 0 on a miss
    std::vector<double> weights;   //!< compositing weight per sample, filled on request
};

//! Entry/exit distances of a ray with [-1,1]^3 (entry clamped to 0); nullopt on a miss.
std::optional<std::pair<double, double>> intersect_unit_cube(Vec3 origin, Vec3 dir);

//! Midpoint-rule emission-absorption march with n_samples equispaced samples.
RayResult trace_ray(const Representation& rep, const ToyDecoder& dec, Vec3 origin, Vec3 dir, int n_samples,
                    bool keep_weights = false);

//! Throws Error for n_samples < 2 or a decoder/representation channel mismatch.
//! Rows are rendered in parallel (threads = 0 picks the default); output is independent of the thread count.
RenderedImage render(const Representation& rep, const Camera& cam, const ToyDecoder& dec, int n_samples,
                     unsigned threads = 0);

}  // namespace hyplane
