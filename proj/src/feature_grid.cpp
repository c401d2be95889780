#include "hyplane/feature_grid.hpp"

#include <cmath>
#include <string>

#include "hyplane/error.hpp"

namespace hyplane
{
namespace
{
void check_shape(int height, int width, int channels)
{
    if (height < 2 || width < 2 || channels < 1)
        throw Error("feature grid needs H, W >= 2 and C >= 1 (got " + std::to_string(height) + "x"
                    + std::to_string(width) + "x" + std::to_string(channels) + ")");
}
}  // namespace

FeatureGrid::FeatureGrid(int height, int width, int channels)
    : FeatureGrid(height, width, channels,
                  std::vector<float>(static_cast<std::size_t>(std::max(height, 0)) * std::max(width, 0)
                                     * std::max(channels, 0)))
{
}

FeatureGrid::FeatureGrid(int height, int width, int channels, std::vector<float> data)
{
    check_shape(height, width, channels);
    if (data.size() != static_cast<std::size_t>(height) * width * channels)
        throw Error("feature grid data length does not match H*W*C");
    for (float v : data)
        if (!std::isfinite(v))
            throw Error("feature grid values must be finite");
    storage_ = std::make_shared<std::vector<float>>(std::move(data));
    row_stride_ = static_cast<std::size_t>(width) * channels;
    height_ = height;
    width_ = width;
    channels_ = channels;
}

void FeatureGrid::set(int row, int col, int channel, float value)
{
    if (row < 0 || row >= height_ || col < 0 || col >= width_ || channel < 0 || channel >= channels_)
        throw Error("texel index out of range");
    if (!std::isfinite(value))
        throw Error("feature grid values must be finite");
    (*storage_)[index(row, col, channel)] = value;
}

FeatureGrid FeatureGrid::window(const Rect& r) const
{
    if (r.w < 2 || r.h < 2 || r.x0 < 0 || r.y0 < 0 || r.x0 + r.w > width_ || r.y0 + r.h > height_)
        throw Error("window does not fit inside the grid");
    FeatureGrid view = *this;
    view.offset_ = index(r.y0, r.x0, 0);
    view.height_ = r.h;
    view.width_ = r.w;
    return view;
}

std::vector<float> FeatureGrid::values() const
{
    std::vector<float> out;
    out.reserve(static_cast<std::size_t>(height_) * width_ * channels_);
    for (int row = 0; row < height_; ++row)
    {
        const float* begin = storage_->data() + index(row, 0, 0);
        out.insert(out.end(), begin, begin + static_cast<std::size_t>(width_) * channels_);
    }
    return out;
}

FeatureGrid FeatureGrid::copy() const
{
    return FeatureGrid(height_, width_, channels_, values());
}

}  // namespace hyplane
