#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace hyplane
{

//! Texel rectangle in a parent map; x0 is the column, y0 the row (row 0 = v = -1).
struct Rect
{
    int x0 = 0;
    int y0 = 0;
    int w = 0;
    int h = 0;

    long long area() const { return static_cast<long long>(w) * h; }
    bool operator==(const Rect&) const = default;
};

//! H x W x C feature storage, row-major and channel-fastest, row 0 at v = -1.
//!
//! Copies share storage: a FeatureGrid is a handle onto (possibly a window of)
//! a shared float buffer. window() returns an aliasing sub-grid, copy() a
//! compact deep copy. Writes are single-owner; sampling concurrently is safe
//! once writers are done.
class FeatureGrid
{
  public:
    FeatureGrid() = default;
    //! Zero-filled grid. Throws Error unless height, width >= 2 and channels >= 1.
    FeatureGrid(int height, int width, int channels);
    //! Takes ownership of data (length must be height * width * channels, all finite).
    FeatureGrid(int height, int width, int channels, std::vector<float> data);

    int height() const { return height_; }
    int width() const { return width_; }
    int channels() const { return channels_; }
    bool empty() const { return !storage_; }

    float at(int row, int col, int channel) const { return storage_->data()[index(row, col, channel)]; }
    void set(int row, int col, int channel, float value);
    //! Channel vector of one texel.
    std::span<const float> texel(int row, int col) const
    {
        return {storage_->data() + index(row, col, 0), static_cast<std::size_t>(channels_)};
    }

    //! Aliasing view of a sub-rectangle; throws Error if it does not fit.
    FeatureGrid window(const Rect& r) const;
    FeatureGrid copy() const;
    //! Texels in row-major, channel-fastest order (compact, even for windows).
    std::vector<float> values() const;

    bool shares_storage_with(const FeatureGrid& other) const { return storage_ && storage_ == other.storage_; }
    //! Address of texel (0, 0) channel 0, for aliasing checks.
    const float* origin() const { return storage_->data() + offset_; }

  private:
    std::size_t index(int row, int col, int channel) const
    {
        return offset_ + static_cast<std::size_t>(row) * row_stride_ + static_cast<std::size_t>(col) * channels_
               + channel;
    }

    std::shared_ptr<std::vector<float>> storage_;
    std::size_t offset_ = 0;
    std::size_t row_stride_ = 0;
    int height_ = 0;
    int width_ = 0;
    int channels_ = 0;
};

}  // namespace hyplane
