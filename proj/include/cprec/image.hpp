#ifndef CPREC_IMAGE_HPP
#define CPREC_IMAGE_HPP

#include <cstdint>
#include <vector>

#include "cprec/errors.hpp"

namespace cprec {

/// Grayscale image, row-major intensities in 0..255.
class GrayImage {
public:
    GrayImage() = default;
    GrayImage(int rows, int cols, std::uint8_t fill = 0)
        : rows_(rows), cols_(cols),
          pixels_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    std::uint8_t at(int r, int c) const { return pixels_[index(r, c)]; }
    std::uint8_t& at(int r, int c) { return pixels_[index(r, c)]; }

    const std::vector<std::uint8_t>& pixels() const { return pixels_; }
    std::vector<std::uint8_t>& pixels() { return pixels_; }

private:
    std::size_t index(int r, int c) const {
        return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) +
               static_cast<std::size_t>(c);
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<std::uint8_t> pixels_;
};

/// Binary image, row-major pixels in {0,1}. 1 is foreground (ink).
class BinaryImage {
public:
    BinaryImage() = default;
    BinaryImage(int rows, int cols, std::uint8_t fill = 0)
        : rows_(rows), cols_(cols),
          pixels_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    std::uint8_t at(int r, int c) const { return pixels_[index(r, c)]; }
    void set(int r, int c, bool value) { pixels_[index(r, c)] = value ? 1 : 0; }

    const std::vector<std::uint8_t>& pixels() const { return pixels_; }
    std::vector<std::uint8_t>& pixels() { return pixels_; }

    /// Pointer to the first pixel of row r.
    const std::uint8_t* row(int r) const {
        return pixels_.data() + static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_);
    }

    std::size_t foreground_count() const {
        std::size_t n = 0;
        for (std::uint8_t p : pixels_) n += p;
        return n;
    }

    bool operator==(const BinaryImage& other) const = default;

private:
    std::size_t index(int r, int c) const {
        return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) +
               static_cast<std::size_t>(c);
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<std::uint8_t> pixels_;
};

/// Inclusive bounding rectangle, 0-based row/column indices.
struct Rect {
    int top = 0;
    int left = 0;
    int bottom = 0;
    int right = 0;

    int height() const { return bottom - top + 1; }
    int width() const { return right - left + 1; }
    bool operator==(const Rect&) const = default;
};

/// Which intensity side counts as ink when thresholding.
enum class Polarity {
    dark_foreground,  // pixel = 1 iff intensity < threshold (scanned ink)
    light_foreground, // pixel = 1 iff intensity >= threshold
};

/// Threshold a grayscale image into {0,1}.
BinaryImage binarize(const GrayImage& img, int threshold,
                     Polarity polarity = Polarity::dark_foreground);

/// Minimal axis-aligned rectangle containing every foreground pixel.
/// Throws EmptyImageError when the image has no foreground.
Rect bounding_rect(const BinaryImage& img);

/// Crop to the bounding rectangle, then resample to target_rows x target_cols
/// by nearest neighbor: output (i,j) samples cropped pixel
/// (floor(i*h/target_rows), floor(j*w/target_cols)).
BinaryImage normalize(const BinaryImage& img, int target_rows, int target_cols);

BinaryImage transpose(const BinaryImage& img);

} // namespace cprec

#endif // CPREC_IMAGE_HPP
