#include "cprec/image.hpp"

#include <algorithm>

namespace cprec {

BinaryImage binarize(const GrayImage& img, int threshold, Polarity polarity) {
    BinaryImage out(img.rows(), img.cols());
    const auto& src = img.pixels();
    auto& dst = out.pixels();
    for (std::size_t i = 0; i < src.size(); ++i) {
        const bool dark = src[i] < threshold;
        dst[i] = (polarity == Polarity::dark_foreground) == dark ? 1 : 0;
    }
    return out;
}

Rect bounding_rect(const BinaryImage& img) {
    int top = img.rows(), bottom = -1, left = img.cols(), right = -1;
    for (int r = 0; r < img.rows(); ++r) {
        const std::uint8_t* row = img.row(r);
        for (int c = 0; c < img.cols(); ++c) {
            if (!row[c]) continue;
            top = std::min(top, r);
            bottom = std::max(bottom, r);
            left = std::min(left, c);
            right = std::max(right, c);
        }
    }
    if (bottom < 0) throw EmptyImageError("bounding_rect: image has no foreground pixel");
    return Rect{top, left, bottom, right};
}

BinaryImage normalize(const BinaryImage& img, int target_rows, int target_cols) {
    if (target_rows < 1 || target_cols < 1)
        throw BadConfigError("normalize: target dimensions must be positive");
    const Rect box = bounding_rect(img);
    const int h = box.height();
    const int w = box.width();

    BinaryImage out(target_rows, target_cols);
    for (int i = 0; i < target_rows; ++i) {
        const int sr = box.top + static_cast<int>(static_cast<std::int64_t>(i) * h / target_rows);
        for (int j = 0; j < target_cols; ++j) {
            const int sc =
                box.left + static_cast<int>(static_cast<std::int64_t>(j) * w / target_cols);
            out.set(i, j, img.at(sr, sc) != 0);
        }
    }
    // Nearest-neighbor downsampling can step over every foreground pixel;
    // downstream features require at least one, so reject such outputs.
    if (out.foreground_count() == 0)
        throw EmptyImageError("normalize: resampling produced an empty image");
    return out;
}

BinaryImage transpose(const BinaryImage& img) {
    BinaryImage out(img.cols(), img.rows());
    for (int r = 0; r < img.rows(); ++r)
        for (int c = 0; c < img.cols(); ++c)
            out.set(c, r, img.at(r, c) != 0);
    return out;
}

} // namespace cprec
