#include "cprec/celled_projection.hpp"

namespace cprec {

namespace {

void check_cell_count(int k, int extent, const char* axis) {
    if (k < 1)
        throw BadCellCountError(std::string("celled projection: cell count must be >= 1 for ") +
                                axis + " axis, got " + std::to_string(k));
    if (extent % k != 0)
        throw BadCellCountError(std::string("celled projection: ") + std::to_string(k) +
                                " cells do not divide " + axis + " extent " +
                                std::to_string(extent));
}

} // namespace

BitFeatureVector celled_projection_h(const BinaryImage& img, int k) {
    const int m = img.rows();
    const int n = img.cols();
    check_cell_count(k, n, "column");
    const int q = n / k; // cell width

    BitFeatureVector v(static_cast<std::size_t>(m) * static_cast<std::size_t>(k));
    for (int i = 0; i < m; ++i) {
        const std::uint8_t* row = img.row(i);
        int j = 0;
        while (j < n) {
            if (row[j]) {
                const int cell = j / q;
                v.set(static_cast<std::size_t>(cell) * m + i);
                j = (cell + 1) * q; // cell is decided; jump to the next one
            } else {
                ++j;
            }
        }
    }
    return v;
}

BitFeatureVector celled_projection_v(const BinaryImage& img, int k) {
    check_cell_count(k, img.rows(), "row");
    return celled_projection_h(transpose(img), k);
}

BitFeatureVector celled_projection_naive(const BinaryImage& img, int k,
                                         Orientation orientation) {
    const int m = img.rows();
    const int n = img.cols();
    if (orientation == Orientation::horizontal) {
        check_cell_count(k, n, "column");
        const int q = n / k;
        BitFeatureVector v(static_cast<std::size_t>(m) * static_cast<std::size_t>(k));
        for (int cell = 0; cell < k; ++cell)
            for (int i = 0; i < m; ++i) {
                bool any = false;
                for (int j = cell * q; j < (cell + 1) * q; ++j) any = any || img.at(i, j) != 0;
                if (any) v.set(static_cast<std::size_t>(cell) * m + i);
            }
        return v;
    }
    check_cell_count(k, m, "row");
    const int q = m / k;
    BitFeatureVector v(static_cast<std::size_t>(n) * static_cast<std::size_t>(k));
    for (int cell = 0; cell < k; ++cell)
        for (int j = 0; j < n; ++j) {
            bool any = false;
            for (int i = cell * q; i < (cell + 1) * q; ++i) any = any || img.at(i, j) != 0;
            if (any) v.set(static_cast<std::size_t>(cell) * n + j);
        }
    return v;
}

BitFeatureVector celled_projection(const BinaryImage& img, const CelledProjectionConfig& cfg) {
    if (cfg.k_horizontal < 0 || cfg.k_vertical < 0 ||
        cfg.k_horizontal + cfg.k_vertical < 1)
        throw BadCellCountError("celled projection: need at least one nonzero cell count");

    const std::size_t h_bits =
        cfg.k_horizontal > 0 ? static_cast<std::size_t>(img.rows()) * cfg.k_horizontal : 0;
    const std::size_t v_bits =
        cfg.k_vertical > 0 ? static_cast<std::size_t>(img.cols()) * cfg.k_vertical : 0;

    BitFeatureVector out(h_bits + v_bits);
    if (cfg.k_horizontal > 0) {
        const BitFeatureVector h = celled_projection_h(img, cfg.k_horizontal);
        for (std::size_t b = 0; b < h_bits; ++b)
            if (h.test(b)) out.set(b);
    }
    if (cfg.k_vertical > 0) {
        const BitFeatureVector v = celled_projection_v(img, cfg.k_vertical);
        for (std::size_t b = 0; b < v_bits; ++b)
            if (v.test(b)) out.set(h_bits + b);
    }
    return out;
}

} // namespace cprec
