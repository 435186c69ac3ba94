#ifndef CPREC_CELLED_PROJECTION_HPP
#define CPREC_CELLED_PROJECTION_HPP

#include "cprec/bitvec.hpp"
#include "cprec/image.hpp"

namespace cprec {

enum class Orientation { horizontal, vertical };

/// Cell counts for the combined celled projection. A zero count disables
/// that orientation; at least one must be nonzero. k_horizontal must divide
/// the column count and k_vertical the row count of the image.
struct CelledProjectionConfig {
    int k_horizontal = 4;
    int k_vertical = 4;
};

/// Horizontal celled projection of an m x n image split into k column
/// bands ("cells") of width n/k. Bit r*m + i is set iff row i contains at
/// least one foreground pixel inside cell r.
///
/// Single pass: on the first hit inside a cell the scan jumps to the next
/// cell boundary, so each row costs at most n pixel reads and usually far
/// fewer on dense rows. Bit-exact equal to celled_projection_naive.
///
/// Throws BadCellCountError unless k >= 1 and k divides n.
BitFeatureVector celled_projection_h(const BinaryImage& img, int k);

/// Vertical counterpart: the projection of the transposed image. k must
/// divide the row count; output bit r*n + j covers column j in row band r.
BitFeatureVector celled_projection_v(const BinaryImage& img, int k);

/// Reference evaluation of the defining formula: an unconditional OR over
/// every pixel of every cell, no skipping. Kept as the oracle the fast
/// path is tested against; do not "optimize" it.
BitFeatureVector celled_projection_naive(const BinaryImage& img, int k,
                                         Orientation orientation);

/// Combined feature: horizontal projection bits first, then vertical.
/// Length = rows*k_horizontal + cols*k_vertical.
BitFeatureVector celled_projection(const BinaryImage& img, const CelledProjectionConfig& cfg);

} // namespace cprec

#endif // CPREC_CELLED_PROJECTION_HPP
