#ifndef CPREC_FEATURES_HPP
#define CPREC_FEATURES_HPP

#include <string>
#include <vector>

#include "cprec/bitvec.hpp"
#include "cprec/image.hpp"

namespace cprec {

/// Feature name plus a compact parameter token, e.g. {"cp", "kh=4,kv=4"}.
/// The parameter token must not contain whitespace; "-" means none.
struct FeatureDescriptor {
    std::string name;
    std::string params = "-";
    bool operator==(const FeatureDescriptor&) const = default;
};

/// Fixed-length vector of real-valued features.
struct RealFeatureVector {
    std::vector<double> values;
    FeatureDescriptor descriptor;
    bool operator==(const RealFeatureVector&) const = default;
};

/// Per-scanline count of background-to-foreground transitions (= strokes
/// crossed). Entries 0..m-1 are rows scanned left to right, entries
/// m..m+n-1 are columns scanned top to bottom. An implicit background
/// pixel precedes each scanline, so a line starting with ink counts one.
RealFeatureVector crossings(const BinaryImage& img);

/// Magnitudes of the 64 lowest-frequency 2-D DFT components: the centered
/// 8x8 window u,v in {-4..3} (mod image dims), row-major with (-4,-4)
/// first, so DC lands at index 36. Requires at least 8 rows and columns;
/// throws ImageTooSmallError otherwise.
RealFeatureVector fourier_low(const BinaryImage& img);

/// The fifteen translation-invariant central moments, in the order
/// mu00, mu10, mu01, mu11, mu20, mu02, mu22, mu30, mu03, mu21, mu12,
/// mu31, mu13, mu40, mu04. x is the 0-based column index, y the row index.
/// Throws EmptyImageError when the image has no foreground.
RealFeatureVector central_moments(const BinaryImage& img);

/// Hu's seven rotation invariants from scale-normalized central moments.
RealFeatureVector hu_moments(const BinaryImage& img);

/// Foreground pixel counts per row (entries 0..m-1) then per column.
RealFeatureVector projection_histograms(const BinaryImage& img);

/// Foreground density (count / zone area) for each zone of a regular
/// grid_rows x grid_cols grid, row-major. The grid must divide the image
/// dimensions exactly; throws BadGridError otherwise.
RealFeatureVector zoning(const BinaryImage& img, int grid_rows, int grid_cols);

/// Text serialization: header "<name> <params> <length>" then
/// whitespace-separated values. Reals print with max_digits10 so the
/// round trip is bit-exact; bits print as 0/1.
std::string to_text(const RealFeatureVector& v);
std::string to_text(const BitFeatureVector& v, const FeatureDescriptor& d);

RealFeatureVector parse_real_feature(const std::string& text);
BitFeatureVector parse_bit_feature(const std::string& text, FeatureDescriptor* descriptor = nullptr);

} // namespace cprec

#endif // CPREC_FEATURES_HPP
