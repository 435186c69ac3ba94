#ifndef CPREC_FEATURE_MATRIX_HPP
#define CPREC_FEATURE_MATRIX_HPP

#include <vector>

#include "cprec/bitvec.hpp"

namespace cprec {

enum class VectorKind { real, bit };

/// Homogeneous set of labeled feature vectors, either real-valued or
/// bit-packed. All vectors share one length; labels lie in [0, class_count).
class FeatureMatrix {
public:
    FeatureMatrix() = default;

    static FeatureMatrix from_real(std::vector<std::vector<double>> rows,
                                   std::vector<int> labels, int class_count);
    static FeatureMatrix from_bits(std::vector<BitFeatureVector> rows, std::vector<int> labels,
                                   int class_count);

    VectorKind kind() const { return kind_; }
    bool is_bit() const { return kind_ == VectorKind::bit; }
    std::size_t size() const { return labels_.size(); }
    bool empty() const { return labels_.empty(); }
    std::size_t dim() const { return dim_; }
    int class_count() const { return class_count_; }
    const std::vector<int>& labels() const { return labels_; }
    int label(std::size_t i) const { return labels_[i]; }

    const std::vector<double>& real_row(std::size_t i) const { return real_rows_[i]; }
    const BitFeatureVector& bit_row(std::size_t i) const { return bit_rows_[i]; }

    /// Row i as a real vector; bit rows expand to 0/1 values.
    std::vector<double> row_as_real(std::size_t i) const {
        return is_bit() ? bit_rows_[i].to_real() : real_rows_[i];
    }

    /// Copy with every bit row expanded to a real 0/1 row.
    FeatureMatrix expanded() const;

    bool operator==(const FeatureMatrix&) const = default;

private:
    VectorKind kind_ = VectorKind::real;
    std::size_t dim_ = 0;
    int class_count_ = 0;
    std::vector<std::vector<double>> real_rows_;
    std::vector<BitFeatureVector> bit_rows_;
    std::vector<int> labels_;
};

} // namespace cprec

#endif // CPREC_FEATURE_MATRIX_HPP
