#include "cprec/feature_matrix.hpp"

namespace cprec {

namespace {

void check_labels(const std::vector<int>& labels, std::size_t rows, int class_count) {
    if (labels.size() != rows)
        throw LengthMismatchError("feature matrix: " + std::to_string(rows) + " rows vs " +
                                  std::to_string(labels.size()) + " labels");
    if (class_count < 1) throw BadConfigError("feature matrix: class_count must be >= 1");
    for (int l : labels)
        if (l < 0 || l >= class_count)
            throw BadConfigError("feature matrix: label " + std::to_string(l) +
                                 " outside [0, " + std::to_string(class_count) + ")");
}

} // namespace

FeatureMatrix FeatureMatrix::from_real(std::vector<std::vector<double>> rows,
                                       std::vector<int> labels, int class_count) {
    check_labels(labels, rows.size(), class_count);
    FeatureMatrix m;
    m.kind_ = VectorKind::real;
    m.dim_ = rows.empty() ? 0 : rows.front().size();
    for (const auto& r : rows)
        if (r.size() != m.dim_)
            throw LengthMismatchError("feature matrix: rows have differing lengths");
    m.class_count_ = class_count;
    m.real_rows_ = std::move(rows);
    m.labels_ = std::move(labels);
    return m;
}

FeatureMatrix FeatureMatrix::from_bits(std::vector<BitFeatureVector> rows,
                                       std::vector<int> labels, int class_count) {
    check_labels(labels, rows.size(), class_count);
    FeatureMatrix m;
    m.kind_ = VectorKind::bit;
    m.dim_ = rows.empty() ? 0 : rows.front().bit_length();
    for (const auto& r : rows)
        if (r.bit_length() != m.dim_)
            throw LengthMismatchError("feature matrix: rows have differing bit lengths");
    m.class_count_ = class_count;
    m.bit_rows_ = std::move(rows);
    m.labels_ = std::move(labels);
    return m;
}

FeatureMatrix FeatureMatrix::expanded() const {
    if (!is_bit()) return *this;
    std::vector<std::vector<double>> rows;
    rows.reserve(size());
    for (const auto& r : bit_rows_) rows.push_back(r.to_real());
    return from_real(std::move(rows), labels_, class_count_);
}

} // namespace cprec
