#ifndef CPREC_BENCH_HPP
#define CPREC_BENCH_HPP

#include <string>
#include <vector>

#include "cprec/image.hpp"

namespace cprec {

struct BenchRow {
    std::string name;
    double ns_per_image = 0.0;
    double images_per_second = 0.0;
};

struct BenchReport {
    std::size_t image_count = 0;
    int repetitions = 0;
    std::vector<BenchRow> extractors;
    /// Median per-query latency of a KNN scan over all images: packed
    /// celled-projection words under Hamming vs the same bits expanded to
    /// reals under Euclidean.
    double knn_packed_ns_per_query = 0.0;
    double knn_expanded_ns_per_query = 0.0;
};

/// Median-of-repetitions throughput for every extractor plus the
/// packed-vs-expanded KNN comparison. Images must share dimensions
/// divisible by 4 (the celled-projection and zoning configs used here).
/// Empty input gives an empty report.
BenchReport bench_extractors(const std::vector<BinaryImage>& images, int repetitions);

/// Median ns/image for one celled-projection pass over the images,
/// repeated `repetitions` times.
double bench_celled_projection_ns(const std::vector<BinaryImage>& images, int k,
                                  int repetitions);

std::string bench_table(const BenchReport& report);

} // namespace cprec

#endif // CPREC_BENCH_HPP
