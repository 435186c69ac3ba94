#include "cprec/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

#include "cprec/celled_projection.hpp"
#include "cprec/features.hpp"
#include "cprec/knn.hpp"

namespace cprec {

namespace {

volatile double g_sink; // keeps the measured work observable

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double median_ns_per_item(int repetitions, std::size_t items,
                          const std::function<double()>& pass) {
    std::vector<double> runs;
    runs.reserve(static_cast<std::size_t>(repetitions));
    for (int r = 0; r < repetitions; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        g_sink = pass();
        const auto t1 = std::chrono::steady_clock::now();
        runs.push_back(std::chrono::duration<double, std::nano>(t1 - t0).count() /
                       static_cast<double>(items));
    }
    return median(std::move(runs));
}

} // namespace

double bench_celled_projection_ns(const std::vector<BinaryImage>& images, int k,
                                  int repetitions) {
    if (images.empty()) return 0.0;
    return median_ns_per_item(repetitions, images.size(), [&images, k]() {
        double checksum = 0;
        for (const auto& img : images)
            checksum += static_cast<double>(celled_projection_h(img, k).popcount());
        return checksum;
    });
}

BenchReport bench_extractors(const std::vector<BinaryImage>& images, int repetitions) {
    BenchReport report;
    report.image_count = images.size();
    report.repetitions = repetitions;
    if (images.empty()) return report;
    if (repetitions < 1) throw BadConfigError("bench: repetitions must be >= 1");

    const CelledProjectionConfig cp44{4, 4};
    const std::vector<std::pair<std::string, std::function<double(const BinaryImage&)>>> jobs = {
        {"cp4h4v",
         [&cp44](const BinaryImage& i) {
             return static_cast<double>(celled_projection(i, cp44).popcount());
         }},
        {"crossings", [](const BinaryImage& i) { return crossings(i).values.front(); }},
        {"fourier", [](const BinaryImage& i) { return fourier_low(i).values.front(); }},
        {"moments", [](const BinaryImage& i) { return central_moments(i).values.front(); }},
        {"hist", [](const BinaryImage& i) { return projection_histograms(i).values.front(); }},
        {"zoning4x4", [](const BinaryImage& i) { return zoning(i, 4, 4).values.front(); }},
    };

    for (const auto& job : jobs) {
        const auto& fn = job.second;
        BenchRow row;
        row.name = job.first;
        row.ns_per_image = median_ns_per_item(repetitions, images.size(), [&images, &fn]() {
            double checksum = 0;
            for (const auto& img : images) checksum += fn(img);
            return checksum;
        });
        row.images_per_second = row.ns_per_image > 0 ? 1e9 / row.ns_per_image : 0.0;
        report.extractors.push_back(std::move(row));
    }

    // Packed Hamming vs expanded Euclidean KNN over the same bits.
    std::vector<BitFeatureVector> packed;
    packed.reserve(images.size());
    for (const auto& img : images) packed.push_back(celled_projection(img, cp44));
    std::vector<std::vector<double>> expanded;
    expanded.reserve(packed.size());
    for (const auto& v : packed) expanded.push_back(v.to_real());
    std::vector<int> labels(images.size());
    for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = static_cast<int>(i % 10);

    const KnnModel packed_model =
        knn_train(FeatureMatrix::from_bits(packed, labels, 10), 3, Metric::hamming);
    const KnnModel expanded_model =
        knn_train(FeatureMatrix::from_real(expanded, labels, 10), 3, Metric::euclidean);

    report.knn_packed_ns_per_query =
        median_ns_per_item(repetitions, packed.size(), [&packed_model, &packed]() {
            double checksum = 0;
            for (const auto& q : packed) checksum += knn_classify(packed_model, q);
            return checksum;
        });
    report.knn_expanded_ns_per_query =
        median_ns_per_item(repetitions, expanded.size(), [&expanded_model, &expanded]() {
            double checksum = 0;
            for (const auto& q : expanded) checksum += knn_classify(expanded_model, q);
            return checksum;
        });
    return report;
}

std::string bench_table(const BenchReport& report) {
    std::ostringstream out;
    out << "images: " << report.image_count << ", repetitions: " << report.repetitions
        << " (median)\n";
    char buf[128];
    for (const auto& row : report.extractors) {
        std::snprintf(buf, sizeof(buf), "%-12s %12.1f ns/image %12.0f images/s\n",
                      row.name.c_str(), row.ns_per_image, row.images_per_second);
        out << buf;
    }
    if (report.knn_packed_ns_per_query > 0.0) {
        std::snprintf(buf, sizeof(buf), "%-12s %12.1f ns/query\n", "knn-hamming",
                      report.knn_packed_ns_per_query);
        out << buf;
        std::snprintf(buf, sizeof(buf), "%-12s %12.1f ns/query\n", "knn-euclidean",
                      report.knn_expanded_ns_per_query);
        out << buf;
    }
    return out.str();
}

} // namespace cprec
