#ifndef CPREC_KNN_HPP
#define CPREC_KNN_HPP

#include "cprec/feature_matrix.hpp"

namespace cprec {

enum class Metric { euclidean, hamming };

/// k-nearest-neighbour classifier. Instance-based: training stores the
/// data verbatim. The Hamming metric requires bit vectors and compares
/// packed words; on 0/1 data it ranks neighbours identically to Euclidean
/// because squared Euclidean distance equals Hamming distance there.
struct KnnModel {
    FeatureMatrix training;
    int k = 3;
    Metric metric = Metric::euclidean;
};

KnnModel knn_train(FeatureMatrix training, int k, Metric metric);

/// Majority vote among the k nearest training vectors. Distance ties at
/// the k-th rank admit the earlier-indexed sample; vote ties go to the
/// class with the smallest summed distance, then the smallest class id.
/// Distances are compared as squared Euclidean (or Hamming counts), so
/// the two metrics agree exactly on binary data.
int knn_classify(const KnnModel& model, const std::vector<double>& query);
int knn_classify(const KnnModel& model, const BitFeatureVector& query);

} // namespace cprec

#endif // CPREC_KNN_HPP
