#include "cprec/knn.hpp"

#include <algorithm>
#include <limits>

namespace cprec {

KnnModel knn_train(FeatureMatrix training, int k, Metric metric) {
    if (training.empty()) throw EmptyTrainingSetError("knn: empty training set");
    if (k < 1) throw BadConfigError("knn: k must be >= 1");
    if (metric == Metric::hamming && !training.is_bit())
        throw BadConfigError("knn: Hamming metric requires bit vectors");
    if (metric == Metric::euclidean && training.is_bit())
        throw BadConfigError("knn: Euclidean metric requires real vectors (expand bits first)");
    return KnnModel{std::move(training), k, metric};
}

namespace {

int classify_by_distances(const FeatureMatrix& training, int k,
                          const std::vector<double>& dist) {
    const std::size_t n = dist.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    const std::size_t kk = std::min<std::size_t>(static_cast<std::size_t>(k), n);
    // (distance, index) ascending: equal distances admit the earlier sample.
    std::partial_sort(order.begin(), order.begin() + kk, order.end(),
                      [&](std::size_t a, std::size_t b) {
                          return dist[a] != dist[b] ? dist[a] < dist[b] : a < b;
                      });

    const int classes = training.class_count();
    std::vector<int> votes(classes, 0);
    std::vector<double> summed(classes, 0.0);
    for (std::size_t r = 0; r < kk; ++r) {
        const int label = training.label(order[r]);
        ++votes[label];
        summed[label] += dist[order[r]];
    }

    int best = -1;
    for (int c = 0; c < classes; ++c) {
        if (votes[c] == 0) continue;
        if (best < 0 || votes[c] > votes[best] ||
            (votes[c] == votes[best] && summed[c] < summed[best]))
            best = c; // equal votes and sums: c > best, keep the smaller id
    }
    return best;
}

} // namespace

int knn_classify(const KnnModel& model, const std::vector<double>& query) {
    if (model.training.empty()) throw EmptyTrainingSetError("knn: empty training set");
    if (model.training.is_bit())
        throw BadConfigError("knn: real query against a bit-vector model");
    if (query.size() != model.training.dim())
        throw LengthMismatchError("knn: query length " + std::to_string(query.size()) +
                                  " vs training dim " + std::to_string(model.training.dim()));
    std::vector<double> dist(model.training.size());
    for (std::size_t i = 0; i < dist.size(); ++i)
        dist[i] = squared_distance(model.training.real_row(i), query);
    return classify_by_distances(model.training, model.k, dist);
}

int knn_classify(const KnnModel& model, const BitFeatureVector& query) {
    if (model.training.empty()) throw EmptyTrainingSetError("knn: empty training set");
    if (!model.training.is_bit())
        throw BadConfigError("knn: bit query against a real-vector model");
    if (query.bit_length() != model.training.dim())
        throw LengthMismatchError("knn: query length " + std::to_string(query.bit_length()) +
                                  " vs training dim " + std::to_string(model.training.dim()));
    std::vector<double> dist(model.training.size());
    for (std::size_t i = 0; i < dist.size(); ++i)
        dist[i] = static_cast<double>(hamming_distance(model.training.bit_row(i), query));
    return classify_by_distances(model.training, model.k, dist);
}

} // namespace cprec
