#include "cprec/pnn.hpp"

#include <cmath>
#include <limits>

namespace cprec {

PnnModel pnn_train(FeatureMatrix training, double spread) {
    if (training.empty()) throw EmptyTrainingSetError("pnn: empty training set");
    if (!(spread > 0.0)) throw BadConfigError("pnn: spread must be > 0");
    return PnnModel{std::move(training), spread};
}

namespace {

// log sum_i exp(t_i) per class, shifted by the per-class max so extreme
// exponents (tiny spreads) cannot overflow or flush every score to zero.
std::vector<double> log_scores_from_sq(const PnnModel& model,
                                       const std::vector<double>& sq_dist) {
    const int classes = model.training.class_count();
    const double inv = 1.0 / (2.0 * model.spread * model.spread);
    const double ninf = -std::numeric_limits<double>::infinity();

    std::vector<double> peak(classes, ninf);
    for (std::size_t i = 0; i < sq_dist.size(); ++i) {
        const double t = -sq_dist[i] * inv;
        const int c = model.training.label(i);
        if (t > peak[c]) peak[c] = t;
    }
    std::vector<double> sums(classes, 0.0);
    for (std::size_t i = 0; i < sq_dist.size(); ++i) {
        const int c = model.training.label(i);
        sums[c] += std::exp(-sq_dist[i] * inv - peak[c]);
    }
    std::vector<double> out(classes, ninf);
    for (int c = 0; c < classes; ++c)
        if (sums[c] > 0.0) out[c] = peak[c] + std::log(sums[c]);
    return out;
}

std::vector<double> squared_dists(const PnnModel& model, const std::vector<double>& query) {
    if (model.training.is_bit())
        throw BadConfigError("pnn: real query against a bit-vector model");
    if (query.size() != model.training.dim())
        throw LengthMismatchError("pnn: query length " + std::to_string(query.size()) +
                                  " vs training dim " + std::to_string(model.training.dim()));
    std::vector<double> d(model.training.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        d[i] = squared_distance(model.training.real_row(i), query);
    return d;
}

std::vector<double> squared_dists(const PnnModel& model, const BitFeatureVector& query) {
    if (!model.training.is_bit())
        throw BadConfigError("pnn: bit query against a real-vector model");
    if (query.bit_length() != model.training.dim())
        throw LengthMismatchError("pnn: query length " + std::to_string(query.bit_length()) +
                                  " vs training dim " + std::to_string(model.training.dim()));
    // On 0/1 vectors the squared Euclidean distance is the Hamming distance.
    std::vector<double> d(model.training.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        d[i] = static_cast<double>(hamming_distance(model.training.bit_row(i), query));
    return d;
}

int argmax_smallest(const std::vector<double>& scores) {
    int best = 0;
    for (int c = 1; c < static_cast<int>(scores.size()); ++c)
        if (scores[c] > scores[best]) best = c;
    return best;
}

} // namespace

std::vector<double> pnn_log_scores(const PnnModel& model, const std::vector<double>& query) {
    return log_scores_from_sq(model, squared_dists(model, query));
}

std::vector<double> pnn_log_scores(const PnnModel& model, const BitFeatureVector& query) {
    return log_scores_from_sq(model, squared_dists(model, query));
}

std::vector<double> pnn_scores(const PnnModel& model, const std::vector<double>& query) {
    std::vector<double> logs = pnn_log_scores(model, query);
    const double top = logs[static_cast<std::size_t>(argmax_smallest(logs))];
    std::vector<double> out(logs.size());
    for (std::size_t c = 0; c < logs.size(); ++c) out[c] = std::exp(logs[c] - top);
    return out;
}

int pnn_classify(const PnnModel& model, const std::vector<double>& query) {
    return argmax_smallest(pnn_log_scores(model, query));
}

int pnn_classify(const PnnModel& model, const BitFeatureVector& query) {
    return argmax_smallest(pnn_log_scores(model, query));
}

} // namespace cprec
