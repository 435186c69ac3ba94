#ifndef CPREC_PNN_HPP
#define CPREC_PNN_HPP

#include "cprec/feature_matrix.hpp"

namespace cprec {

/// Probabilistic neural network: a Parzen-window density estimate per
/// class with a Gaussian kernel exp(-d^2 / (2 spread^2)). Training stores
/// the pattern layer verbatim; no iterative optimization.
///
/// Near-zero spread the classifier degenerates to 1-NN; large spreads
/// smooth over several neighbours.
struct PnnModel {
    FeatureMatrix training;
    double spread = 1.0;
};

/// Throws EmptyTrainingSetError on empty data, BadConfigError unless
/// spread > 0.
PnnModel pnn_train(FeatureMatrix training, double spread);

/// Per-class log of the summed kernel contributions, computed by
/// log-sum-exp so tiny spreads stay finite. Classes with no training
/// vectors score -infinity.
std::vector<double> pnn_log_scores(const PnnModel& model, const std::vector<double>& query);
std::vector<double> pnn_log_scores(const PnnModel& model, const BitFeatureVector& query);

/// Kernel score sums rescaled so the best class scores 1; the common
/// positive factor does not move the argmax.
std::vector<double> pnn_scores(const PnnModel& model, const std::vector<double>& query);

/// argmax of the class scores; ties go to the smallest class id.
int pnn_classify(const PnnModel& model, const std::vector<double>& query);
int pnn_classify(const PnnModel& model, const BitFeatureVector& query);

} // namespace cprec

#endif // CPREC_PNN_HPP
