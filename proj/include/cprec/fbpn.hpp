#ifndef CPREC_FBPN_HPP
#define CPREC_FBPN_HPP

#include <cstdint>

#include "cprec/feature_matrix.hpp"

namespace cprec {

struct FbpnConfig {
    int hidden_count = 30;
    double learning_rate = 1.0;
    int max_epochs = 200;
    double validation_fraction = 0.2; // in [0, 0.5]
    int patience = 15;                // epochs without validation improvement
    std::uint64_t seed = 1;

    bool operator==(const FbpnConfig&) const = default;
};

/// Single-hidden-layer feed-forward network, logistic sigmoid on both
/// layers, one output neuron per class. Weight matrices are row-major:
/// w1 is hidden x input, w2 is output x hidden.
struct FbpnModel {
    int input_dim = 0;
    int hidden_count = 0;
    int output_dim = 0;
    std::vector<double> w1, b1, w2, b2;
    FbpnConfig config;

    bool operator==(const FbpnModel&) const = default;
};

/// Gradient of the mean-squared-error loss w.r.t. every weight and bias,
/// same shapes as the model.
struct FbpnGradient {
    std::vector<double> w1, b1, w2, b2;
};

struct FbpnTrainingLog {
    std::vector<double> train_loss; // per epoch, after the update
    std::vector<double> val_loss;
    int best_epoch = 0; // epoch whose weights were kept (0 = initialization)
    std::size_t train_count = 0;
    std::size_t val_count = 0;
};

/// Fresh network with all weights and biases uniform in [-0.5, 0.5] from
/// the seeded generator.
FbpnModel fbpn_init(int input_dim, int hidden_count, int output_dim, const FbpnConfig& config);

/// Output activations for one input vector.
std::vector<double> fbpn_forward(const FbpnModel& model, const std::vector<double>& input);

/// argmax over output activations; ties go to the smallest class id.
int fbpn_predict(const FbpnModel& model, const std::vector<double>& query);
int fbpn_predict(const FbpnModel& model, const BitFeatureVector& query);

/// Mean-squared-error loss against one-hot targets:
/// (1 / 2N) * sum over samples of ||output - target||^2.
double fbpn_loss(const FbpnModel& model, const FeatureMatrix& batch);

/// Analytic backpropagation gradient of fbpn_loss over the batch.
/// Throws EmptyBatchError on an empty batch.
FbpnGradient fbpn_gradient(const FbpnModel& model, const FeatureMatrix& batch);

/// Full-batch gradient descent with one-hot targets. Holds out
/// config.validation_fraction of the data (seeded shuffle) and stops when
/// validation loss has not improved for config.patience epochs, restoring
/// the best weights seen. Deterministic given config.seed.
FbpnModel fbpn_train(const FeatureMatrix& data, const FbpnConfig& config,
                     FbpnTrainingLog* log = nullptr);

} // namespace cprec

#endif // CPREC_FBPN_HPP
