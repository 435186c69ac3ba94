#include "cprec/fbpn.hpp"

#include <cmath>
#include <numeric>

#include "cprec/rng.hpp"

namespace cprec {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

struct Activations {
    std::vector<double> hidden;
    std::vector<double> output;
};

Activations forward(const FbpnModel& m, const std::vector<double>& x) {
    Activations a;
    a.hidden.resize(m.hidden_count);
    for (int h = 0; h < m.hidden_count; ++h) {
        double z = m.b1[h];
        const double* w = &m.w1[static_cast<std::size_t>(h) * m.input_dim];
        for (int i = 0; i < m.input_dim; ++i) z += w[i] * x[i];
        a.hidden[h] = sigmoid(z);
    }
    a.output.resize(m.output_dim);
    for (int o = 0; o < m.output_dim; ++o) {
        double z = m.b2[o];
        const double* w = &m.w2[static_cast<std::size_t>(o) * m.hidden_count];
        for (int h = 0; h < m.hidden_count; ++h) z += w[h] * a.hidden[h];
        a.output[o] = sigmoid(z);
    }
    return a;
}

void check_query(const FbpnModel& m, std::size_t len) {
    if (static_cast<int>(len) != m.input_dim)
        throw LengthMismatchError("fbpn: query length " + std::to_string(len) +
                                  " vs input dim " + std::to_string(m.input_dim));
}

// Accumulate one sample's contribution to the batch gradient.
// scale = 1/N folds the loss normalization into the output delta.
void accumulate(const FbpnModel& m, const std::vector<double>& x, int label, double scale,
                FbpnGradient& g) {
    const Activations a = forward(m, x);
    std::vector<double> delta_out(m.output_dim);
    for (int o = 0; o < m.output_dim; ++o) {
        const double y = a.output[o];
        const double t = o == label ? 1.0 : 0.0;
        delta_out[o] = scale * (y - t) * y * (1.0 - y);
    }
    std::vector<double> delta_hidden(m.hidden_count, 0.0);
    for (int o = 0; o < m.output_dim; ++o) {
        const double* w = &m.w2[static_cast<std::size_t>(o) * m.hidden_count];
        for (int h = 0; h < m.hidden_count; ++h) delta_hidden[h] += w[h] * delta_out[o];
    }
    for (int h = 0; h < m.hidden_count; ++h)
        delta_hidden[h] *= a.hidden[h] * (1.0 - a.hidden[h]);

    for (int o = 0; o < m.output_dim; ++o) {
        double* gw = &g.w2[static_cast<std::size_t>(o) * m.hidden_count];
        for (int h = 0; h < m.hidden_count; ++h) gw[h] += delta_out[o] * a.hidden[h];
        g.b2[o] += delta_out[o];
    }
    for (int h = 0; h < m.hidden_count; ++h) {
        double* gw = &g.w1[static_cast<std::size_t>(h) * m.input_dim];
        for (int i = 0; i < m.input_dim; ++i) gw[i] += delta_hidden[h] * x[i];
        g.b1[h] += delta_hidden[h];
    }
}

double loss_over(const FbpnModel& m, const FeatureMatrix& data,
                 const std::vector<std::size_t>& subset) {
    double sum = 0.0;
    for (std::size_t idx : subset) {
        const std::vector<double> x = data.row_as_real(idx);
        const Activations a = forward(m, x);
        for (int o = 0; o < m.output_dim; ++o) {
            const double t = o == data.label(idx) ? 1.0 : 0.0;
            const double e = a.output[o] - t;
            sum += e * e;
        }
    }
    return sum / (2.0 * static_cast<double>(subset.size()));
}

} // namespace

FbpnModel fbpn_init(int input_dim, int hidden_count, int output_dim, const FbpnConfig& config) {
    if (input_dim < 1 || hidden_count < 1 || output_dim < 1)
        throw BadConfigError("fbpn: dimensions must be >= 1");
    FbpnModel m;
    m.input_dim = input_dim;
    m.hidden_count = hidden_count;
    m.output_dim = output_dim;
    m.config = config;
    m.config.hidden_count = hidden_count;
    Rng rng(config.seed);
    auto fill = [&rng](std::vector<double>& v, std::size_t n) {
        v.resize(n);
        for (double& x : v) x = rng.uniform(-0.5, 0.5);
    };
    fill(m.w1, static_cast<std::size_t>(hidden_count) * input_dim);
    fill(m.b1, static_cast<std::size_t>(hidden_count));
    fill(m.w2, static_cast<std::size_t>(output_dim) * hidden_count);
    fill(m.b2, static_cast<std::size_t>(output_dim));
    return m;
}

std::vector<double> fbpn_forward(const FbpnModel& model, const std::vector<double>& input) {
    check_query(model, input.size());
    return forward(model, input).output;
}

int fbpn_predict(const FbpnModel& model, const std::vector<double>& query) {
    check_query(model, query.size());
    const std::vector<double> out = forward(model, query).output;
    int best = 0;
    for (int o = 1; o < model.output_dim; ++o)
        if (out[o] > out[best]) best = o;
    return best;
}

int fbpn_predict(const FbpnModel& model, const BitFeatureVector& query) {
    return fbpn_predict(model, query.to_real());
}

double fbpn_loss(const FbpnModel& model, const FeatureMatrix& batch) {
    if (batch.empty()) throw EmptyBatchError("fbpn: empty batch");
    std::vector<std::size_t> all(batch.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return loss_over(model, batch, all);
}

FbpnGradient fbpn_gradient(const FbpnModel& model, const FeatureMatrix& batch) {
    if (batch.empty()) throw EmptyBatchError("fbpn: empty batch");
    FbpnGradient g;
    g.w1.assign(model.w1.size(), 0.0);
    g.b1.assign(model.b1.size(), 0.0);
    g.w2.assign(model.w2.size(), 0.0);
    g.b2.assign(model.b2.size(), 0.0);
    const double scale = 1.0 / static_cast<double>(batch.size());
    for (std::size_t s = 0; s < batch.size(); ++s)
        accumulate(model, batch.row_as_real(s), batch.label(s), scale, g);
    return g;
}

FbpnModel fbpn_train(const FeatureMatrix& data, const FbpnConfig& config,
                     FbpnTrainingLog* log) {
    if (data.empty()) throw EmptyTrainingSetError("fbpn: empty training set");
    if (config.validation_fraction < 0.0 || config.validation_fraction > 0.5)
        throw BadConfigError("fbpn: validation_fraction must lie in [0, 0.5]");
    if (config.hidden_count < 1 || config.max_epochs < 0 || config.learning_rate <= 0.0 ||
        config.patience < 1)
        throw BadConfigError("fbpn: bad training configuration");

    const FeatureMatrix expanded = data.expanded();
    const std::size_t n = expanded.size();

    Rng rng(mix_seed(config.seed, "fbpn.split"));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(order);
    const std::size_t val_count =
        static_cast<std::size_t>(std::llround(config.validation_fraction * static_cast<double>(n)));
    const std::vector<std::size_t> val(order.begin(), order.begin() + val_count);
    const std::vector<std::size_t> train(order.begin() + val_count, order.end());
    if (train.empty()) throw BadConfigError("fbpn: validation holdout leaves no training data");
    if (log) {
        log->train_count = train.size();
        log->val_count = val.size();
    }

    FbpnModel model = fbpn_init(static_cast<int>(expanded.dim()), config.hidden_count,
                                expanded.class_count(), config);

    // Materialize the training part so the epoch loop can reuse the plain
    // batch gradient.
    std::vector<std::vector<double>> train_rows;
    std::vector<int> train_labels;
    train_rows.reserve(train.size());
    for (std::size_t idx : train) {
        train_rows.push_back(expanded.real_row(idx));
        train_labels.push_back(expanded.label(idx));
    }
    const FeatureMatrix train_matrix = FeatureMatrix::from_real(
        std::move(train_rows), std::move(train_labels), expanded.class_count());

    FbpnModel best = model;
    double best_val = val.empty() ? 0.0 : loss_over(model, expanded, val);
    int best_epoch = 0;
    int stale = 0;

    for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
        const FbpnGradient g = fbpn_gradient(model, train_matrix);
        const double lr = config.learning_rate;
        for (std::size_t i = 0; i < model.w1.size(); ++i) model.w1[i] -= lr * g.w1[i];
        for (std::size_t i = 0; i < model.b1.size(); ++i) model.b1[i] -= lr * g.b1[i];
        for (std::size_t i = 0; i < model.w2.size(); ++i) model.w2[i] -= lr * g.w2[i];
        for (std::size_t i = 0; i < model.b2.size(); ++i) model.b2[i] -= lr * g.b2[i];

        if (log) log->train_loss.push_back(fbpn_loss(model, train_matrix));
        if (!val.empty()) {
            const double vloss = loss_over(model, expanded, val);
            if (log) log->val_loss.push_back(vloss);
            if (vloss < best_val) {
                best_val = vloss;
                best = model;
                best_epoch = epoch;
                stale = 0;
            } else if (++stale >= config.patience) {
                break;
            }
        }
    }

    if (val.empty()) {
        best = model; // no holdout: keep the final weights
        best_epoch = config.max_epochs;
    }
    if (log) log->best_epoch = best_epoch;
    return best;
}

} // namespace cprec
