#include "doctest.h"

#include <cmath>

#include "cprec/fbpn.hpp"
#include "cprec/model_io.hpp"
#include "test_support.hpp"

using namespace cprec;

namespace {

FeatureMatrix xor_data() {
    return FeatureMatrix::from_real({{0, 0}, {0, 1}, {1, 0}, {1, 1}}, {0, 1, 1, 0}, 2);
}

FbpnConfig xor_config() {
    FbpnConfig cfg;
    cfg.hidden_count = 4;
    cfg.learning_rate = 2.0;
    cfg.max_epochs = 5000;
    cfg.validation_fraction = 0.0;
    cfg.patience = 1 << 20;
    cfg.seed = 1;
    return cfg;
}

FeatureMatrix random_batch(Rng& rng, int n, int dim, int classes) {
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    for (int i = 0; i < n; ++i) {
        std::vector<double> row(static_cast<std::size_t>(dim));
        for (auto& v : row) v = rng.uniform(-1, 1);
        rows.push_back(std::move(row));
        labels.push_back(static_cast<int>(rng.bounded(static_cast<std::uint64_t>(classes))));
    }
    return FeatureMatrix::from_real(std::move(rows), std::move(labels), classes);
}

// Maximum relative error between the analytic gradient and central finite
// differences of the loss, step 1e-5.
double gradient_check(FbpnModel model, const FeatureMatrix& batch) {
    const FbpnGradient g = fbpn_gradient(model, batch);
    const double h = 1e-5;
    double worst = 0.0;
    auto probe = [&](std::vector<double> FbpnModel::* member, const std::vector<double>& analytic) {
        for (std::size_t i = 0; i < analytic.size(); ++i) {
            double& w = (model.*member)[i];
            const double saved = w;
            w = saved + h;
            const double up = fbpn_loss(model, batch);
            w = saved - h;
            const double down = fbpn_loss(model, batch);
            w = saved;
            const double numeric = (up - down) / (2 * h);
            const double denom = std::max({std::abs(numeric), std::abs(analytic[i]), 1e-6});
            worst = std::max(worst, std::abs(numeric - analytic[i]) / denom);
        }
    };
    probe(&FbpnModel::w1, g.w1);
    probe(&FbpnModel::b1, g.b1);
    probe(&FbpnModel::w2, g.w2);
    probe(&FbpnModel::b2, g.b2);
    return worst;
}

} // namespace

TEST_CASE("analytic gradient matches finite differences") {
    Rng rng(301);
    for (int trial = 0; trial < 20; ++trial) {
        const int dim = 1 + static_cast<int>(rng.bounded(10));
        const int hidden = 1 + static_cast<int>(rng.bounded(8));
        const int classes = 2 + static_cast<int>(rng.bounded(3));
        const int batch_size = 1 + static_cast<int>(rng.bounded(8));
        FbpnConfig cfg;
        cfg.hidden_count = hidden;
        cfg.seed = rng.next_u64();
        const FbpnModel model = fbpn_init(dim, hidden, classes, cfg);
        const FeatureMatrix batch = random_batch(rng, batch_size, dim, classes);
        CHECK(gradient_check(model, batch) < 1e-4);
    }
}

TEST_CASE("gradient edge cases") {
    SUBCASE("zero weights stay finite") {
        FbpnConfig cfg;
        cfg.hidden_count = 3;
        FbpnModel m = fbpn_init(4, 3, 2, cfg);
        std::fill(m.w1.begin(), m.w1.end(), 0.0);
        std::fill(m.b1.begin(), m.b1.end(), 0.0);
        std::fill(m.w2.begin(), m.w2.end(), 0.0);
        std::fill(m.b2.begin(), m.b2.end(), 0.0);
        Rng rng(5);
        const FbpnGradient g = fbpn_gradient(m, random_batch(rng, 4, 4, 2));
        for (double v : g.w1) CHECK(std::isfinite(v));
        for (double v : g.w2) CHECK(std::isfinite(v));
    }

    SUBCASE("an exactly-one-hot output yields a zero gradient") {
        FbpnConfig cfg;
        cfg.hidden_count = 2;
        FbpnModel m = fbpn_init(2, 2, 3, cfg);
        std::fill(m.w2.begin(), m.w2.end(), 0.0);
        // Saturate the outputs hard enough that the sigmoid rounds to
        // exactly 1 and 0 in double precision.
        m.b2 = {800.0, -800.0, -800.0};
        const FeatureMatrix batch =
            FeatureMatrix::from_real({{0.3, -0.7}}, {0}, 3);
        const std::vector<double> out = fbpn_forward(m, {0.3, -0.7});
        CHECK(out == std::vector<double>{1.0, 0.0, 0.0});
        const FbpnGradient g = fbpn_gradient(m, batch);
        for (double v : g.w1) CHECK(v == 0.0);
        for (double v : g.b1) CHECK(v == 0.0);
        for (double v : g.w2) CHECK(v == 0.0);
        for (double v : g.b2) CHECK(v == 0.0);
    }

    SUBCASE("empty batch is rejected") {
        FbpnConfig cfg;
        const FbpnModel m = fbpn_init(2, 2, 2, cfg);
        CHECK_THROWS_AS(fbpn_gradient(m, FeatureMatrix{}), EmptyBatchError);
        CHECK_THROWS_AS(fbpn_loss(m, FeatureMatrix{}), EmptyBatchError);
    }
}

TEST_CASE("fbpn_train solves XOR") {
    FbpnTrainingLog log;
    const FbpnModel m = fbpn_train(xor_data(), xor_config(), &log);
    const FeatureMatrix data = xor_data();
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(fbpn_predict(m, data.real_row(i)) == data.label(i));
    CHECK(log.train_loss.size() <= 5000);
}

TEST_CASE("full-batch descent with a small rate never increases the loss") {
    FbpnConfig cfg = xor_config();
    cfg.learning_rate = 0.01;
    cfg.max_epochs = 400;
    FbpnTrainingLog log;
    fbpn_train(xor_data(), cfg, &log);
    REQUIRE(log.train_loss.size() == 400);
    for (std::size_t e = 1; e < log.train_loss.size(); ++e)
        CHECK(log.train_loss[e] <= log.train_loss[e - 1]);
}

TEST_CASE("training mechanics") {
    SUBCASE("validation holdout is exact") {
        Rng rng(88);
        const FeatureMatrix data = random_batch(rng, 100, 3, 4);
        FbpnConfig cfg;
        cfg.hidden_count = 3;
        cfg.max_epochs = 5;
        cfg.validation_fraction = 0.2;
        cfg.seed = 7;
        FbpnTrainingLog log;
        fbpn_train(data, cfg, &log);
        CHECK(log.train_count == 80);
        CHECK(log.val_count == 20);
        CHECK(log.val_loss.size() == 5);
    }

    SUBCASE("zero epochs returns the initialization") {
        Rng rng(89);
        const FeatureMatrix data = random_batch(rng, 10, 3, 2);
        FbpnConfig cfg;
        cfg.hidden_count = 4;
        cfg.max_epochs = 0;
        cfg.seed = 11;
        const FbpnModel trained = fbpn_train(data, cfg);
        const FbpnModel init = fbpn_init(3, 4, 2, cfg);
        CHECK(trained.w1 == init.w1);
        CHECK(trained.b1 == init.b1);
        CHECK(trained.w2 == init.w2);
        CHECK(trained.b2 == init.b2);
    }

    SUBCASE("training is deterministic given the seed") {
        Rng rng(90);
        const FeatureMatrix data = random_batch(rng, 30, 4, 3);
        FbpnConfig cfg;
        cfg.hidden_count = 5;
        cfg.max_epochs = 20;
        cfg.seed = 42;
        const FbpnModel a = fbpn_train(data, cfg);
        const FbpnModel b = fbpn_train(data, cfg);
        CHECK(a.w1 == b.w1);
        CHECK(a.w2 == b.w2);
    }

    SUBCASE("bad configurations are rejected") {
        Rng rng(91);
        const FeatureMatrix data = random_batch(rng, 10, 2, 2);
        FbpnConfig cfg;
        cfg.validation_fraction = 0.6;
        CHECK_THROWS_AS(fbpn_train(data, cfg), BadConfigError);
        CHECK_THROWS_AS(fbpn_train(FeatureMatrix{}, FbpnConfig{}), EmptyTrainingSetError);
    }
}

TEST_CASE("prediction details") {
    SUBCASE("hand-saturated output wins for any input") {
        FbpnConfig cfg;
        cfg.hidden_count = 2;
        FbpnModel m = fbpn_init(3, 2, 4, cfg);
        std::fill(m.w2.begin(), m.w2.end(), 0.0);
        m.b2 = {50.0, -50.0, -50.0, -50.0};
        Rng rng(14);
        for (int i = 0; i < 10; ++i)
            CHECK(fbpn_predict(m, {rng.unit(), rng.unit(), rng.unit()}) == 0);
    }

    SUBCASE("prediction is deterministic") {
        const FbpnModel m = fbpn_train(xor_data(), xor_config());
        CHECK(fbpn_predict(m, {0.0, 1.0}) == fbpn_predict(m, {0.0, 1.0}));
    }

    SUBCASE("length mismatch is rejected") {
        FbpnConfig cfg;
        const FbpnModel m = fbpn_init(3, 2, 2, cfg);
        CHECK_THROWS_AS(fbpn_predict(m, std::vector<double>{1.0}), LengthMismatchError);
    }
}

TEST_CASE("model text round trips preserve predictions") {
    const FbpnModel m = fbpn_train(xor_data(), xor_config());
    const FbpnModel back = parse_fbpn_model(to_text(m));
    CHECK(back.w1 == m.w1);
    CHECK(back.b2 == m.b2);
    const FeatureMatrix data = xor_data();
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(fbpn_predict(back, data.real_row(i)) == fbpn_predict(m, data.real_row(i)));
}
