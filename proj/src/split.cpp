#include "cprec/split.hpp"

#include <cmath>

#include "cprec/rng.hpp"

namespace cprec {

std::pair<LabeledDataset, LabeledDataset> split_dataset(const LabeledDataset& data,
                                                        double train_fraction,
                                                        double test_fraction,
                                                        std::uint64_t seed) {
    if (!(train_fraction > 0.0) || !(test_fraction > 0.0) ||
        train_fraction + test_fraction > 1.0 + 1e-12)
        throw BadConfigError("split: fractions must be positive and sum to at most 1");

    std::vector<std::vector<std::size_t>> per_class(data.class_count);
    for (std::size_t i = 0; i < data.size(); ++i) {
        const int label = data.samples[i].label;
        if (label < 0 || label >= data.class_count)
            throw BadConfigError("split: label " + std::to_string(label) + " outside [0, " +
                                 std::to_string(data.class_count) + ")");
        per_class[static_cast<std::size_t>(label)].push_back(i);
    }
    for (int c = 0; c < data.class_count; ++c)
        if (per_class[static_cast<std::size_t>(c)].size() < 2)
            throw TooFewSamplesError("split: class " + std::to_string(c) +
                                     " has fewer than 2 samples");

    LabeledDataset train, test;
    train.class_count = test.class_count = data.class_count;
    train.name = data.name + "/train";
    test.name = data.name + "/test";

    Rng rng(mix_seed(seed, "split"));
    for (auto& indices : per_class) {
        rng.shuffle(indices);
        const auto total = static_cast<double>(indices.size());
        std::size_t n_train = static_cast<std::size_t>(std::llround(train_fraction * total));
        std::size_t n_test = static_cast<std::size_t>(std::llround(test_fraction * total));
        if (n_train > indices.size()) n_train = indices.size();
        if (n_train + n_test > indices.size()) n_test = indices.size() - n_train;
        for (std::size_t i = 0; i < n_train; ++i)
            train.samples.push_back(data.samples[indices[i]]);
        for (std::size_t i = 0; i < n_test; ++i)
            test.samples.push_back(data.samples[indices[n_train + i]]);
    }
    return {std::move(train), std::move(test)};
}

} // namespace cprec
