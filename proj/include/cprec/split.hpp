#ifndef CPREC_SPLIT_HPP
#define CPREC_SPLIT_HPP

#include <cstdint>
#include <utility>

#include "cprec/dataset.hpp"

namespace cprec {

/// Stratified train/test split: per class, a seeded shuffle then a
/// partition, so class proportions are preserved within one sample.
/// Fractions must be positive and sum to at most 1. Throws
/// TooFewSamplesError when any class has fewer than 2 samples.
std::pair<LabeledDataset, LabeledDataset> split_dataset(const LabeledDataset& data,
                                                        double train_fraction,
                                                        double test_fraction,
                                                        std::uint64_t seed);

} // namespace cprec

#endif // CPREC_SPLIT_HPP
