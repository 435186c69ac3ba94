#ifndef CPREC_BITVEC_HPP
#define CPREC_BITVEC_HPP

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "cprec/errors.hpp"

namespace cprec {

/// Fixed-length binary feature vector packed into 64-bit words.
///
/// Bit b lives in word b/64 at position b%64 (little-endian within the
/// word), so serialized vectors are portable. Bits at positions >=
/// bit_length() are always zero.
class BitFeatureVector {
public:
    BitFeatureVector() = default;

    explicit BitFeatureVector(std::size_t bit_length)
        : bit_length_(bit_length), words_((bit_length + 63) / 64, 0) {}

    std::size_t bit_length() const { return bit_length_; }
    std::span<const std::uint64_t> words() const { return words_; }

    bool test(std::size_t bit) const {
        return (words_[bit >> 6] >> (bit & 63)) & 1u;
    }

    void set(std::size_t bit, bool value = true) {
        const std::uint64_t mask = std::uint64_t{1} << (bit & 63);
        if (value)
            words_[bit >> 6] |= mask;
        else
            words_[bit >> 6] &= ~mask;
    }

    std::size_t popcount() const {
        std::size_t n = 0;
        for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }

    /// Flip every bit, keeping positions past bit_length() clear.
    BitFeatureVector complement() const {
        BitFeatureVector out(bit_length_);
        for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = ~words_[i];
        out.mask_tail();
        return out;
    }

    /// Expand to a real 0/1 vector (for classifiers that need arithmetic).
    std::vector<double> to_real() const {
        std::vector<double> out(bit_length_);
        for (std::size_t b = 0; b < bit_length_; ++b) out[b] = test(b) ? 1.0 : 0.0;
        return out;
    }

    bool operator==(const BitFeatureVector&) const = default;

private:
    void mask_tail() {
        const std::size_t rem = bit_length_ & 63;
        if (rem != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << rem) - 1;
    }

    std::size_t bit_length_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Number of differing bits, word-wise XOR + population count.
/// Throws LengthMismatchError when bit lengths differ.
inline std::size_t hamming_distance(const BitFeatureVector& a, const BitFeatureVector& b) {
    if (a.bit_length() != b.bit_length())
        throw LengthMismatchError("hamming_distance: bit lengths differ (" +
                                  std::to_string(a.bit_length()) + " vs " +
                                  std::to_string(b.bit_length()) + ")");
    const auto wa = a.words();
    const auto wb = b.words();
    std::size_t sum = 0;
    for (std::size_t i = 0; i < wa.size(); ++i)
        sum += static_cast<std::size_t>(std::popcount(wa[i] ^ wb[i]));
    return sum;
}

/// Squared Euclidean distance between equal-length real vectors.
inline double squared_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw LengthMismatchError("squared_distance: vector lengths differ (" +
                                  std::to_string(a.size()) + " vs " +
                                  std::to_string(b.size()) + ")");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return sum;
}

} // namespace cprec

#endif // CPREC_BITVEC_HPP
