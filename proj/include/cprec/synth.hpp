#ifndef CPREC_SYNTH_HPP
#define CPREC_SYNTH_HPP

#include <cstdint>

#include "cprec/dataset.hpp"
#include "cprec/rng.hpp"

namespace cprec {

/// Distortion recipe for the synthetic glyph generator. Each sample takes
/// a class template through rotation, shear, pixel-flip noise and an
/// optional morphology pass, then bounding-rectangle normalization.
struct SynthConfig {
    std::uint64_t seed = 1;
    int samples_per_class = 100;
    double rotation_range_deg = 15.0; // uniform angle in [-range, +range]
    double shear_range = 0.15;        // uniform x-shear factor in [-range, +range]
    double noise_probability = 0.03;  // independent per-pixel flips, <= 0.2
    int morph_steps = 0;              // >0 dilate that many times, <0 erode
    int target_rows = 16;
    int target_cols = 16;
};

BinaryImage dilate(const BinaryImage& img);
BinaryImage erode(const BinaryImage& img);

/// One distorted copy of a template, in the template's own frame (pixels
/// rotated or sheared past the border are dropped). Noise flips each of
/// the frame's pixels independently. Not yet normalized.
BinaryImage distort_sample(const BinaryImage& tmpl, const SynthConfig& cfg, Rng& rng);

/// Dataset of cfg.samples_per_class distorted copies of each template,
/// grouped by class in template order and normalized to the target size.
/// Templates must be one per class and nonempty. A distortion that erases
/// every foreground pixel is redrawn up to 10 times, then raises
/// EmptyImageError. Deterministic given cfg.seed.
LabeledDataset synth_generate(const std::vector<BinaryImage>& templates, const SynthConfig& cfg);

} // namespace cprec

#endif // CPREC_SYNTH_HPP
