#include "cprec/synth.hpp"

#include <cmath>
#include <numbers>

namespace cprec {

namespace {

bool any_neighbor(const BinaryImage& img, int r, int c) {
    return (r > 0 && img.at(r - 1, c)) || (r + 1 < img.rows() && img.at(r + 1, c)) ||
           (c > 0 && img.at(r, c - 1)) || (c + 1 < img.cols() && img.at(r, c + 1));
}

bool all_neighbors(const BinaryImage& img, int r, int c) {
    return (r == 0 || img.at(r - 1, c)) && (r + 1 == img.rows() || img.at(r + 1, c)) &&
           (c == 0 || img.at(r, c - 1)) && (c + 1 == img.cols() || img.at(r, c + 1));
}

struct Centroid {
    double r, c;
};

Centroid centroid_of(const BinaryImage& img) {
    double sr = 0, sc = 0, n = 0;
    for (int r = 0; r < img.rows(); ++r)
        for (int c = 0; c < img.cols(); ++c)
            if (img.at(r, c)) {
                sr += r;
                sc += c;
                n += 1;
            }
    if (n == 0) return {img.rows() / 2.0, img.cols() / 2.0};
    return {sr / n, sc / n};
}

} // namespace

BinaryImage dilate(const BinaryImage& img) {
    BinaryImage out = img;
    for (int r = 0; r < img.rows(); ++r)
        for (int c = 0; c < img.cols(); ++c)
            if (!img.at(r, c) && any_neighbor(img, r, c)) out.set(r, c, true);
    return out;
}

BinaryImage erode(const BinaryImage& img) {
    BinaryImage out = img;
    for (int r = 0; r < img.rows(); ++r)
        for (int c = 0; c < img.cols(); ++c)
            if (img.at(r, c) && !all_neighbors(img, r, c)) out.set(r, c, false);
    return out;
}

BinaryImage distort_sample(const BinaryImage& tmpl, const SynthConfig& cfg, Rng& rng) {
    const double angle =
        rng.uniform(-cfg.rotation_range_deg, cfg.rotation_range_deg) * std::numbers::pi / 180.0;
    const double shear = rng.uniform(-cfg.shear_range, cfg.shear_range);
    const Centroid ctr = centroid_of(tmpl);
    const double cos_a = std::cos(angle);
    const double sin_a = std::sin(angle);

    // Inverse-map each output pixel through shear then rotation about the
    // centroid and sample the template nearest-neighbor.
    BinaryImage out(tmpl.rows(), tmpl.cols());
    for (int r = 0; r < out.rows(); ++r)
        for (int c = 0; c < out.cols(); ++c) {
            const double dr = r - ctr.r;
            const double dc = (c - ctr.c) - shear * dr; // undo x-shear
            const double sr = ctr.r + (cos_a * dr + sin_a * dc);
            const double sc = ctr.c + (-sin_a * dr + cos_a * dc);
            const int ir = static_cast<int>(std::lround(sr));
            const int ic = static_cast<int>(std::lround(sc));
            if (ir >= 0 && ir < tmpl.rows() && ic >= 0 && ic < tmpl.cols())
                out.set(r, c, tmpl.at(ir, ic) != 0);
        }

    if (cfg.noise_probability > 0.0)
        for (int r = 0; r < out.rows(); ++r)
            for (int c = 0; c < out.cols(); ++c)
                if (rng.chance(cfg.noise_probability)) out.set(r, c, !out.at(r, c));

    for (int s = 0; s < cfg.morph_steps; ++s) out = dilate(out);
    for (int s = 0; s > cfg.morph_steps; --s) out = erode(out);
    return out;
}

LabeledDataset synth_generate(const std::vector<BinaryImage>& templates, const SynthConfig& cfg) {
    if (cfg.noise_probability < 0.0 || cfg.noise_probability > 0.2)
        throw BadConfigError("synth: noise probability must lie in [0, 0.2]");
    if (std::abs(cfg.rotation_range_deg) > 30.0)
        throw BadConfigError("synth: rotation range must lie within [-30, 30] degrees");
    if (cfg.samples_per_class < 0) throw BadConfigError("synth: negative samples_per_class");
    for (const auto& t : templates)
        if (t.foreground_count() == 0)
            throw EmptyImageError("synth: a class template has no foreground");

    LabeledDataset out;
    out.class_count = static_cast<int>(templates.size());
    out.name = "synthetic";
    out.samples.reserve(templates.size() * static_cast<std::size_t>(cfg.samples_per_class));

    Rng rng(mix_seed(cfg.seed, "synth"));
    for (std::size_t cls = 0; cls < templates.size(); ++cls) {
        for (int s = 0; s < cfg.samples_per_class; ++s) {
            BinaryImage sample;
            bool ok = false;
            for (int attempt = 0; attempt < 10 && !ok; ++attempt) {
                sample = distort_sample(templates[cls], cfg, rng);
                ok = sample.foreground_count() > 0;
            }
            if (!ok)
                throw EmptyImageError("synth: distortion erased class " + std::to_string(cls) +
                                      " sample after 10 attempts");
            out.samples.push_back(LabeledSample{
                normalize(sample, cfg.target_rows, cfg.target_cols), static_cast<int>(cls)});
        }
    }
    return out;
}

} // namespace cprec
