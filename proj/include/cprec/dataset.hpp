#ifndef CPREC_DATASET_HPP
#define CPREC_DATASET_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "cprec/image.hpp"

namespace cprec {

struct LabeledSample {
    BinaryImage image;
    int label = 0;
};

/// Ordered collection of labeled binary images.
struct LabeledDataset {
    std::vector<LabeledSample> samples;
    int class_count = 10;
    std::string name;

    std::size_t size() const { return samples.size(); }
    bool empty() const { return samples.empty(); }
};

/// Plain PBM ("P1"): whitespace-separated bits, '#' comments allowed.
/// Throws ParseError (with byte offset) or DimensionMismatchError.
BinaryImage load_pbm(const std::filesystem::path& path);
BinaryImage parse_pbm(const std::string& text);

void save_pbm(const BinaryImage& img, const std::filesystem::path& path);
std::string pbm_text(const BinaryImage& img);

/// IDX ubyte pair (big-endian, magics 0x00000803 / 0x00000801).
/// Grayscale records are thresholded on load.
LabeledDataset load_idx_pair(const std::filesystem::path& images_path,
                             const std::filesystem::path& labels_path, int threshold,
                             Polarity polarity = Polarity::dark_foreground);

void save_idx_pair(const LabeledDataset& data, const std::filesystem::path& images_path,
                   const std::filesystem::path& labels_path);

/// Manifest: comma-delimited `filename,label` rows, no header, paths
/// resolved relative to `dir`. Images are loaded as-is (no normalization).
LabeledDataset load_manifest(const std::filesystem::path& dir,
                             const std::filesystem::path& manifest_path);

/// Write dataset as numbered PBM files plus manifest.csv under `dir`.
void save_manifest_dir(const LabeledDataset& data, const std::filesystem::path& dir);

} // namespace cprec

#endif // CPREC_DATASET_HPP
