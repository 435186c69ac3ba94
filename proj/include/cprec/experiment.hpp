#ifndef CPREC_EXPERIMENT_HPP
#define CPREC_EXPERIMENT_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cprec/dataset.hpp"
#include "cprec/fbpn.hpp"
#include "cprec/feature_matrix.hpp"
#include "cprec/synth.hpp"

namespace cprec {

/// One feature extractor plus its parameters.
struct FeatureConfig {
    enum class Kind { celled_projection, crossings, fourier, moments, hu, histograms, zoning };
    Kind kind = Kind::celled_projection;
    int cp_kh = 4;
    int cp_kv = 4;
    int zone_rows = 4;
    int zone_cols = 4;

    static FeatureConfig cp(int kh, int kv);
    static FeatureConfig plain(Kind kind);
    static FeatureConfig zoning_grid(int rows, int cols);

    /// Stable short identifier, e.g. "cp4h4v", "crossings", "zoning4x4".
    std::string id() const;
    /// Parameter token for reports, e.g. "kh=4,kv=4" or "-".
    std::string params() const;
    bool is_bit() const { return kind == Kind::celled_projection; }

    bool operator==(const FeatureConfig&) const = default;
};

/// Extract this feature from every sample; bit features stay packed.
/// Samples must share identical dimensions.
FeatureMatrix extract_features(const LabeledDataset& data, const FeatureConfig& cfg);

/// One classifier plus its parameters.
struct ClassifierConfig {
    enum class Kind { knn, pnn, fbpn };
    Kind kind = Kind::knn;
    int knn_k = 3;
    double pnn_spread = 1.0;
    FbpnConfig fbpn;

    static ClassifierConfig knn(int k);
    static ClassifierConfig pnn(double spread);
    static ClassifierConfig fbpn_with(int hidden, const FbpnConfig& base);

    std::string id() const;     // "knn" / "pnn" / "fbpn"
    std::string params() const; // "k=3" / "spread=1.5" / "hidden=30"
};

/// Prediction-vs-truth counts; rows are true classes, columns predictions.
struct ConfusionMatrix {
    int classes = 0;
    std::vector<long long> counts; // row-major classes x classes

    long long& at(int truth, int predicted) {
        return counts[static_cast<std::size_t>(truth) * classes + predicted];
    }
    long long at(int truth, int predicted) const {
        return counts[static_cast<std::size_t>(truth) * classes + predicted];
    }
    long long trace() const;
    long long total() const;
    /// trace / total * 100; 0 when empty.
    double accuracy_pct() const;
};

/// One grid cell: a (feature, classifier) evaluation outcome.
struct CellResult {
    std::string feature_id;
    std::string feature_params;
    std::string classifier_id;
    std::string classifier_params; // winning parameter for subrange cells
    std::string subrange_label;    // e.g. "3" or "0.25-1"; "-" outside grids
    ConfusionMatrix confusion;
    double seconds = 0.0;

    double accuracy_pct() const { return confusion.accuracy_pct(); }
};

/// Extract features from train and test, fit the classifier, predict every
/// test sample. Train and test must be nonempty with matching dimensions.
CellResult evaluate(const LabeledDataset& train, const LabeledDataset& test,
                    const FeatureConfig& feature, const ClassifierConfig& classifier);

/// A parameter subrange evaluated as one grid cell reporting its best value.
struct Subrange {
    std::string label;          // whitespace-free, e.g. "0.25-1"
    std::vector<double> values; // tried in order; best accuracy wins
};

struct ExperimentSpec {
    enum class Source { synth, manifest, idx };
    Source source = Source::synth;

    // synth source
    std::string templates_dir;
    SynthConfig synth; // seed is overridden by the spec seed

    // manifest source
    std::string dataset_dir;
    std::string manifest_file = "manifest.csv";

    // idx source
    std::string idx_images;
    std::string idx_labels;
    int idx_threshold = 128;
    Polarity idx_polarity = Polarity::dark_foreground;

    int normalize_rows = 16;
    int normalize_cols = 16;

    double train_fraction = 0.666667;
    double test_fraction = 0.333333;
    std::uint64_t seed = 42;
    int jobs = 0; // 0 = hardware concurrency

    std::vector<FeatureConfig> features;
    bool knn_enabled = true;
    bool pnn_enabled = true;
    bool fbpn_enabled = true;
    std::vector<Subrange> knn_subranges;
    std::vector<Subrange> pnn_subranges;
    std::vector<Subrange> fbpn_subranges;
    FbpnConfig fbpn_base;

    std::filesystem::path cache_dir; // empty disables the cell cache
};

/// The full grid: every feature row, k in {3,5,7}, the three spread
/// subranges and the three hidden-count subranges.
ExperimentSpec default_spec();

/// Plain `key = value` text with [section] headers; unknown keys are
/// rejected. Values not present keep their default_spec() values.
ExperimentSpec parse_spec_file(const std::filesystem::path& path);
ExperimentSpec parse_spec_text(const std::string& text);

/// Canonical dump of every field that affects results; its hash keys the
/// cell cache.
std::string canonical_text(const ExperimentSpec& spec);
std::uint64_t spec_hash(const ExperimentSpec& spec);

/// Build the dataset a spec describes (generate or load + normalize).
LabeledDataset load_spec_dataset(const ExperimentSpec& spec);

struct ExperimentReport {
    std::string dataset_name;
    std::size_t train_size = 0;
    std::size_t test_size = 0;
    int class_count = 0;
    std::uint64_t seed = 0;
    std::vector<CellResult> cells; // canonical order: feature-major
};

/// Evaluate every enabled (feature x classifier-subrange) cell, running up
/// to spec.jobs cells concurrently. Results are deterministic for a given
/// spec and seed at any parallelism; completed cells are cached under
/// cache_dir/<spec-hash>/<cell-id>.csv and replayed on rerun.
ExperimentReport run_grid(const ExperimentSpec& spec);

/// Cell ids run_grid would evaluate, in canonical order (no work done).
std::vector<std::string> grid_cell_ids(const ExperimentSpec& spec);

} // namespace cprec

#endif // CPREC_EXPERIMENT_HPP
