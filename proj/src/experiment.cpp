#include "cprec/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "cprec/celled_projection.hpp"
#include "cprec/features.hpp"
#include "cprec/knn.hpp"
#include "cprec/pnn.hpp"
#include "cprec/split.hpp"

namespace cprec {

FeatureConfig FeatureConfig::cp(int kh, int kv) {
    FeatureConfig f;
    f.kind = Kind::celled_projection;
    f.cp_kh = kh;
    f.cp_kv = kv;
    return f;
}

FeatureConfig FeatureConfig::plain(Kind kind) {
    FeatureConfig f;
    f.kind = kind;
    return f;
}

FeatureConfig FeatureConfig::zoning_grid(int rows, int cols) {
    FeatureConfig f;
    f.kind = Kind::zoning;
    f.zone_rows = rows;
    f.zone_cols = cols;
    return f;
}

std::string FeatureConfig::id() const {
    switch (kind) {
        case Kind::celled_projection: {
            std::string s = "cp";
            if (cp_kh > 0) s += std::to_string(cp_kh) + "h";
            if (cp_kv > 0) s += std::to_string(cp_kv) + "v";
            return s;
        }
        case Kind::crossings: return "crossings";
        case Kind::fourier: return "fourier";
        case Kind::moments: return "moments";
        case Kind::hu: return "hu";
        case Kind::histograms: return "hist";
        case Kind::zoning:
            return "zoning" + std::to_string(zone_rows) + "x" + std::to_string(zone_cols);
    }
    return "?";
}

std::string FeatureConfig::params() const {
    switch (kind) {
        case Kind::celled_projection:
            return "kh=" + std::to_string(cp_kh) + ",kv=" + std::to_string(cp_kv);
        case Kind::zoning:
            return "rows=" + std::to_string(zone_rows) + ",cols=" + std::to_string(zone_cols);
        default: return "-";
    }
}

FeatureMatrix extract_features(const LabeledDataset& data, const FeatureConfig& cfg) {
    std::vector<int> labels;
    labels.reserve(data.size());
    for (const auto& s : data.samples) labels.push_back(s.label);

    if (cfg.is_bit()) {
        CelledProjectionConfig cp{cfg.cp_kh, cfg.cp_kv};
        std::vector<BitFeatureVector> rows;
        rows.reserve(data.size());
        for (const auto& s : data.samples) rows.push_back(celled_projection(s.image, cp));
        return FeatureMatrix::from_bits(std::move(rows), std::move(labels), data.class_count);
    }

    std::vector<std::vector<double>> rows;
    rows.reserve(data.size());
    for (const auto& s : data.samples) {
        switch (cfg.kind) {
            case FeatureConfig::Kind::crossings:
                rows.push_back(crossings(s.image).values);
                break;
            case FeatureConfig::Kind::fourier:
                rows.push_back(fourier_low(s.image).values);
                break;
            case FeatureConfig::Kind::moments:
                rows.push_back(central_moments(s.image).values);
                break;
            case FeatureConfig::Kind::hu:
                rows.push_back(hu_moments(s.image).values);
                break;
            case FeatureConfig::Kind::histograms:
                rows.push_back(projection_histograms(s.image).values);
                break;
            case FeatureConfig::Kind::zoning:
                rows.push_back(zoning(s.image, cfg.zone_rows, cfg.zone_cols).values);
                break;
            case FeatureConfig::Kind::celled_projection:
                break; // handled above
        }
    }
    return FeatureMatrix::from_real(std::move(rows), std::move(labels), data.class_count);
}

ClassifierConfig ClassifierConfig::knn(int k) {
    ClassifierConfig c;
    c.kind = Kind::knn;
    c.knn_k = k;
    return c;
}

ClassifierConfig ClassifierConfig::pnn(double spread) {
    ClassifierConfig c;
    c.kind = Kind::pnn;
    c.pnn_spread = spread;
    return c;
}

ClassifierConfig ClassifierConfig::fbpn_with(int hidden, const FbpnConfig& base) {
    ClassifierConfig c;
    c.kind = Kind::fbpn;
    c.fbpn = base;
    c.fbpn.hidden_count = hidden;
    return c;
}

std::string ClassifierConfig::id() const {
    switch (kind) {
        case Kind::knn: return "knn";
        case Kind::pnn: return "pnn";
        case Kind::fbpn: return "fbpn";
    }
    return "?";
}

namespace {

std::string trim_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

} // namespace

std::string ClassifierConfig::params() const {
    switch (kind) {
        case Kind::knn: return "k=" + std::to_string(knn_k);
        case Kind::pnn: return "spread=" + trim_number(pnn_spread);
        case Kind::fbpn: return "hidden=" + std::to_string(fbpn.hidden_count);
    }
    return "-";
}

long long ConfusionMatrix::trace() const {
    long long t = 0;
    for (int c = 0; c < classes; ++c) t += at(c, c);
    return t;
}

long long ConfusionMatrix::total() const {
    long long t = 0;
    for (long long v : counts) t += v;
    return t;
}

double ConfusionMatrix::accuracy_pct() const {
    const long long n = total();
    return n == 0 ? 0.0 : 100.0 * static_cast<double>(trace()) / static_cast<double>(n);
}

CellResult evaluate(const LabeledDataset& train, const LabeledDataset& test,
                    const FeatureConfig& feature, const ClassifierConfig& classifier) {
    if (train.empty() || test.empty())
        throw EmptyTrainingSetError("evaluate: train and test must be nonempty");

    const auto started = std::chrono::steady_clock::now();
    const FeatureMatrix train_m = extract_features(train, feature);
    const FeatureMatrix test_m = extract_features(test, feature);

    CellResult cell;
    cell.feature_id = feature.id();
    cell.feature_params = feature.params();
    cell.classifier_id = classifier.id();
    cell.classifier_params = classifier.params();
    cell.subrange_label = "-";
    const int classes = std::max(train.class_count, test.class_count);
    cell.confusion.classes = classes;
    cell.confusion.counts.assign(static_cast<std::size_t>(classes) * classes, 0);

    auto tally = [&cell, &test_m](std::size_t i, int predicted) {
        cell.confusion.at(test_m.label(i), predicted) += 1;
    };

    switch (classifier.kind) {
        case ClassifierConfig::Kind::knn: {
            if (train_m.is_bit()) {
                const KnnModel model = knn_train(train_m, classifier.knn_k, Metric::hamming);
                for (std::size_t i = 0; i < test_m.size(); ++i)
                    tally(i, knn_classify(model, test_m.bit_row(i)));
            } else {
                const KnnModel model = knn_train(train_m, classifier.knn_k, Metric::euclidean);
                for (std::size_t i = 0; i < test_m.size(); ++i)
                    tally(i, knn_classify(model, test_m.real_row(i)));
            }
            break;
        }
        case ClassifierConfig::Kind::pnn: {
            const PnnModel model = pnn_train(train_m, classifier.pnn_spread);
            if (train_m.is_bit()) {
                for (std::size_t i = 0; i < test_m.size(); ++i)
                    tally(i, pnn_classify(model, test_m.bit_row(i)));
            } else {
                for (std::size_t i = 0; i < test_m.size(); ++i)
                    tally(i, pnn_classify(model, test_m.real_row(i)));
            }
            break;
        }
        case ClassifierConfig::Kind::fbpn: {
            const FbpnModel model = fbpn_train(train_m, classifier.fbpn);
            for (std::size_t i = 0; i < test_m.size(); ++i)
                tally(i, fbpn_predict(model, test_m.row_as_real(i)));
            break;
        }
    }

    cell.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return cell;
}

namespace {

std::vector<double> parse_number_list(const std::string& s) {
    std::vector<double> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(std::stod(item));
    return out;
}

std::vector<Subrange> parse_subranges(const std::string& s) {
    std::vector<Subrange> out;
    std::string part;
    std::istringstream in(s);
    while (std::getline(in, part, '|')) {
        Subrange r;
        r.values = parse_number_list(part);
        if (r.values.empty()) throw BadConfigError("spec: empty subrange in \"" + s + "\"");
        r.label = trim_number(r.values.front());
        if (r.values.size() > 1) r.label += "-" + trim_number(r.values.back());
        out.push_back(std::move(r));
    }
    if (out.empty()) throw BadConfigError("spec: subrange list \"" + s + "\" is empty");
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_on_off(const std::string& v) {
    if (v == "on" || v == "true" || v == "1") return true;
    if (v == "off" || v == "false" || v == "0") return false;
    throw BadConfigError("spec: expected on/off, got \"" + v + "\"");
}

} // namespace

ExperimentSpec default_spec() {
    ExperimentSpec spec;
    spec.templates_dir = "fixtures/templates";
    spec.synth.samples_per_class = 300;
    using FK = FeatureConfig::Kind;
    spec.features = {FeatureConfig::cp(4, 0),        FeatureConfig::cp(8, 0),
                     FeatureConfig::cp(4, 4),        FeatureConfig::plain(FK::crossings),
                     FeatureConfig::plain(FK::fourier), FeatureConfig::plain(FK::moments),
                     FeatureConfig::plain(FK::histograms), FeatureConfig::zoning_grid(4, 4)};
    spec.knn_subranges = parse_subranges("3 | 5 | 7");
    spec.pnn_subranges = parse_subranges("0.25,0.5,0.75,1.0 | 1.25,1.5,2.0 | 3,5,9,30,100,900");
    spec.fbpn_subranges = parse_subranges("25,30 | 35,40 | 45,50");
    spec.fbpn_base.learning_rate = 2.0;
    spec.fbpn_base.max_epochs = 150;
    spec.fbpn_base.validation_fraction = 0.2;
    spec.fbpn_base.patience = 15;
    return spec;
}

namespace {

// One key = value assignment. Returns false when the key is unknown.
bool apply_spec_key(ExperimentSpec& spec, std::map<std::string, bool>& feature_toggle,
                    const std::string& section, const std::string& key,
                    const std::string& value) {
    const std::string where = section + "." + key;
    if (where == "dataset.source") {
        if (value == "synth") spec.source = ExperimentSpec::Source::synth;
        else if (value == "manifest") spec.source = ExperimentSpec::Source::manifest;
        else if (value == "idx") spec.source = ExperimentSpec::Source::idx;
        else throw BadConfigError("spec: unknown dataset source \"" + value + "\"");
    }
    else if (where == "dataset.templates") spec.templates_dir = value;
    else if (where == "dataset.per_class") spec.synth.samples_per_class = std::stoi(value);
    else if (where == "dataset.rotation_deg") spec.synth.rotation_range_deg = std::stod(value);
    else if (where == "dataset.shear") spec.synth.shear_range = std::stod(value);
    else if (where == "dataset.noise") spec.synth.noise_probability = std::stod(value);
    else if (where == "dataset.morph_steps") spec.synth.morph_steps = std::stoi(value);
    else if (where == "dataset.dir") spec.dataset_dir = value;
    else if (where == "dataset.manifest") spec.manifest_file = value;
    else if (where == "dataset.images") spec.idx_images = value;
    else if (where == "dataset.labels") spec.idx_labels = value;
    else if (where == "dataset.threshold") spec.idx_threshold = std::stoi(value);
    else if (where == "dataset.polarity")
        spec.idx_polarity =
            value == "light" ? Polarity::light_foreground : Polarity::dark_foreground;
    else if (where == "dataset.normalize_rows") spec.normalize_rows = std::stoi(value);
    else if (where == "dataset.normalize_cols") spec.normalize_cols = std::stoi(value);
    else if (where == "split.train_fraction") spec.train_fraction = std::stod(value);
    else if (where == "split.test_fraction") spec.test_fraction = std::stod(value);
    else if (where == "split.seed") spec.seed = std::stoull(value);
    else if (where == "grid.jobs") spec.jobs = std::stoi(value);
    else if (section == "features") feature_toggle[key] = parse_on_off(value);
    else if (where == "knn.enabled") spec.knn_enabled = parse_on_off(value);
    else if (where == "knn.subranges") spec.knn_subranges = parse_subranges(value);
    else if (where == "pnn.enabled") spec.pnn_enabled = parse_on_off(value);
    else if (where == "pnn.subranges") spec.pnn_subranges = parse_subranges(value);
    else if (where == "fbpn.enabled") spec.fbpn_enabled = parse_on_off(value);
    else if (where == "fbpn.subranges") spec.fbpn_subranges = parse_subranges(value);
    else if (where == "fbpn.learning_rate") spec.fbpn_base.learning_rate = std::stod(value);
    else if (where == "fbpn.max_epochs") spec.fbpn_base.max_epochs = std::stoi(value);
    else if (where == "fbpn.validation_fraction")
        spec.fbpn_base.validation_fraction = std::stod(value);
    else if (where == "fbpn.patience") spec.fbpn_base.patience = std::stoi(value);
    else return false;
    return true;
}

// Resolve feature on/off toggles against the known feature set.
void apply_feature_toggles(ExperimentSpec& spec,
                           const std::map<std::string, bool>& feature_toggle) {
    if (feature_toggle.empty()) return;
    std::vector<FeatureConfig> known = default_spec().features;
    known.push_back(FeatureConfig::plain(FeatureConfig::Kind::hu));
    for (const auto& [key, _] : feature_toggle) {
        bool ok = false;
        for (const auto& f : known) ok = ok || f.id() == key;
        if (!ok) throw BadConfigError("spec: unknown feature \"" + key + "\"");
    }
    std::vector<FeatureConfig> chosen;
    for (const auto& f : known) {
        const auto it = feature_toggle.find(f.id());
        const bool default_on = f.kind != FeatureConfig::Kind::hu;
        if (it != feature_toggle.end() ? it->second : default_on) chosen.push_back(f);
    }
    spec.features = std::move(chosen);
}

} // namespace

ExperimentSpec parse_spec_text(const std::string& text) {
    ExperimentSpec spec = default_spec();
    std::map<std::string, bool> feature_toggle; // id -> enabled

    std::istringstream in(text);
    std::string line, section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw BadConfigError("spec line " + std::to_string(line_no) + ": bad section");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw BadConfigError("spec line " + std::to_string(line_no) +
                                 ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (!apply_spec_key(spec, feature_toggle, section, key, value))
                throw BadConfigError("spec line " + std::to_string(line_no) +
                                     ": unknown key \"" + section + "." + key + "\"");
        } catch (const BadConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw BadConfigError("spec line " + std::to_string(line_no) + ": bad value \"" +
                                 value + "\" for " + section + "." + key);
        }
    }

    apply_feature_toggles(spec, feature_toggle);
    if (spec.features.empty()) throw BadConfigError("spec: no features enabled");
    if (!spec.knn_enabled && !spec.pnn_enabled && !spec.fbpn_enabled)
        throw BadConfigError("spec: no classifiers enabled");
    return spec;
}

ExperimentSpec parse_spec_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw MissingFileError("cannot open spec file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec_text(buf.str());
}

std::string canonical_text(const ExperimentSpec& spec) {
    std::ostringstream out;
    // Full-precision doubles: specs differing in any digit must hash apart.
    auto num = [&out](double v) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out << buf;
    };
    out << "v1 source=" << static_cast<int>(spec.source);
    if (spec.source == ExperimentSpec::Source::synth) {
        out << " templates=" << spec.templates_dir
            << " per_class=" << spec.synth.samples_per_class << " rot=";
        num(spec.synth.rotation_range_deg);
        out << " shear=";
        num(spec.synth.shear_range);
        out << " noise=";
        num(spec.synth.noise_probability);
        out << " morph=" << spec.synth.morph_steps;
    } else if (spec.source == ExperimentSpec::Source::manifest) {
        out << " dir=" << spec.dataset_dir << " manifest=" << spec.manifest_file;
    } else {
        out << " images=" << spec.idx_images << " labels=" << spec.idx_labels
            << " thr=" << spec.idx_threshold
            << " pol=" << (spec.idx_polarity == Polarity::dark_foreground ? "d" : "l");
    }
    out << " norm=" << spec.normalize_rows << "x" << spec.normalize_cols << " train=";
    num(spec.train_fraction);
    out << " test=";
    num(spec.test_fraction);
    out << " seed=" << spec.seed << "\nfeatures:";
    for (const auto& f : spec.features) out << ' ' << f.id();
    auto dump_ranges = [&out, &num](const char* name, bool enabled,
                                    const std::vector<Subrange>& rs) {
        out << '\n' << name << " enabled=" << enabled << ":";
        for (const auto& r : rs) {
            out << " [" << r.label << "]";
            for (double v : r.values) {
                out << ' ';
                num(v);
            }
        }
    };
    dump_ranges("knn", spec.knn_enabled, spec.knn_subranges);
    dump_ranges("pnn", spec.pnn_enabled, spec.pnn_subranges);
    dump_ranges("fbpn", spec.fbpn_enabled, spec.fbpn_subranges);
    out << "\nfbpn lr=";
    num(spec.fbpn_base.learning_rate);
    out << " epochs=" << spec.fbpn_base.max_epochs << " val=";
    num(spec.fbpn_base.validation_fraction);
    out << " patience=" << spec.fbpn_base.patience;
    return out.str();
}

std::uint64_t spec_hash(const ExperimentSpec& spec) {
    const std::string text = canonical_text(spec);
    std::uint64_t h = 14695981039346656037ull;
    for (char c : text) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

LabeledDataset load_spec_dataset(const ExperimentSpec& spec) {
    if (spec.source == ExperimentSpec::Source::synth) {
        const std::filesystem::path dir = spec.templates_dir;
        LabeledDataset raw = load_manifest(dir, dir / "manifest.csv");
        std::vector<BinaryImage> templates(raw.class_count);
        std::vector<bool> seen(raw.class_count, false);
        for (const auto& s : raw.samples) {
            if (s.label < 0 || s.label >= raw.class_count || seen[s.label])
                throw BadConfigError("synth templates: need exactly one template per class");
            templates[static_cast<std::size_t>(s.label)] = s.image;
            seen[s.label] = true;
        }
        for (bool b : seen)
            if (!b) throw BadConfigError("synth templates: need exactly one template per class");
        SynthConfig cfg = spec.synth;
        cfg.seed = spec.seed;
        cfg.target_rows = spec.normalize_rows;
        cfg.target_cols = spec.normalize_cols;
        return synth_generate(templates, cfg);
    }

    LabeledDataset data;
    if (spec.source == ExperimentSpec::Source::manifest) {
        const std::filesystem::path dir = spec.dataset_dir;
        data = load_manifest(dir, dir / spec.manifest_file);
    } else {
        data = load_idx_pair(spec.idx_images, spec.idx_labels, spec.idx_threshold,
                             spec.idx_polarity);
    }
    for (auto& s : data.samples)
        s.image = normalize(s.image, spec.normalize_rows, spec.normalize_cols);
    return data;
}

namespace {

struct GridCell {
    FeatureConfig feature;
    ClassifierConfig::Kind classifier;
    Subrange subrange;
    std::string id; // "<feature>_<classifier>_s<i>"
};

std::vector<GridCell> enumerate_cells(const ExperimentSpec& spec) {
    std::vector<GridCell> cells;
    for (const auto& f : spec.features) {
        auto add = [&](ClassifierConfig::Kind kind, const std::vector<Subrange>& subranges,
                       const char* tag) {
            for (std::size_t i = 0; i < subranges.size(); ++i)
                cells.push_back(GridCell{f, kind, subranges[i],
                                         f.id() + "_" + tag + "_s" + std::to_string(i)});
        };
        if (spec.knn_enabled) add(ClassifierConfig::Kind::knn, spec.knn_subranges, "knn");
        if (spec.pnn_enabled) add(ClassifierConfig::Kind::pnn, spec.pnn_subranges, "pnn");
        if (spec.fbpn_enabled) add(ClassifierConfig::Kind::fbpn, spec.fbpn_subranges, "fbpn");
    }
    return cells;
}

CellResult run_cell(const GridCell& cell, const LabeledDataset& train,
                    const LabeledDataset& test, const ExperimentSpec& spec) {
    CellResult best;
    bool first = true;
    double seconds = 0.0;
    for (std::size_t vi = 0; vi < cell.subrange.values.size(); ++vi) {
        const double value = cell.subrange.values[vi];
        ClassifierConfig cc;
        switch (cell.classifier) {
            case ClassifierConfig::Kind::knn:
                cc = ClassifierConfig::knn(static_cast<int>(value));
                break;
            case ClassifierConfig::Kind::pnn:
                cc = ClassifierConfig::pnn(value);
                break;
            case ClassifierConfig::Kind::fbpn:
                cc = ClassifierConfig::fbpn_with(static_cast<int>(value), spec.fbpn_base);
                cc.fbpn.seed = mix_seed(spec.seed, cell.id + "/v" + std::to_string(vi));
                break;
        }
        CellResult r = evaluate(train, test, cell.feature, cc);
        seconds += r.seconds;
        if (first || r.accuracy_pct() > best.accuracy_pct()) {
            best = std::move(r);
            first = false;
        }
    }
    best.subrange_label = cell.subrange.label;
    best.seconds = seconds;
    return best;
}

std::string cell_cache_text(const CellResult& r) {
    std::ostringstream out;
    char secs[40];
    std::snprintf(secs, sizeof(secs), "%.17g", r.seconds);
    out << "cprec-cell-v1\n"
        << r.feature_id << ' ' << r.feature_params << ' ' << r.classifier_id << ' '
        << r.classifier_params << ' ' << r.subrange_label << ' ' << secs << '\n'
        << r.confusion.classes << '\n';
    for (std::size_t i = 0; i < r.confusion.counts.size(); ++i) {
        if (i) out << ' ';
        out << r.confusion.counts[i];
    }
    out << '\n';
    return out.str();
}

bool parse_cell_cache(const std::string& text, CellResult& r) {
    std::istringstream in(text);
    std::string magic;
    if (!(in >> magic) || magic != "cprec-cell-v1") return false;
    if (!(in >> r.feature_id >> r.feature_params >> r.classifier_id >> r.classifier_params >>
          r.subrange_label >> r.seconds))
        return false;
    if (!(in >> r.confusion.classes) || r.confusion.classes < 1) return false;
    r.confusion.counts.assign(
        static_cast<std::size_t>(r.confusion.classes) * r.confusion.classes, 0);
    for (auto& v : r.confusion.counts)
        if (!(in >> v)) return false;
    return true;
}

} // namespace

std::vector<std::string> grid_cell_ids(const ExperimentSpec& spec) {
    std::vector<std::string> ids;
    for (const auto& cell : enumerate_cells(spec)) ids.push_back(cell.id);
    return ids;
}

ExperimentReport run_grid(const ExperimentSpec& spec) {
    if (spec.features.empty()) throw BadConfigError("run_grid: no features enabled");
    for (const auto* group : {&spec.knn_subranges, &spec.pnn_subranges, &spec.fbpn_subranges})
        for (const auto& r : *group)
            if (r.values.empty()) throw BadConfigError("run_grid: empty parameter subrange");

    const LabeledDataset data = load_spec_dataset(spec);
    const auto split = split_dataset(data, spec.train_fraction, spec.test_fraction, spec.seed);
    const LabeledDataset& train = split.first;
    const LabeledDataset& test = split.second;

    ExperimentReport report;
    report.dataset_name = data.name;
    report.train_size = train.size();
    report.test_size = test.size();
    report.class_count = data.class_count;
    report.seed = spec.seed;

    const std::vector<GridCell> cells = enumerate_cells(spec);
    report.cells.resize(cells.size());

    std::filesystem::path cache_root;
    if (!spec.cache_dir.empty()) {
        char hash[20];
        std::snprintf(hash, sizeof(hash), "%016llx",
                      static_cast<unsigned long long>(spec_hash(spec)));
        cache_root = spec.cache_dir / hash;
        std::filesystem::create_directories(cache_root);
    }

    // FBPN cells carry nearly all the cost; schedule them last so the
    // cheap cells land in the cache early.
    std::vector<std::size_t> schedule(cells.size());
    for (std::size_t i = 0; i < schedule.size(); ++i) schedule[i] = i;
    std::stable_partition(schedule.begin(), schedule.end(), [&cells](std::size_t i) {
        return cells[i].classifier != ClassifierConfig::Kind::fbpn;
    });

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string failure;
    std::mutex failure_mutex;

    auto worker = [&]() {
        for (;;) {
            const std::size_t slot = next.fetch_add(1);
            if (slot >= schedule.size() || failed.load()) return;
            const std::size_t ci = schedule[slot];
            const GridCell& cell = cells[ci];
            try {
                const std::filesystem::path cache_file =
                    cache_root.empty() ? std::filesystem::path{}
                                       : cache_root / (cell.id + ".csv");
                if (!cache_file.empty() && std::filesystem::exists(cache_file)) {
                    std::ifstream in(cache_file);
                    std::ostringstream buf;
                    buf << in.rdbuf();
                    CellResult cached;
                    if (parse_cell_cache(buf.str(), cached)) {
                        report.cells[ci] = std::move(cached);
                        continue;
                    }
                }
                CellResult r = run_cell(cell, train, test, spec);
                if (!cache_file.empty()) {
                    std::ofstream out(cache_file);
                    out << cell_cache_text(r);
                }
                report.cells[ci] = std::move(r);
            } catch (const std::exception& e) {
                std::scoped_lock lock(failure_mutex);
                failure = std::string("cell ") + cell.id + ": " + e.what();
                failed.store(true);
                return;
            }
        }
    };

    int jobs = spec.jobs > 0 ? spec.jobs
                             : static_cast<int>(std::thread::hardware_concurrency());
    if (jobs < 1) jobs = 1;
    jobs = std::min<int>(jobs, static_cast<int>(cells.size()) > 0 ? static_cast<int>(cells.size()) : 1);

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    if (failed.load()) throw DomainError("run_grid: " + failure);
    return report;
}

} // namespace cprec
