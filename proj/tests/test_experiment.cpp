#include "doctest.h"

#include <fstream>

#include "cprec/experiment.hpp"
#include "cprec/report.hpp"
#include "cprec/split.hpp"
#include "test_support.hpp"

using namespace cprec;
using test::TempDir;

namespace {

LabeledDataset tiny_synth(int per_class, std::uint64_t seed) {
    const std::filesystem::path dir = std::filesystem::path(CPREC_FIXTURES_DIR) / "templates";
    const LabeledDataset raw = load_manifest(dir, dir / "manifest.csv");
    std::vector<BinaryImage> templates(10);
    for (const auto& s : raw.samples) templates[static_cast<std::size_t>(s.label)] = s.image;
    SynthConfig cfg;
    cfg.seed = seed;
    cfg.samples_per_class = per_class;
    return synth_generate(templates, cfg);
}

ExperimentSpec tiny_spec(const std::filesystem::path& cache) {
    ExperimentSpec spec = default_spec();
    spec.templates_dir =
        (std::filesystem::path(CPREC_FIXTURES_DIR) / "templates").string();
    spec.synth.samples_per_class = 12;
    spec.seed = 11;
    spec.jobs = 2;
    spec.cache_dir = cache;
    spec.features = {FeatureConfig::cp(4, 4), FeatureConfig::zoning_grid(4, 4)};
    spec.knn_subranges = {{"3", {3}}};
    spec.pnn_subranges = {{"0-1", {0.5, 1.0}}};
    spec.fbpn_subranges = {{"21-30", {4}}};
    spec.fbpn_base.max_epochs = 3;
    return spec;
}

} // namespace

TEST_CASE("extract_features produces the right kinds and dims") {
    const LabeledDataset data = tiny_synth(2, 3);
    const FeatureMatrix cp = extract_features(data, FeatureConfig::cp(4, 4));
    CHECK(cp.is_bit());
    CHECK(cp.dim() == 128);
    CHECK(cp.size() == 20);

    const FeatureMatrix zones =
        extract_features(data, FeatureConfig::zoning_grid(4, 4));
    CHECK(!zones.is_bit());
    CHECK(zones.dim() == 16);

    const FeatureMatrix cross =
        extract_features(data, FeatureConfig::plain(FeatureConfig::Kind::crossings));
    CHECK(cross.dim() == 32);

    const FeatureMatrix four =
        extract_features(data, FeatureConfig::plain(FeatureConfig::Kind::fourier));
    CHECK(four.dim() == 64);

    const FeatureMatrix mom =
        extract_features(data, FeatureConfig::plain(FeatureConfig::Kind::moments));
    CHECK(mom.dim() == 15);

    const FeatureMatrix hu7 = extract_features(data, FeatureConfig::plain(FeatureConfig::Kind::hu));
    CHECK(hu7.dim() == 7);

    const FeatureMatrix hist =
        extract_features(data, FeatureConfig::plain(FeatureConfig::Kind::histograms));
    CHECK(hist.dim() == 32);
}

TEST_CASE("evaluate fills the confusion matrix") {
    const LabeledDataset data = tiny_synth(4, 9);

    SUBCASE("train evaluated on itself with k=1 is perfect") {
        const CellResult r =
            evaluate(data, data, FeatureConfig::cp(4, 4), ClassifierConfig::knn(1));
        CHECK(r.accuracy_pct() == 100.0);
        CHECK(r.confusion.trace() == static_cast<long long>(data.size()));
        CHECK(r.seconds > 0.0);
    }

    SUBCASE("row sums match per-class test counts") {
        const auto [train, test] = split_dataset(data, 0.5, 0.5, 3);
        const CellResult r =
            evaluate(train, test, FeatureConfig::zoning_grid(4, 4), ClassifierConfig::knn(3));
        for (int c = 0; c < 10; ++c) {
            long long row = 0;
            for (int p = 0; p < 10; ++p) row += r.confusion.at(c, p);
            long long expected = 0;
            for (const auto& s : test.samples) expected += s.label == c;
            CHECK(row == expected);
        }
        CHECK(r.confusion.total() == static_cast<long long>(test.size()));
    }

    SUBCASE("a constant-class predictor scores 10% on a balanced test set") {
        // Five duplicates of one template dominate every k=5 vote.
        const BinaryImage anchor = tiny_synth(1, 1).samples[0].image;
        LabeledDataset train;
        train.class_count = 10;
        for (int i = 0; i < 5; ++i) train.samples.push_back({anchor, 0});
        Rng rng(123);
        for (int c = 1; c < 10; ++c)
            train.samples.push_back({test::random_nonempty_image(rng, 16, 16, 0.9), c});
        LabeledDataset test;
        test.class_count = 10;
        for (int c = 0; c < 10; ++c)
            for (int i = 0; i < 2; ++i) test.samples.push_back({anchor, c});
        const CellResult r = evaluate(train, test, FeatureConfig::plain(FeatureConfig::Kind::histograms),
                                      ClassifierConfig::knn(5));
        CHECK(r.accuracy_pct() == doctest::Approx(10.0));
    }
}

TEST_CASE("run_grid shapes, determinism, and cache") {
    TempDir tmp("grid");

    SUBCASE("single feature and single classifier give one cell") {
        ExperimentSpec spec = tiny_spec(tmp.path() / "cache");
        spec.features = {FeatureConfig::cp(4, 4)};
        spec.pnn_enabled = false;
        spec.fbpn_enabled = false;
        const ExperimentReport report = run_grid(spec);
        CHECK(report.cells.size() == 1);
        CHECK(report.cells[0].feature_id == "cp4h4v");
        CHECK(report.cells[0].classifier_id == "knn");
        const std::string csv = emit_csv(report);
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 2); // header + 1 row
    }

    SUBCASE("rerun with the same spec and seed is byte-identical") {
        const ExperimentSpec spec = tiny_spec(tmp.path() / "cache2");
        const std::string a = emit_csv(run_grid(spec));
        const std::string b = emit_csv(run_grid(spec));
        CHECK(a == b);

        // A different jobs value replays the same cache bytes.
        ExperimentSpec spec_jobs = spec;
        spec_jobs.jobs = 1;
        CHECK(emit_csv(run_grid(spec_jobs)) == a);
    }

    SUBCASE("interrupted runs resume from the cache") {
        const ExperimentSpec spec = tiny_spec(tmp.path() / "cache3");
        const ExperimentReport first = run_grid(spec);
        const std::string csv1 = emit_csv(first);

        // Simulate an interrupt: drop some cached cells, keep the rest.
        char hash[20];
        std::snprintf(hash, sizeof(hash), "%016llx",
                      static_cast<unsigned long long>(spec_hash(spec)));
        const std::filesystem::path cdir = tmp.path() / "cache3" / hash;
        REQUIRE(std::filesystem::exists(cdir));
        int removed = 0;
        for (const auto& entry : std::filesystem::directory_iterator(cdir))
            if (++removed % 2 == 0) std::filesystem::remove(entry.path());

        const std::string csv2 = emit_csv(run_grid(spec));
        // Recomputed cells may time differently; everything else matches.
        std::istringstream a(csv1), b(csv2);
        std::string la, lb;
        while (std::getline(a, la) && std::getline(b, lb)) {
            CHECK(la.substr(0, la.rfind(',')) == lb.substr(0, lb.rfind(',')));
        }
        // And a further rerun replays the now-complete cache exactly.
        CHECK(emit_csv(run_grid(spec)) == csv2);
    }

    SUBCASE("results are independent of the parallelism degree") {
        ExperimentSpec spec = tiny_spec("");
        spec.jobs = 1;
        const std::string serial = emit_csv(run_grid(spec));
        spec.jobs = 4;
        const std::string parallel = emit_csv(run_grid(spec));
        std::istringstream a(serial), b(parallel);
        std::string la, lb;
        while (std::getline(a, la) && std::getline(b, lb))
            CHECK(la.substr(0, la.rfind(',')) == lb.substr(0, lb.rfind(',')));
    }
}

TEST_CASE("grid runs from idx and manifest dataset sources") {
    TempDir tmp("grid_sources");
    const LabeledDataset data = tiny_synth(6, 19);
    save_idx_pair(data, tmp.path() / "d.idx", tmp.path() / "d.labels.idx");
    save_manifest_dir(data, tmp.path() / "pbm");

    ExperimentSpec spec = tiny_spec("");
    spec.features = {FeatureConfig::cp(4, 4)};
    spec.pnn_enabled = false;
    spec.fbpn_enabled = false;

    spec.source = ExperimentSpec::Source::idx;
    spec.idx_images = (tmp.path() / "d.idx").string();
    spec.idx_labels = (tmp.path() / "d.labels.idx").string();
    const ExperimentReport from_idx = run_grid(spec);
    REQUIRE(from_idx.cells.size() == 1);
    CHECK(from_idx.train_size == 40);
    CHECK(from_idx.test_size == 20);

    spec.source = ExperimentSpec::Source::manifest;
    spec.dataset_dir = (tmp.path() / "pbm").string();
    const ExperimentReport from_manifest = run_grid(spec);
    REQUIRE(from_manifest.cells.size() == 1);
    // Identical bytes on disk, identical split seed: identical outcome.
    CHECK(from_manifest.cells[0].confusion.counts == from_idx.cells[0].confusion.counts);
}

TEST_CASE("default spec matches the published grid shape") {
    const ExperimentSpec spec = default_spec();
    CHECK(spec.features.size() == 8);
    CHECK(spec.knn_subranges.size() == 3);
    CHECK(spec.pnn_subranges.size() == 3);
    CHECK(spec.fbpn_subranges.size() == 3);
    // 8 features x 3 classifiers x 3 subranges
    std::size_t cells = spec.features.size() * (spec.knn_subranges.size() +
                                                spec.pnn_subranges.size() +
                                                spec.fbpn_subranges.size());
    CHECK(cells == 72);
}

TEST_CASE("spec files parse and reject unknown keys") {
    const std::string text =
        "# comment\n"
        "[dataset]\n"
        "source = synth\n"
        "per_class = 30\n"
        "noise = 0.05\n"
        "[split]\n"
        "seed = 17\n"
        "train_fraction = 0.5\n"
        "test_fraction = 0.25\n"
        "[features]\n"
        "fourier = off\n"
        "moments = off\n"
        "[knn]\n"
        "subranges = 1 | 3,5\n"
        "[fbpn]\n"
        "enabled = off\n";
    const ExperimentSpec spec = parse_spec_text(text);
    CHECK(spec.synth.samples_per_class == 30);
    CHECK(spec.synth.noise_probability == 0.05);
    CHECK(spec.seed == 17);
    CHECK(spec.features.size() == 6);
    CHECK(spec.knn_subranges.size() == 2);
    CHECK(spec.knn_subranges[1].values == std::vector<double>{3, 5});
    CHECK(spec.knn_subranges[1].label == "3-5");
    CHECK(!spec.fbpn_enabled);

    CHECK_THROWS_AS(parse_spec_text("[dataset]\nbogus = 1\n"), BadConfigError);
    CHECK_THROWS_AS(parse_spec_text("[features]\nwavelets = on\n"), BadConfigError);
    CHECK_THROWS_AS(parse_spec_text("[knn]\nsubranges =\n"), BadConfigError);

    // Hash tracks content.
    CHECK(spec_hash(spec) != spec_hash(default_spec()));
    CHECK(spec_hash(parse_spec_text(text)) == spec_hash(spec));
}

TEST_CASE("the shipped default spec file matches the built-in defaults") {
    const auto file =
        std::filesystem::path(CPREC_FIXTURES_DIR) / "default-spec.ini";
    CHECK(canonical_text(parse_spec_file(file)) == canonical_text(default_spec()));
}

TEST_CASE("report emitters") {
    ExperimentReport report;
    report.dataset_name = "demo";
    report.class_count = 2;

    SUBCASE("empty report is a bare header") {
        CHECK(emit_csv(report) ==
              "feature,feature_params,classifier,classifier_params,accuracy,seconds\n");
    }

    SUBCASE("accuracy prints with two decimals") {
        CellResult cell;
        cell.feature_id = "cp4h4v";
        cell.feature_params = "kh=4,kv=4";
        cell.classifier_id = "pnn";
        cell.classifier_params = "spread=1.5";
        cell.subrange_label = "1-2";
        cell.confusion.classes = 2;
        // 16/17 correct = 94.1176... -> "94.12"
        cell.confusion.counts = {9, 1, 0, 7};
        cell.seconds = 0.25;
        report.cells.push_back(cell);
        const std::string csv = emit_csv(report);
        CHECK(csv.find("cp4h4v,kh=4,kv=4,pnn,spread=1.5,94.12,0.250000\n") != std::string::npos);

        const std::string md = emit_markdown(report);
        CHECK(md.find("| cp4h4v | kh=4,kv=4 |") != std::string::npos);
        CHECK(md.find("94.12") != std::string::npos);
        CHECK(md.find("pnn 1-2") != std::string::npos);

        CHECK(best_accuracy_for(report, "cp4h4v") == doctest::Approx(100.0 * 16 / 17));
        CHECK(best_accuracy_for(report, "absent") == -1.0);
    }
}
