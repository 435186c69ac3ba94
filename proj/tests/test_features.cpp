#include "doctest.h"

#include <cmath>

#include "cprec/features.hpp"
#include "test_support.hpp"

using namespace cprec;
using test::image_from;

namespace {

constexpr double kTol = 1e-9;

BinaryImage cyclic_shift(const BinaryImage& img, int dr, int dc) {
    BinaryImage out(img.rows(), img.cols());
    for (int r = 0; r < img.rows(); ++r)
        for (int c = 0; c < img.cols(); ++c)
            out.set((r + dr) % img.rows(), (c + dc) % img.cols(), img.at(r, c) != 0);
    return out;
}

BinaryImage rotate90(const BinaryImage& img) {
    BinaryImage out(img.cols(), img.rows());
    for (int r = 0; r < img.rows(); ++r)
        for (int c = 0; c < img.cols(); ++c)
            out.set(c, img.rows() - 1 - r, img.at(r, c) != 0);
    return out;
}

BinaryImage pad(const BinaryImage& img, int top, int left, int bottom, int right) {
    BinaryImage out(img.rows() + top + bottom, img.cols() + left + right);
    for (int r = 0; r < img.rows(); ++r)
        for (int c = 0; c < img.cols(); ++c) out.set(r + top, c + left, img.at(r, c) != 0);
    return out;
}

} // namespace

TEST_CASE("crossings count background-to-foreground transitions") {
    const RealFeatureVector one_stroke = crossings(image_from({"0110"}));
    CHECK(one_stroke.values[0] == 1.0);

    const RealFeatureVector two_strokes = crossings(image_from({"1010"}));
    CHECK(two_strokes.values[0] == 2.0);

    const RealFeatureVector none = crossings(BinaryImage(3, 5));
    CHECK(none.values == std::vector<double>(8, 0.0));

    // Columns as well: pattern with two vertical strokes in column 0.
    const RealFeatureVector cols = crossings(image_from({"1", "0", "1"}));
    CHECK(cols.values[3] == 2.0); // column entry after the 3 row entries
}

TEST_CASE("crossings are invariant to stroke widening") {
    // Vertical bars of width 1 widened to width 3 without merging.
    Rng rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        const int rows = 8 + static_cast<int>(rng.bounded(8));
        const int cols = 24;
        std::vector<int> centers;
        for (int c = 2; c + 2 < cols; c += 5)
            if (rng.chance(0.7)) centers.push_back(c);
        if (centers.empty()) centers.push_back(10);

        BinaryImage thin(rows, cols), wide(rows, cols);
        for (int c : centers)
            for (int r = 0; r < rows; ++r) {
                thin.set(r, c, true);
                wide.set(r, c - 1, true);
                wide.set(r, c, true);
                wide.set(r, c + 1, true);
            }
        const RealFeatureVector a = crossings(thin);
        const RealFeatureVector b = crossings(wide);
        for (int r = 0; r < rows; ++r) CHECK(a.values[r] == b.values[r]);
    }
}

TEST_CASE("fourier_low magnitudes") {
    const RealFeatureVector zeros = fourier_low(BinaryImage(16, 16));
    CHECK(zeros.values == std::vector<double>(64, 0.0));

    const RealFeatureVector dc = fourier_low(BinaryImage(16, 16, 1));
    for (int i = 0; i < 64; ++i) {
        if (i == 36)
            CHECK(dc.values[i] == doctest::Approx(256.0).epsilon(1e-12));
        else
            CHECK(std::abs(dc.values[i]) < kTol);
    }

    CHECK_THROWS_AS(fourier_low(BinaryImage(4, 4, 1)), ImageTooSmallError);
    CHECK_THROWS_AS(fourier_low(BinaryImage(16, 7, 1)), ImageTooSmallError);
}

TEST_CASE("fourier_low is invariant under cyclic shifts") {
    Rng rng(55);
    for (int trial = 0; trial < 30; ++trial) {
        const BinaryImage img = test::random_image(rng, 16, 16, 0.3);
        const RealFeatureVector a = fourier_low(img);
        const RealFeatureVector b = fourier_low(cyclic_shift(img, 2, 3));
        for (int i = 0; i < 64; ++i) CHECK(std::abs(a.values[i] - b.values[i]) < kTol);
    }
}

TEST_CASE("central moments") {
    SUBCASE("first central moments vanish") {
        Rng rng(8);
        for (int i = 0; i < 20; ++i) {
            const BinaryImage img = test::random_nonempty_image(rng, 12, 9, 0.3);
            const RealFeatureVector mu = central_moments(img);
            CHECK(std::abs(mu.values[1]) < kTol); // mu10
            CHECK(std::abs(mu.values[2]) < kTol); // mu01
        }
    }

    SUBCASE("single pixel is a point mass") {
        BinaryImage img(8, 8);
        img.set(5, 2, true);
        const RealFeatureVector mu = central_moments(img);
        CHECK(mu.values[0] == 1.0);
        for (int i = 1; i < 15; ++i) CHECK(std::abs(mu.values[i]) < kTol);
    }

    SUBCASE("two pixels along x") {
        // (x,y) = (0,0) and (2,0): columns 0 and 2 of row 0.
        const BinaryImage img = image_from({"101", "000"});
        const RealFeatureVector mu = central_moments(img);
        CHECK(mu.values[0] == 2.0);                         // mu00
        CHECK(mu.values[4] == doctest::Approx(2.0));        // mu20
        CHECK(std::abs(mu.values[5]) < kTol);               // mu02
        CHECK(std::abs(mu.values[3]) < kTol);               // mu11
    }

    SUBCASE("translation invariance") {
        Rng rng(9);
        for (int i = 0; i < 50; ++i) {
            const BinaryImage img = test::random_nonempty_image(rng, 10, 10, 0.25);
            const BinaryImage moved =
                pad(img, 1 + static_cast<int>(rng.bounded(4)), 1 + static_cast<int>(rng.bounded(4)),
                    static_cast<int>(rng.bounded(3)), static_cast<int>(rng.bounded(3)));
            const RealFeatureVector a = central_moments(img);
            const RealFeatureVector b = central_moments(moved);
            for (int j = 0; j < 15; ++j)
                CHECK(std::abs(a.values[j] - b.values[j]) < kTol * std::max(1.0, std::abs(a.values[j])));
        }
    }

    CHECK_THROWS_AS(central_moments(BinaryImage(4, 4)), EmptyImageError);
}

TEST_CASE("hu moments") {
    SUBCASE("single pixel gives all zeros") {
        BinaryImage img(6, 6);
        img.set(2, 3, true);
        const RealFeatureVector hu = hu_moments(img);
        for (double v : hu.values) CHECK(std::abs(v) < kTol);
    }

    SUBCASE("invariant under 90-degree rotation and translation") {
        Rng rng(10);
        for (int i = 0; i < 40; ++i) {
            const BinaryImage img = test::random_nonempty_image(rng, 9, 14, 0.3);
            const RealFeatureVector a = hu_moments(img);
            const RealFeatureVector r = hu_moments(rotate90(img));
            const RealFeatureVector t = hu_moments(pad(img, 3, 2, 1, 4));
            for (int j = 0; j < 7; ++j) {
                CHECK(std::abs(a.values[j] - r.values[j]) < kTol);
                CHECK(std::abs(a.values[j] - t.values[j]) < kTol);
            }
        }
    }

    CHECK_THROWS_AS(hu_moments(BinaryImage(4, 4)), EmptyImageError);
}

TEST_CASE("projection histograms") {
    const RealFeatureVector id = projection_histograms(image_from({"1000", "0100", "0010", "0001"}));
    CHECK(id.values == std::vector<double>(8, 1.0));

    const RealFeatureVector full = projection_histograms(BinaryImage(3, 5, 1));
    const std::vector<double> expected{5, 5, 5, 3, 3, 3, 3, 3};
    CHECK(full.values == expected);

    CHECK(projection_histograms(BinaryImage(2, 2)).values == std::vector<double>(4, 0.0));

    SUBCASE("row and column sums both equal the foreground count") {
        Rng rng(12);
        for (int i = 0; i < 30; ++i) {
            const BinaryImage img = test::random_image(rng, 11, 7, 0.4);
            const RealFeatureVector h = projection_histograms(img);
            double rows = 0, cols = 0;
            for (int r = 0; r < 11; ++r) rows += h.values[static_cast<std::size_t>(r)];
            for (int c = 0; c < 7; ++c) cols += h.values[static_cast<std::size_t>(11 + c)];
            CHECK(rows == static_cast<double>(img.foreground_count()));
            CHECK(cols == static_cast<double>(img.foreground_count()));
        }
    }
}

TEST_CASE("zoning densities") {
    const RealFeatureVector id = zoning(image_from({"1000", "0100", "0010", "0001"}), 2, 2);
    CHECK(id.values == std::vector<double>{0.5, 0.0, 0.0, 0.5});

    const RealFeatureVector full = zoning(BinaryImage(8, 8, 1), 4, 4);
    CHECK(full.values == std::vector<double>(16, 1.0));

    CHECK_THROWS_AS(zoning(BinaryImage(8, 8), 3, 4), BadGridError);
    CHECK_THROWS_AS(zoning(BinaryImage(8, 8), 0, 4), BadGridError);

    SUBCASE("bounds and mass conservation") {
        Rng rng(13);
        for (int i = 0; i < 30; ++i) {
            const BinaryImage img = test::random_image(rng, 16, 16, rng.uniform(0.0, 1.0));
            const RealFeatureVector z = zoning(img, 4, 4);
            double mass = 0;
            for (double v : z.values) {
                CHECK(v >= 0.0);
                CHECK(v <= 1.0);
                mass += v * 16.0; // zone area
            }
            CHECK(mass == doctest::Approx(static_cast<double>(img.foreground_count())));
        }
    }
}
