#include "cprec/features.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace cprec {

RealFeatureVector crossings(const BinaryImage& img) {
    const int m = img.rows();
    const int n = img.cols();
    RealFeatureVector out;
    out.descriptor = {"crossings", "-"};
    out.values.assign(static_cast<std::size_t>(m) + n, 0.0);

    for (int i = 0; i < m; ++i) {
        int count = 0;
        std::uint8_t prev = 0;
        const std::uint8_t* row = img.row(i);
        for (int j = 0; j < n; ++j) {
            if (row[j] && !prev) ++count;
            prev = row[j];
        }
        out.values[i] = count;
    }
    for (int j = 0; j < n; ++j) {
        int count = 0;
        std::uint8_t prev = 0;
        for (int i = 0; i < m; ++i) {
            const std::uint8_t p = img.at(i, j);
            if (p && !prev) ++count;
            prev = p;
        }
        out.values[static_cast<std::size_t>(m) + j] = count;
    }
    return out;
}

RealFeatureVector fourier_low(const BinaryImage& img) {
    const int m = img.rows();
    const int n = img.cols();
    if (m < 8 || n < 8)
        throw ImageTooSmallError("fourier_low: image must be at least 8x8, got " +
                                 std::to_string(m) + "x" + std::to_string(n));

    constexpr int kWindow = 8;        // 8x8 window centered on DC
    constexpr int kHalf = kWindow / 2;
    const double tau = 2.0 * std::numbers::pi;

    // Column-direction partial transforms first: partial[x][wv] =
    // sum_y f(x,y) exp(-i 2 pi v y / n) for the 8 window frequencies v.
    std::vector<std::complex<double>> partial(static_cast<std::size_t>(m) * kWindow);
    for (int x = 0; x < m; ++x) {
        const std::uint8_t* row = img.row(x);
        for (int wv = 0; wv < kWindow; ++wv) {
            const int v = wv - kHalf; // negative frequencies wrap mod n
            std::complex<double> acc{0.0, 0.0};
            for (int y = 0; y < n; ++y) {
                if (!row[y]) continue;
                const double phase = -tau * v * y / n;
                acc += std::complex<double>(std::cos(phase), std::sin(phase));
            }
            partial[static_cast<std::size_t>(x) * kWindow + wv] = acc;
        }
    }

    RealFeatureVector out;
    out.descriptor = {"fourier", "-"};
    out.values.assign(kWindow * kWindow, 0.0);
    for (int wu = 0; wu < kWindow; ++wu) {
        const int u = wu - kHalf;
        for (int wv = 0; wv < kWindow; ++wv) {
            std::complex<double> acc{0.0, 0.0};
            for (int x = 0; x < m; ++x) {
                const double phase = -tau * u * x / m;
                acc += std::complex<double>(std::cos(phase), std::sin(phase)) *
                       partial[static_cast<std::size_t>(x) * kWindow + wv];
            }
            out.values[static_cast<std::size_t>(wu) * kWindow + wv] = std::abs(acc);
        }
    }
    return out;
}

namespace {

struct CentroidMoments {
    double m00;
    double xbar; // mean column
    double ybar; // mean row
};

CentroidMoments centroid(const BinaryImage& img) {
    double m00 = 0, m10 = 0, m01 = 0;
    for (int r = 0; r < img.rows(); ++r) {
        const std::uint8_t* row = img.row(r);
        for (int c = 0; c < img.cols(); ++c) {
            if (!row[c]) continue;
            m00 += 1.0;
            m10 += c; // x is the column index
            m01 += r; // y is the row index
        }
    }
    if (m00 <= 0.0) throw EmptyImageError("moments: image has no foreground pixel");
    return {m00, m10 / m00, m01 / m00};
}

// mu[p][q] for p,q = 0..4 about the centroid.
void central_moment_table(const BinaryImage& img, double mu[5][5]) {
    const CentroidMoments c = centroid(img);
    for (int p = 0; p < 5; ++p)
        for (int q = 0; q < 5; ++q) mu[p][q] = 0.0;
    for (int r = 0; r < img.rows(); ++r) {
        const std::uint8_t* row = img.row(r);
        for (int col = 0; col < img.cols(); ++col) {
            if (!row[col]) continue;
            const double dx = col - c.xbar;
            const double dy = r - c.ybar;
            double xp = 1.0;
            for (int p = 0; p < 5; ++p) {
                double yq = 1.0;
                for (int q = 0; q < 5; ++q) {
                    mu[p][q] += xp * yq;
                    yq *= dy;
                }
                xp *= dx;
            }
        }
    }
}

} // namespace

RealFeatureVector central_moments(const BinaryImage& img) {
    double mu[5][5];
    central_moment_table(img, mu);
    RealFeatureVector out;
    out.descriptor = {"moments", "-"};
    out.values = {mu[0][0], mu[1][0], mu[0][1], mu[1][1], mu[2][0],
                  mu[0][2], mu[2][2], mu[3][0], mu[0][3], mu[2][1],
                  mu[1][2], mu[3][1], mu[1][3], mu[4][0], mu[0][4]};
    return out;
}

RealFeatureVector hu_moments(const BinaryImage& img) {
    double mu[5][5];
    central_moment_table(img, mu);

    // eta_pq = mu_pq / mu00^(1 + (p+q)/2)
    auto eta = [&](int p, int q) {
        return mu[p][q] / std::pow(mu[0][0], 1.0 + (p + q) / 2.0);
    };
    const double n20 = eta(2, 0), n02 = eta(0, 2), n11 = eta(1, 1);
    const double n30 = eta(3, 0), n03 = eta(0, 3), n21 = eta(2, 1), n12 = eta(1, 2);

    const double a = n30 + n12; // recurring combinations
    const double b = n21 + n03;
    const double c = n30 - 3 * n12;
    const double d = 3 * n21 - n03;

    RealFeatureVector out;
    out.descriptor = {"hu", "-"};
    out.values = {
        n20 + n02,
        (n20 - n02) * (n20 - n02) + 4 * n11 * n11,
        c * c + d * d,
        a * a + b * b,
        c * a * (a * a - 3 * b * b) + d * b * (3 * a * a - b * b),
        (n20 - n02) * (a * a - b * b) + 4 * n11 * a * b,
        d * a * (a * a - 3 * b * b) - c * b * (3 * a * a - b * b),
    };
    return out;
}

RealFeatureVector projection_histograms(const BinaryImage& img) {
    const int m = img.rows();
    const int n = img.cols();
    RealFeatureVector out;
    out.descriptor = {"hist", "-"};
    out.values.assign(static_cast<std::size_t>(m) + n, 0.0);
    for (int i = 0; i < m; ++i) {
        const std::uint8_t* row = img.row(i);
        int sum = 0;
        for (int j = 0; j < n; ++j) sum += row[j];
        out.values[i] = sum;
    }
    for (int j = 0; j < n; ++j) {
        int sum = 0;
        for (int i = 0; i < m; ++i) sum += img.at(i, j);
        out.values[static_cast<std::size_t>(m) + j] = sum;
    }
    return out;
}

RealFeatureVector zoning(const BinaryImage& img, int grid_rows, int grid_cols) {
    const int m = img.rows();
    const int n = img.cols();
    if (grid_rows < 1 || grid_cols < 1 || m % grid_rows != 0 || n % grid_cols != 0)
        throw BadGridError("zoning: grid " + std::to_string(grid_rows) + "x" +
                           std::to_string(grid_cols) + " does not divide image " +
                           std::to_string(m) + "x" + std::to_string(n));
    const int zh = m / grid_rows;
    const int zw = n / grid_cols;
    const double area = static_cast<double>(zh) * zw;

    RealFeatureVector out;
    out.descriptor = {"zoning",
                      "rows=" + std::to_string(grid_rows) + ",cols=" + std::to_string(grid_cols)};
    out.values.assign(static_cast<std::size_t>(grid_rows) * grid_cols, 0.0);
    for (int a = 0; a < grid_rows; ++a)
        for (int b = 0; b < grid_cols; ++b) {
            int count = 0;
            for (int i = a * zh; i < (a + 1) * zh; ++i)
                for (int j = b * zw; j < (b + 1) * zw; ++j) count += img.at(i, j);
            out.values[static_cast<std::size_t>(a) * grid_cols + b] = count / area;
        }
    return out;
}

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct ParsedHeader {
    FeatureDescriptor descriptor;
    std::size_t length;
};

ParsedHeader parse_header(std::istream& in) {
    ParsedHeader h;
    if (!(in >> h.descriptor.name >> h.descriptor.params >> h.length))
        throw ParseError("bad feature vector header", 0);
    return h;
}

} // namespace

std::string to_text(const RealFeatureVector& v) {
    std::ostringstream out;
    out << v.descriptor.name << ' ' << v.descriptor.params << ' ' << v.values.size() << '\n';
    for (std::size_t i = 0; i < v.values.size(); ++i) {
        if (i) out << ' ';
        out << format_double(v.values[i]);
    }
    out << '\n';
    return out.str();
}

std::string to_text(const BitFeatureVector& v, const FeatureDescriptor& d) {
    std::ostringstream out;
    out << d.name << ' ' << d.params << ' ' << v.bit_length() << '\n';
    for (std::size_t b = 0; b < v.bit_length(); ++b) {
        if (b) out << ' ';
        out << (v.test(b) ? '1' : '0');
    }
    out << '\n';
    return out.str();
}

RealFeatureVector parse_real_feature(const std::string& text) {
    std::istringstream in(text);
    const ParsedHeader h = parse_header(in);
    RealFeatureVector out;
    out.descriptor = h.descriptor;
    out.values.resize(h.length);
    for (std::size_t i = 0; i < h.length; ++i)
        if (!(in >> out.values[i]))
            throw ParseError("feature vector shorter than its declared length", 0);
    return out;
}

BitFeatureVector parse_bit_feature(const std::string& text, FeatureDescriptor* descriptor) {
    std::istringstream in(text);
    const ParsedHeader h = parse_header(in);
    if (descriptor) *descriptor = h.descriptor;
    BitFeatureVector out(h.length);
    for (std::size_t b = 0; b < h.length; ++b) {
        int bit;
        if (!(in >> bit) || (bit != 0 && bit != 1))
            throw ParseError("bit vector shorter than its declared length or non-binary", 0);
        if (bit) out.set(b);
    }
    return out;
}

} // namespace cprec
