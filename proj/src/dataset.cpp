#include "cprec/dataset.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

namespace cprec {

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MissingFileError("cannot open file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open file for writing: " + path.string());
    out << content;
    if (!out) throw IoError("write failed: " + path.string());
}

// Scanner over plain-PBM text tracking the byte offset for error reports.
class PbmScanner {
public:
    explicit PbmScanner(const std::string& text) : text_(text) {}

    std::size_t offset() const { return pos_; }

    void expect_magic() {
        skip_separators();
        if (text_.compare(pos_, 2, "P1") != 0)
            throw ParseError("missing PBM magic \"P1\"", pos_);
        pos_ += 2;
    }

    void skip_separators() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' ||
                       c == '\v') {
                ++pos_;
            } else {
                break;
            }
        }
    }

    bool at_end() {
        skip_separators();
        return pos_ >= text_.size();
    }

    int next_int() {
        skip_separators();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of PBM data", pos_);
        if (text_[pos_] < '0' || text_[pos_] > '9')
            throw ParseError("expected a number in PBM header", pos_);
        long v = 0;
        while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
            v = v * 10 + (text_[pos_] - '0');
            if (v > 1'000'000) throw ParseError("PBM dimension out of range", pos_);
            ++pos_;
        }
        return static_cast<int>(v);
    }

    // Bits in plain PBM may or may not be whitespace-separated.
    int next_bit() {
        skip_separators();
        if (pos_ >= text_.size()) return -1;
        const char c = text_[pos_];
        if (c != '0' && c != '1') throw ParseError("expected a 0/1 raster bit", pos_);
        ++pos_;
        return c - '0';
    }

private:
    const std::string& text_;
    std::size_t pos_ = 0;
};

} // namespace

BinaryImage parse_pbm(const std::string& text) {
    PbmScanner s(text);
    s.expect_magic();
    const int cols = s.next_int(); // PBM stores width (cols) first
    const int rows = s.next_int();
    if (rows < 1 || cols < 1) throw ParseError("non-positive PBM dimensions", s.offset());
    // Reject sizes whose raster could not possibly fit in the file before
    // allocating for them.
    if (static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols) > text.size())
        throw DimensionMismatchError("PBM declares " + std::to_string(rows) + "x" +
                                     std::to_string(cols) +
                                     " pixels but the file is too small to hold them");

    BinaryImage img(rows, cols);
    auto& px = img.pixels();
    for (std::size_t i = 0; i < px.size(); ++i) {
        const int bit = s.next_bit();
        if (bit < 0)
            throw DimensionMismatchError("PBM raster has " + std::to_string(i) +
                                         " bits, expected " + std::to_string(px.size()));
        px[i] = static_cast<std::uint8_t>(bit);
    }
    if (!s.at_end())
        throw DimensionMismatchError("PBM raster has trailing bits beyond " +
                                     std::to_string(px.size()));
    return img;
}

BinaryImage load_pbm(const std::filesystem::path& path) {
    return parse_pbm(read_file(path));
}

std::string pbm_text(const BinaryImage& img) {
    std::ostringstream out;
    out << "P1\n" << img.cols() << ' ' << img.rows() << '\n';
    for (int r = 0; r < img.rows(); ++r) {
        for (int c = 0; c < img.cols(); ++c) {
            if (c) out << ' ';
            out << static_cast<int>(img.at(r, c));
        }
        out << '\n';
    }
    return out.str();
}

void save_pbm(const BinaryImage& img, const std::filesystem::path& path) {
    write_file(path, pbm_text(img));
}

namespace {

constexpr std::uint32_t kImagesMagic = 0x00000803;
constexpr std::uint32_t kLabelsMagic = 0x00000801;

std::uint32_t read_be32(const std::string& bytes, std::size_t at, const char* what) {
    if (at + 4 > bytes.size()) throw TruncatedFileError(std::string("truncated IDX ") + what);
    return (static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[at])) << 24) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[at + 1])) << 16) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[at + 2])) << 8) |
           static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[at + 3]));
}

void append_be32(std::string& bytes, std::uint32_t v) {
    bytes.push_back(static_cast<char>((v >> 24) & 0xff));
    bytes.push_back(static_cast<char>((v >> 16) & 0xff));
    bytes.push_back(static_cast<char>((v >> 8) & 0xff));
    bytes.push_back(static_cast<char>(v & 0xff));
}

} // namespace

LabeledDataset load_idx_pair(const std::filesystem::path& images_path,
                             const std::filesystem::path& labels_path, int threshold,
                             Polarity polarity) {
    const std::string ib = read_file(images_path);
    const std::string lb = read_file(labels_path);

    if (read_be32(ib, 0, "image header") != kImagesMagic)
        throw BadMagicError("bad IDX image magic in " + images_path.string());
    if (read_be32(lb, 0, "label header") != kLabelsMagic)
        throw BadMagicError("bad IDX label magic in " + labels_path.string());

    const std::uint32_t n_images = read_be32(ib, 4, "image header");
    const std::uint32_t rows = read_be32(ib, 8, "image header");
    const std::uint32_t cols = read_be32(ib, 12, "image header");
    const std::uint32_t n_labels = read_be32(lb, 4, "label header");
    if (n_images != n_labels)
        throw CountMismatchError("IDX pair counts differ: " + std::to_string(n_images) +
                                 " images vs " + std::to_string(n_labels) + " labels");
    if (n_images > 0 && (rows == 0 || cols == 0))
        throw ParseError("IDX image dimensions are zero", 8);

    const std::size_t pixel_count = static_cast<std::size_t>(rows) * cols;
    if (ib.size() < 16 + static_cast<std::size_t>(n_images) * pixel_count)
        throw TruncatedFileError("truncated IDX image data in " + images_path.string());
    if (lb.size() < 8 + n_labels)
        throw TruncatedFileError("truncated IDX label data in " + labels_path.string());

    LabeledDataset out;
    out.name = images_path.filename().string();
    out.samples.reserve(n_images);
    for (std::uint32_t s = 0; s < n_images; ++s) {
        GrayImage g(static_cast<int>(rows), static_cast<int>(cols));
        const std::size_t base = 16 + static_cast<std::size_t>(s) * pixel_count;
        for (std::size_t i = 0; i < pixel_count; ++i)
            g.pixels()[i] = static_cast<std::uint8_t>(ib[base + i]);
        LabeledSample sample;
        sample.image = binarize(g, threshold, polarity);
        sample.label = static_cast<unsigned char>(lb[8 + s]);
        if (sample.label >= out.class_count) out.class_count = sample.label + 1;
        out.samples.push_back(std::move(sample));
    }
    return out;
}

void save_idx_pair(const LabeledDataset& data, const std::filesystem::path& images_path,
                   const std::filesystem::path& labels_path) {
    int rows = 0, cols = 0;
    if (!data.empty()) {
        rows = data.samples.front().image.rows();
        cols = data.samples.front().image.cols();
    }
    std::string ib, lb;
    append_be32(ib, kImagesMagic);
    append_be32(ib, static_cast<std::uint32_t>(data.size()));
    append_be32(ib, static_cast<std::uint32_t>(rows));
    append_be32(ib, static_cast<std::uint32_t>(cols));
    append_be32(lb, kLabelsMagic);
    append_be32(lb, static_cast<std::uint32_t>(data.size()));
    for (const auto& s : data.samples) {
        if (s.image.rows() != rows || s.image.cols() != cols)
            throw DimensionMismatchError("IDX export requires uniform image dimensions");
        // Foreground stored as 0 (ink-dark) so a dark-foreground reload round-trips.
        for (std::uint8_t p : s.image.pixels()) ib.push_back(p ? '\x00' : '\xff');
        lb.push_back(static_cast<char>(s.label));
    }
    write_file(images_path, ib);
    write_file(labels_path, lb);
}

LabeledDataset load_manifest(const std::filesystem::path& dir,
                             const std::filesystem::path& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw MissingFileError("cannot open manifest: " + manifest_path.string());

    LabeledDataset out;
    out.name = manifest_path.filename().string();
    std::string line;
    int row_number = 0;
    while (std::getline(in, line)) {
        ++row_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw ParseError("manifest row " + std::to_string(row_number) +
                                 " is missing the label column",
                             0);
        const std::string filename = line.substr(0, comma);
        int label = 0;
        try {
            label = std::stoi(line.substr(comma + 1));
        } catch (const std::exception&) {
            throw ParseError("manifest row " + std::to_string(row_number) +
                                 " has a non-numeric label",
                             0);
        }
        const std::filesystem::path file = dir / filename;
        if (!std::filesystem::exists(file))
            throw MissingFileError("manifest row " + std::to_string(row_number) +
                                   " references missing file: " + file.string());
        out.samples.push_back(LabeledSample{load_pbm(file), label});
    }
    for (const auto& s : out.samples) {
        if (s.label < 0)
            throw ParseError("manifest label " + std::to_string(s.label) + " is negative", 0);
        if (s.label >= out.class_count) out.class_count = s.label + 1;
    }
    return out;
}

void save_manifest_dir(const LabeledDataset& data, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::ostringstream manifest;
    for (std::size_t i = 0; i < data.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "%05zu_%d.pbm", i, data.samples[i].label);
        save_pbm(data.samples[i].image, dir / name);
        manifest << name << ',' << data.samples[i].label << '\n';
    }
    write_file(dir / "manifest.csv", manifest.str());
}

} // namespace cprec
