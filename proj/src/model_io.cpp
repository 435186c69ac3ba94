#include "cprec/model_io.hpp"

#include <cstdio>
#include <sstream>

namespace cprec {

namespace {

void put_double(std::ostream& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << buf;
}

void put_matrix(std::ostream& out, const FeatureMatrix& m) {
    out << "matrix " << (m.is_bit() ? "bit" : "real") << ' ' << m.size() << ' ' << m.dim()
        << ' ' << m.class_count() << '\n';
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) out << ' ';
        out << m.label(i);
    }
    out << '\n';
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m.is_bit()) {
            const auto& row = m.bit_row(i);
            for (std::size_t b = 0; b < row.bit_length(); ++b) {
                if (b) out << ' ';
                out << (row.test(b) ? '1' : '0');
            }
        } else {
            const auto& row = m.real_row(i);
            for (std::size_t j = 0; j < row.size(); ++j) {
                if (j) out << ' ';
                put_double(out, row[j]);
            }
        }
        out << '\n';
    }
}

FeatureMatrix get_matrix(std::istream& in) {
    std::string tag, kind;
    std::size_t n, dim;
    int classes;
    if (!(in >> tag >> kind >> n >> dim >> classes) || tag != "matrix")
        throw ParseError("bad model matrix header", 0);
    std::vector<int> labels(n);
    for (auto& l : labels)
        if (!(in >> l)) throw ParseError("truncated model labels", 0);
    if (kind == "bit") {
        std::vector<BitFeatureVector> rows(n, BitFeatureVector(dim));
        for (auto& row : rows)
            for (std::size_t b = 0; b < dim; ++b) {
                int bit;
                if (!(in >> bit)) throw ParseError("truncated model bit rows", 0);
                if (bit) row.set(b);
            }
        return FeatureMatrix::from_bits(std::move(rows), std::move(labels), classes);
    }
    std::vector<std::vector<double>> rows(n, std::vector<double>(dim));
    for (auto& row : rows)
        for (auto& v : row)
            if (!(in >> v)) throw ParseError("truncated model real rows", 0);
    return FeatureMatrix::from_real(std::move(rows), std::move(labels), classes);
}

void put_values(std::ostream& out, const std::vector<double>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out << ' ';
        put_double(out, v[i]);
    }
    out << '\n';
}

void get_values(std::istream& in, std::vector<double>& v, std::size_t n) {
    v.resize(n);
    for (auto& x : v)
        if (!(in >> x)) throw ParseError("truncated model weights", 0);
}

} // namespace

std::string to_text(const KnnModel& model) {
    std::ostringstream out;
    out << "knn " << model.k << ' '
        << (model.metric == Metric::hamming ? "hamming" : "euclidean") << '\n';
    put_matrix(out, model.training);
    return out.str();
}

KnnModel parse_knn_model(const std::string& text) {
    std::istringstream in(text);
    std::string tag, metric;
    int k;
    if (!(in >> tag >> k >> metric) || tag != "knn")
        throw ParseError("bad knn model header", 0);
    return knn_train(get_matrix(in), k,
                     metric == "hamming" ? Metric::hamming : Metric::euclidean);
}

std::string to_text(const PnnModel& model) {
    std::ostringstream out;
    out << "pnn ";
    put_double(out, model.spread);
    out << '\n';
    put_matrix(out, model.training);
    return out.str();
}

PnnModel parse_pnn_model(const std::string& text) {
    std::istringstream in(text);
    std::string tag;
    double spread;
    if (!(in >> tag >> spread) || tag != "pnn")
        throw ParseError("bad pnn model header", 0);
    return pnn_train(get_matrix(in), spread);
}

std::string to_text(const FbpnModel& model) {
    std::ostringstream out;
    out << "fbpn " << model.input_dim << ' ' << model.hidden_count << ' ' << model.output_dim
        << '\n';
    put_values(out, model.w1);
    put_values(out, model.b1);
    put_values(out, model.w2);
    put_values(out, model.b2);
    return out.str();
}

FbpnModel parse_fbpn_model(const std::string& text) {
    std::istringstream in(text);
    std::string tag;
    FbpnModel m;
    if (!(in >> tag >> m.input_dim >> m.hidden_count >> m.output_dim) || tag != "fbpn")
        throw ParseError("bad fbpn model header", 0);
    get_values(in, m.w1, static_cast<std::size_t>(m.hidden_count) * m.input_dim);
    get_values(in, m.b1, static_cast<std::size_t>(m.hidden_count));
    get_values(in, m.w2, static_cast<std::size_t>(m.output_dim) * m.hidden_count);
    get_values(in, m.b2, static_cast<std::size_t>(m.output_dim));
    return m;
}

} // namespace cprec
