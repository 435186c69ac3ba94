#include "cprec/report.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

namespace cprec {

std::string emit_csv(const ExperimentReport& report) {
    std::ostringstream out;
    out << "feature,feature_params,classifier,classifier_params,accuracy,seconds\n";
    char buf[80];
    for (const auto& c : report.cells) {
        std::snprintf(buf, sizeof(buf), "%.2f,%.6f", c.accuracy_pct(), c.seconds);
        out << c.feature_id << ',' << c.feature_params << ',' << c.classifier_id << ','
            << c.classifier_params << ',' << buf << '\n';
    }
    return out.str();
}

std::string emit_markdown(const ExperimentReport& report) {
    // Column set: (classifier, subrange) pairs in first-appearance order.
    std::vector<std::pair<std::string, std::string>> columns;
    std::vector<std::string> row_order;
    std::map<std::string, std::string> row_params;
    for (const auto& c : report.cells) {
        const std::pair<std::string, std::string> col{c.classifier_id, c.subrange_label};
        if (std::find(columns.begin(), columns.end(), col) == columns.end())
            columns.push_back(col);
        if (std::find(row_order.begin(), row_order.end(), c.feature_id) == row_order.end()) {
            row_order.push_back(c.feature_id);
            row_params[c.feature_id] = c.feature_params;
        }
    }

    std::ostringstream out;
    out << "# " << report.dataset_name << " — " << report.train_size << " train / "
        << report.test_size << " test, " << report.class_count << " classes, seed "
        << report.seed << "\n\n";
    out << "| Feature | Parameter |";
    for (const auto& [cls, label] : columns) out << ' ' << cls << ' ' << label << " |";
    out << "\n|---|---|";
    for (std::size_t i = 0; i < columns.size(); ++i) out << "---|";
    out << '\n';

    char buf[32];
    for (const auto& feature : row_order) {
        out << "| " << feature << " | " << row_params[feature] << " |";
        for (const auto& [cls, label] : columns) {
            const CellResult* found = nullptr;
            for (const auto& c : report.cells)
                if (c.feature_id == feature && c.classifier_id == cls &&
                    c.subrange_label == label) {
                    found = &c;
                    break;
                }
            if (found) {
                std::snprintf(buf, sizeof(buf), " %.2f |", found->accuracy_pct());
                out << buf;
            } else {
                out << " - |";
            }
        }
        out << '\n';
    }
    return out.str();
}

double best_accuracy_for(const ExperimentReport& report, const std::string& feature_id) {
    double best = -1.0;
    for (const auto& c : report.cells)
        if (c.feature_id == feature_id) best = std::max(best, c.accuracy_pct());
    return best;
}

} // namespace cprec
