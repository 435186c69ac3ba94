#ifndef CPREC_REPORT_HPP
#define CPREC_REPORT_HPP

#include <string>

#include "cprec/experiment.hpp"

namespace cprec {

/// CSV with columns feature,feature_params,classifier,classifier_params,
/// accuracy,seconds. Accuracy prints with 2 decimals, seconds with 6.
std::string emit_csv(const ExperimentReport& report);

/// Markdown table in the familiar grid layout: one row per feature, one
/// column per classifier subrange, best accuracy in each cell.
std::string emit_markdown(const ExperimentReport& report);

/// Best accuracy over all cells of the given feature id; -1 if absent.
double best_accuracy_for(const ExperimentReport& report, const std::string& feature_id);

} // namespace cprec

#endif // CPREC_REPORT_HPP
