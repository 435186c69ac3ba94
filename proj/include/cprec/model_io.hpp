#ifndef CPREC_MODEL_IO_HPP
#define CPREC_MODEL_IO_HPP

#include <string>

#include "cprec/fbpn.hpp"
#include "cprec/knn.hpp"
#include "cprec/pnn.hpp"

namespace cprec {

/// Text round trip for trained models: a kind tag, dimensions and
/// parameters, then the numbers. Reals print with max_digits10, so a
/// reloaded model predicts identically on every query.
std::string to_text(const KnnModel& model);
std::string to_text(const PnnModel& model);
std::string to_text(const FbpnModel& model);

KnnModel parse_knn_model(const std::string& text);
PnnModel parse_pnn_model(const std::string& text);
FbpnModel parse_fbpn_model(const std::string& text);

} // namespace cprec

#endif // CPREC_MODEL_IO_HPP
