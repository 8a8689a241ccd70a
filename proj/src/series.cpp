#include "dpcp/series.hpp"

#include <cmath>
#include <string>

#include "dpcp/errors.hpp"

namespace dpcp {

void TimeSeries::validate() const {
  if (values.empty()) throw InvalidInput("time series is empty");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) throw InvalidInput("non-finite value at position " + std::to_string(i + 1));
  }
  if (!time_labels.empty() && time_labels.size() != values.size()) {
    throw InvalidInput("time label count does not match value count");
  }
}

}  // namespace dpcp
