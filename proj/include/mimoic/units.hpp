#pragma once

#include <cmath>

namespace mimoic {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

} // namespace mimoic
