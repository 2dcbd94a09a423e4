#pragma once

#include <span>

#include "config.hpp"

namespace fenchel::cli {

inline constexpr int kSchemaVersion = 1;

/// Finite numbers as-is, +∞ as "inf", −∞ as "-inf", NaN as "nan".
json number(double x);
json numbers(std::span<const double> xs);
json to_json(const Vector& v);
json to_json(const Matrix& m);
json to_json(const QuadraticFn& q);
json to_json(const ResidualReport& r);
json to_json(const Classification& c);
json to_json(const Tolerances& t);
json to_json(const GapReport& g);
json to_json(const ConstructionFailure& f);

} // namespace fenchel::cli
