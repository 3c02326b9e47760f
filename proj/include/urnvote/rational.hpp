#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace urnvote {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& r) { return static_cast<double>(r); }

/// Exact conversion: every finite double is a dyadic rational.
Rat rat_from_double(double x);

/// Parses "a/b", "a", or a decimal literal like "0.25" (parsed exactly).
Rat rat_from_string(const std::string& s);

/// Canonical "num/den" form ("num" when den == 1).
std::string rat_to_string(const Rat& r);

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

BigInt binomial(unsigned n, unsigned k);

std::vector<double> to_doubles(const std::vector<Rat>& v);

}  // namespace urnvote
