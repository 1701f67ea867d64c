#pragma once

#include <boost/rational.hpp>
#include <string>
#include <vector>

#include "tropmod/error.hpp"

namespace tropmod {

using Int = long long;
using Rat = boost::rational<Int>;
using VecQ = std::vector<Rat>;

// Parses "p", "-p" or "p/q" with q > 0 after normalization.
Rat parse_rational(const std::string& s);

// Parses a comma-separated list, e.g. "1,1,3/4,3/4,1/4".
VecQ parse_rational_list(const std::string& s);

std::string to_string(const Rat& r);
std::string to_string(const VecQ& v);

}  // namespace tropmod
