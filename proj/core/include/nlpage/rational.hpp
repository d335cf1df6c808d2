#ifndef NLPAGE_RATIONAL_HPP
#define NLPAGE_RATIONAL_HPP

#include <boost/rational.hpp>
#include <cstdint>
#include <string>

namespace nlpage {

// Exact arithmetic for the deterministic primal-dual run and for ratios.
// All quantities there are sums/mins of integer costs, so int64 components
// are ample at desk scale.
using Rat = boost::rational<long long>;

inline double to_double(const Rat& r) { return boost::rational_cast<double>(r); }
inline double to_double(double v) { return v; }

inline std::string rat_to_string(const Rat& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace nlpage

#endif
