#ifndef NLPAGE_ERRORS_HPP
#define NLPAGE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nlpage {

// Bad user input: malformed files, out-of-range ids, contract violations
// at the API boundary. CLI exit code 3.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// A brute-force routine was asked to enumerate more state than its guard
// allows. CLI exit code 4.
struct guard_error : std::runtime_error {
    explicit guard_error(const std::string& what) : std::runtime_error(what) {}
};

// An algorithm invariant failed at run time, or a --verify check failed.
// CLI exit code 2.
struct invariant_error : std::runtime_error {
    explicit invariant_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nlpage

#endif
