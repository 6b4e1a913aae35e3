#pragma once

#include <stdexcept>
#include <string>

namespace kkp {

// Bad input: malformed files, out-of-domain parameters, unsatisfiable requests.
// The CLI maps this to exit code 1.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Broken internal invariant. The CLI maps this to exit code 2.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

inline void internal_check(bool ok, const std::string& what) {
    if (!ok) throw InternalError(what);
}

inline void require(bool ok, const std::string& what) {
    if (!ok) throw InputError(what);
}

} // namespace kkp
