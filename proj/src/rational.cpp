#include "kkp/rational.hpp"

#include <cctype>

namespace kkp {

Rat parse_ratio(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            Rat q{Int(text)};
            q.canonicalize();
            return q;
        }
        Int num(text.substr(0, slash));
        Int den(text.substr(slash + 1));
        require(den != 0, "ratio '" + text + "' has zero denominator");
        Rat q(num, den);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw InputError("cannot parse ratio '" + text + "' (expected N or N/D)");
    }
}

Rat pow_rat(const Rat& base, std::uint64_t exp) {
    Rat result = 1;
    Rat b = base;
    while (exp != 0) {
        if (exp & 1) result *= b;
        b *= b;
        exp >>= 1;
    }
    return result;
}

std::string to_string(const Rat& q) {
    return q.get_str();
}

} // namespace kkp
