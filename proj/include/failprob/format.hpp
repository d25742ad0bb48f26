#pragma once

#include <cstdio>
#include <string>

namespace failprob {

// All floating-point output goes through this: 17 significant digits, enough
// to round-trip doubles exactly.
inline std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace failprob
