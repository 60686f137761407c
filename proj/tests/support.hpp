#pragma once

#include <cmath>

#include "doctest.h"
#include "teich/grid.hpp"

namespace teich::test {

// Grid shared by the unit tests; the solver-heavy checks use the default.
inline const GridSpec& grid() {
    static const GridSpec g = GridSpec::standard();
    return g;
}

inline const GridSpec& coarse() {
    static const GridSpec g = GridSpec::standard(128);
    return g;
}

inline double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace teich::test
