#pragma once

namespace qreset {

inline constexpr double HERMITICITY_TOL = 1e-10;
inline constexpr double DENSITY_TOL = 1e-8;
inline constexpr double EQUALITY_TOL = 1e-9;

}
