#pragma once

#include <string>
#include <vector>

#include "siegel/rotation.hpp"
#include "siegel/sphere.hpp"

namespace siegel::cli {

// Complex literals in the shell-safe form "a+bi" / "a-bi" (no spaces);
// pure-real "a" and pure-imaginary "bi" are accepted too.
cplx parse_complex(const std::string& text);
std::string format_complex(cplx z);

// Rotation-number spec "pre:period" with comma-separated partial quotients,
// e.g. "20:1" for [0; 20, 1, 1, 1, ...] or ":1" for the golden number.
RotationNumber parse_theta_cf(const std::string& text);

// Entry point behind the binary: argv without the program name.
int dispatch(const std::vector<std::string>& args);

}  // namespace siegel::cli
