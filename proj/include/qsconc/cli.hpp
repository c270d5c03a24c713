#pragma once

#include <ostream>
#include <string>

namespace qsc::cli {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int {
    kOk = 0,
    kValidation = 2,
    kParameters = 3,
    kNumerical = 4,
};

struct SweepSpec {
    double start = 0.0;
    double stop = 1.0;
    double step = 0.01;
    int count() const; // grid points start + k*step <= stop
    double at(int k) const { return start + k * step; }
};

/// "START:STOP:STEP"; throws qsc::Error(RangeError) when malformed.
SweepSpec parse_sweep(const std::string& text);

/// 12 significant digits, "nan" for NaN.
std::string format_real(double x);

int run(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace qsc::cli
