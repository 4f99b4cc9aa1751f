#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dyham/io.hpp"

namespace dyham {

// Shared knobs for the verification suites.  J_low is the coarser resolution
// used by the stability gates (empirical constants at J vs J_low must agree
// within a factor of two).
struct SuiteConfig {
    int n = 1;
    int j_min = 0;
    int J = 8;
    int J_low = 4;
    std::uint64_t seed = 42;
    int ensemble = 100;
    double theta = 0.0;
    double p = 4.0;
    double q = 2.0;
    double alpha = 0.125;
    std::string command_line;  // echoed into report metadata
};

struct CheckLine {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct SuiteResult {
    std::string suite;
    io::ReportTable table;
    std::vector<CheckLine> checks;

    bool passed() const;
    // first failing check's name, empty when green
    std::string first_failure() const;
};

// The named suites behind `verify`:
//   thm1   - square-function characterization of the Morrey norm (bands)
//   prop21 - L^q expansion identities: Parseval, localized oscillation, bands
//   thm2   - paraproduct boundedness for BMO symbols (one-sided band)
//   thm3   - fractional integral: eigen-relation, admissibility fence,
//            boundedness band, pointwise majorant
//   thm4   - commutator boundedness band
//   thm5   - single-cube testing lower bound vs BMO norm, homogeneity rows
//   thm6   - block decomposition bracket, pairing bound, single-block inputs
//   thm7   - compactness decay profiles on fixed model symbols
//   decomp - four-term commutator splitting identity
std::vector<std::string> suite_names();
SuiteResult run_suite(const std::string& name, const SuiteConfig& cfg);

}  // namespace dyham
