#pragma once

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gti/group.hpp"

namespace gti {

struct FrameBounds {
    double lower = 0;
    double upper = 0;
};

/// One evaluated entry of a characterizing-equation table. The labels are
/// coordinate tuples; for Gabor time-side checks alpha and omega live in the
/// group itself rather than the dual.
struct TAlphaEntry {
    Element alpha;
    Element omega;
    cplx t;
    double residual;
};

struct TAlphaReport {
    std::string condition;
    double tolerance = 0;
    double max_residual = 0;
    bool pass = false;
    double lic_sum_g = 0;  // finite discrete local-integrability sums,
    double lic_sum_h = 0;  // recorded for transparency
    std::vector<TAlphaEntry> entries;  // lexicographic in alpha, then omega
};

/// Per-layer term sequence of a summability condition.
struct ConditionReport {
    std::string condition;
    std::vector<double> terms;
    std::vector<double> partial_sums;
    bool divergence_flag = false;
    std::vector<std::pair<Element, double>> value_at;  // optional per-omega values
};

/// Final outcome of a verification command.
struct Verdict {
    std::string condition;
    bool pass = false;
    double max_residual = 0;
    double tolerance = 0;
    std::optional<FrameBounds> bounds;
    std::optional<double> spectral_residual;
    std::vector<std::pair<std::string, double>> extras;
    std::optional<TAlphaReport> talpha_details;
    std::string command;       // provenance, filled by the CLI
    std::string input_digest;  // provenance, filled by the CLI
};

}  // namespace gti
