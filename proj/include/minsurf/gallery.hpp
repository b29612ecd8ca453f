#pragma once

#include "minsurf/curve_spec.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace minsurf {

struct ExpectedFacts {
    int d = 1;
    std::optional<int> genus;
    std::optional<int> r;
    std::optional<int> s;
    std::optional<int> finite_flat_points;
    std::vector<std::pair<int, int>> census;   // all (k, l) over the zero section, sorted
    std::optional<bool> real_periods_vanish;
    std::optional<std::string> lattice_verdict;
    std::optional<int> imaginary_rank;
    std::optional<bool> meeks_symmetric;
    bool validates = true;
    double total_curvature = 0.0;
};

struct GalleryEntry {
    std::string name;
    CurveSpec spec;
    ExpectedFacts expected;
    std::vector<std::string> notes;
    bool flagged = false;
};

struct GalleryParams {
    std::optional<double> theta;               // associated
    std::optional<int> a, b;                   // bour
    std::optional<Complex> c;                  // bour, costa
    std::optional<std::vector<Complex>> f0;    // hyperelliptic, ascending coefficients
    std::optional<unsigned> seed;              // hyperelliptic, random simple roots
    std::optional<std::vector<Complex>> meeks; // hyperelliptic, product form roots a_j
    std::string variant;                       // schwarz: "printed" or "symmetric"
};

/// Throws UnknownName, InvalidParams.
GalleryEntry get_example(const std::string& name, const GalleryParams& params = {});

/// Accepts "name" or "name(arg, ...)": associated(theta), bour(a, b[, c]),
/// costa(c), hyperelliptic(seed=N | meeks | c0, c1, ...), schwarz(printed | symmetric).
GalleryEntry parse_example(std::string_view call);

/// Names with their parameter syntax.
std::vector<std::string> gallery_names();

}  // namespace minsurf
