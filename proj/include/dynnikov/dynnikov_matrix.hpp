#pragma once

#include <cstdint>
#include <vector>

#include "dynnikov/braid.hpp"
#include "dynnikov/coords.hpp"
#include "dynnikov/matrix.hpp"
#include "dynnikov/update_rules.hpp"

namespace dyn {

struct IterationOptions {
    std::vector<unsigned> ladder{53, 128, 256, 512};
    int max_iters = 5000;
    std::uint64_t seed = 1;
    double tol = 0;              // > 0 overrides the per-rung tolerance
    double probe_radius = 1e-6;  // relative to the fixed direction's sup norm
    int axis_factor = 2;         // axis probes = axis_factor * (2n-4)
    int random_factor = 8;       // random probes = random_factor * (2n-4)
    unsigned probe_bits = 256;   // minimum precision for probes

    void validate() const;
};

double rung_tolerance(unsigned bits);

struct UnstableDirection {
    DynnikovVector<mpf_class> point;  // sup norm 1, no sign change
    mpf_class lambda;
    int iterations = 0;
    unsigned precision = 0;
    double tolerance = 0;
    BranchSignature signature;
};

UnstableDirection find_unstable_direction(const BraidWord& w, const IterationOptions& opts = {});
UnstableDirection stable_direction(const BraidWord& w, const IterationOptions& opts = {});

struct DynnikovMatrix {
    IntMatrix matrix;
    std::vector<std::vector<mpz_class>> region;  // c . x >= 0
    BranchSignature signature;
};

std::vector<DynnikovMatrix> dynnikov_matrices(const BraidWord& w, const IterationOptions& opts = {});
std::vector<DynnikovMatrix> dynnikov_matrices(const BraidWord& w, const UnstableDirection& u,
                                              const IterationOptions& opts = {});

// Closure membership of a point in a region, relative tolerance per constraint.
bool region_contains(const std::vector<std::vector<mpz_class>>& region, const std::vector<mpf_class>& p,
                     double tol);

struct Arc {
    double start = 0, end = 0;  // angles of (a, b) in [0, 2pi); end < start means the arc wraps
    IntMatrix matrix;
    bool full_circle = false;
};

// Directions parametrised by the boundary of the square [-1,1]^2, exact rational probes.
std::vector<Arc> enumerate_regions_n3(const BraidWord& w, int grid = 2048, int depth = 48);
IntMatrix matrix_at_direction(const BraidWord& w, double angle);

}  // namespace dyn
