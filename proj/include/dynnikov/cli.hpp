#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "dynnikov/braid.hpp"
#include "dynnikov/dynnikov_matrix.hpp"

namespace dyn {

enum ExitCode { kOk = 0, kFailure = 1, kUsage = 2, kNonConvergence = 3, kVerificationFailed = 4 };

struct RunConfig {
    std::vector<unsigned> ladder{53, 128, 256, 512};
    double tol = 0;
    int max_iters = 5000;
    double probe_radius = 1e-6;
    int axis_factor = 2;
    int random_factor = 8;
    std::uint64_t seed = 1;
    int digits = 13;
    bool json = true;
    int jobs = 1;

    void validate() const;
    IterationOptions iteration() const;
};

// One record of the batch command; errors are reported in the record, not thrown.
nlohmann::json analyse_braid(const BraidWord& w, const RunConfig& cfg);
std::vector<nlohmann::json> run_batch(const std::vector<BraidWord>& braids, const RunConfig& cfg);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dyn
