#include "dynnikov/update_rules.hpp"

#include <algorithm>

namespace dyn {

std::vector<mpz_class> pull_back(const std::vector<long>& c, const IntMatrix& m) {
    std::vector<mpz_class> out(m.cols(), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) out[j] += c[i] * m(i, j);
    }
    return out;
}

void add_constraint(std::vector<std::vector<mpz_class>>& region, std::vector<mpz_class> c) {
    mpz_class g = 0;
    for (const auto& e : c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t());
    if (g == 0) return;
    if (g != 1)
        for (auto& e : c) e /= g;
    if (std::find(region.begin(), region.end(), c) == region.end()) region.push_back(std::move(c));
}

}  // namespace dyn
