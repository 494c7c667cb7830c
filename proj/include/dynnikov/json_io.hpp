#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dynnikov/coords.hpp"
#include "dynnikov/dynnikov_matrix.hpp"
#include "dynnikov/matrix.hpp"
#include "dynnikov/polynomial.hpp"
#include "dynnikov/spectral.hpp"

namespace dyn {

// Big integers and rationals travel as decimal strings; plain JSON integers are accepted on input.
mpz_class json_integer(const nlohmann::json& v);
mpq_class json_rational(const nlohmann::json& v);

// Either a bare array of rows or {"matrix": rows}.
IntMatrix load_int_matrix(const nlohmann::json& doc);
RatMatrix load_rat_matrix(const nlohmann::json& doc);
// null entries become unknowns.
std::vector<std::vector<std::optional<mpq_class>>> load_partial_matrix(const nlohmann::json& doc);

nlohmann::json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);

nlohmann::json to_json(const IntMatrix& m);
nlohmann::json to_json(const RatMatrix& m);
nlohmann::json to_json(const Poly& p);
nlohmann::json to_json(const std::vector<std::vector<mpz_class>>& rows);
nlohmann::json to_json(const SpectrumReport& r);
nlohmann::json to_json(const DynnikovMatrix& d);
nlohmann::json to_json(const Arc& a);

template <class S>
nlohmann::json to_json(const DynnikovVector<S>& v, int digits = 30) {
    auto j = nlohmann::json::array();
    for (const auto& e : v.x) {
        if constexpr (std::is_same_v<S, mpf_class>) j.push_back(to_string(e, digits));
        else j.push_back(to_string(e));
    }
    return j;
}

// "[-1,-1,0,-1]", "-1,-1,0,-1" or "-1 -1 0 -1"; entries may be rationals p/q.
std::vector<mpq_class> parse_vector_text(const std::string& text);

}  // namespace dyn
