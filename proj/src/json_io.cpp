#include "dynnikov/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace dyn {

using nlohmann::json;

mpz_class json_integer(const json& v) {
    if (v.is_number_integer()) return mpz_class(v.get<long>());
    if (v.is_number_unsigned()) return mpz_class(std::to_string(v.get<unsigned long>()));
    if (v.is_string()) {
        mpz_class z;
        if (z.set_str(v.get<std::string>(), 10) != 0) throw ParseError("bad integer '" + v.get<std::string>() + "'");
        return z;
    }
    throw ParseError("expected an integer, got " + v.dump());
}

mpq_class json_rational(const json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer() || v.is_number_unsigned()) return mpq_class(json_integer(v));
    if (v.is_number_float()) {
        double d = v.get<double>();
        if (d != double(long(d))) throw ParseError("non-integral float " + v.dump() + "; write rationals as \"p/q\"");
        return mpq_class(long(d));
    }
    throw ParseError("expected a rational, got " + v.dump());
}

namespace {

const json& rows_of(const json& doc) {
    const json& rows = doc.is_object() ? doc.at("matrix") : doc;
    if (!rows.is_array() || rows.empty()) throw ParseError("matrix must be a nonempty array of rows");
    std::size_t c = 0;
    for (const auto& r : rows) {
        if (!r.is_array() || r.empty()) throw ParseError("matrix rows must be nonempty arrays");
        if (c && r.size() != c) throw ParseError("ragged matrix");
        c = r.size();
    }
    return rows;
}

template <class T, class F>
Matrix<T> load_matrix(const json& doc, F conv) {
    const json& rows = rows_of(doc);
    Matrix<T> m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = conv(rows[i][j]);
    return m;
}

template <class T>
json matrix_json(const Matrix<T>& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j).get_str());
        rows.push_back(std::move(r));
    }
    return rows;
}

json factors_json(const std::vector<StrippedFactor>& fs) {
    json out = json::array();
    for (const auto& f : fs) {
        json j{{"kind", f.kind}, {"multiplicity", f.multiplicity}};
        if (f.kind == "Phi") j["d"] = f.d;
        out.push_back(std::move(j));
    }
    return out;
}

}  // namespace

IntMatrix load_int_matrix(const json& doc) {
    try {
        return load_matrix<mpz_class>(doc, json_integer);
    } catch (const json::exception& e) {
        throw ParseError(e.what());
    }
}

RatMatrix load_rat_matrix(const json& doc) {
    try {
        return load_matrix<mpq_class>(doc, json_rational);
    } catch (const json::exception& e) {
        throw ParseError(e.what());
    }
}

std::vector<std::vector<std::optional<mpq_class>>> load_partial_matrix(const json& doc) {
    const json& rows = rows_of(doc);
    std::vector<std::vector<std::optional<mpq_class>>> out;
    for (const auto& r : rows) {
        auto& row = out.emplace_back();
        for (const auto& e : r) {
            if (e.is_null()) row.emplace_back();
            else row.emplace_back(json_rational(e));
        }
    }
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

json read_json_file(const std::string& path) {
    try {
        return json::parse(read_text_file(path));
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

json to_json(const IntMatrix& m) { return matrix_json(m); }
json to_json(const RatMatrix& m) { return matrix_json(m); }

json to_json(const Poly& p) {
    return json{{"coefficients", coefficient_strings(p)}, {"text", to_string(p)}};
}

json to_json(const std::vector<std::vector<mpz_class>>& rows) {
    json out = json::array();
    for (const auto& r : rows) {
        json j = json::array();
        for (const auto& e : r) j.push_back(e.get_str());
        out.push_back(std::move(j));
    }
    return out;
}

json to_json(const SpectrumReport& r) {
    return json{{"mode", to_string(r.mode)},
                {"isospectral", r.isospectral},
                {"char_poly", {to_json(r.poly1), to_json(r.poly2)}},
                {"stripped", {to_json(r.stripped1), to_json(r.stripped2)}},
                {"factors", {factors_json(r.factors1), factors_json(r.factors2)}}};
}

json to_json(const DynnikovMatrix& d) {
    return json{{"matrix", to_json(d.matrix)}, {"region", to_json(d.region)}};
}

json to_json(const Arc& a) {
    json j{{"matrix", to_json(a.matrix)}, {"full_circle", a.full_circle}};
    if (!a.full_circle) {
        j["start"] = a.start;
        j["end"] = a.end;
    }
    return j;
}

std::vector<mpq_class> parse_vector_text(const std::string& text) {
    std::string s = text;
    std::size_t b = s.find_first_not_of(" \t");
    std::size_t e = s.find_last_not_of(" \t");
    if (b == std::string::npos) throw ParseError("empty vector");
    s = s.substr(b, e - b + 1);
    if (s.front() == '[' || s.front() == '(') {
        char close = s.front() == '[' ? ']' : ')';
        if (s.back() != close) throw ParseError("unbalanced brackets in vector '" + text + "'");
        s = s.substr(1, s.size() - 2);
    }
    for (char& c : s)
        if (c == ',') c = ' ';
    std::istringstream in(s);
    std::vector<mpq_class> out;
    std::string tok;
    std::size_t commas = std::size_t(std::count(text.begin(), text.end(), ','));
    while (in >> tok) out.push_back(parse_rational(tok));
    if (out.empty()) throw ParseError("empty vector");
    if (commas && commas + 1 != out.size()) throw ParseError("malformed vector '" + text + "'");
    return out;
}

}  // namespace dyn
