#include "dynnikov/scalar.hpp"

#include <cstdio>

#include "dynnikov/coords.hpp"
#include "dynnikov/errors.hpp"

namespace dyn {

std::string to_string(const mpf_class& f, int digits) {
    mp_exp_t exp = 0;
    std::string mant = f.get_str(exp, 10, std::size_t(digits));
    if (mant.empty()) return "0";
    bool neg = mant[0] == '-';
    if (neg) mant.erase(0, 1);
    std::string out;
    if (exp > 0 && exp <= digits) {
        if (mant.size() < std::size_t(exp)) mant.append(std::size_t(exp) - mant.size(), '0');
        out = mant.substr(0, std::size_t(exp));
        std::string frac = mant.substr(std::size_t(exp));
        if (!frac.empty()) out += "." + frac;
    } else if (exp <= 0 && exp > -digits) {
        out = "0." + std::string(std::size_t(-exp), '0') + mant;
    } else {
        out = mant.substr(0, 1);
        if (mant.size() > 1) out += "." + mant.substr(1);
        out += "e" + std::to_string(long(exp) - 1);
    }
    return neg ? "-" + out : out;
}

std::string to_string(double d, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, d);
    return buf;
}

mpq_class parse_rational(const std::string& s) {
    std::string t;
    for (char c : s)
        if (c != ' ') t += c;
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    auto dot = t.find('.');
    auto e = t.find_first_of("eE");
    try {
        if (dot == std::string::npos && e == std::string::npos) {
            mpq_class q(t, 10);
            q.canonicalize();
            if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
            return q;
        }
        // Decimal literal: exact conversion of the written digits.
        std::string mant = e == std::string::npos ? t : t.substr(0, e);
        long ex = e == std::string::npos ? 0 : std::stol(t.substr(e + 1));
        bool neg = !mant.empty() && mant[0] == '-';
        if (neg) mant.erase(0, 1);
        auto d = mant.find('.');
        std::string digits = mant;
        if (d != std::string::npos) {
            ex -= long(mant.size() - d - 1);
            digits = mant.substr(0, d) + mant.substr(d + 1);
        }
        if (digits.empty()) throw ParseError("empty number");
        mpz_class num(digits, 10), ten = 10, p;
        mpz_pow_ui(p.get_mpz_t(), ten.get_mpz_t(), (unsigned long)(ex < 0 ? -ex : ex));
        mpq_class q = ex < 0 ? mpq_class(num, p) : mpq_class(num * p);
        q.canonicalize();
        return neg ? mpq_class(-q) : q;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("bad number '" + s + "'");
    }
}

std::vector<double> to_doubles(const DynnikovVector<mpf_class>& v) {
    std::vector<double> out;
    for (const auto& e : v.x) out.push_back(e.get_d());
    return out;
}

std::vector<double> to_doubles(const DynnikovVector<mpq_class>& v) {
    std::vector<double> out;
    for (const auto& e : v.x) out.push_back(e.get_d());
    return out;
}

}  // namespace dyn
