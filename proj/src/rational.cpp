#include "padelab/rational.hpp"

#include <cmath>
#include <stdexcept>

#include "padelab/errors.hpp"

namespace padelab {

Rational rational_from_string(const std::string& s) {
    if (s.empty()) throw ConfigError("empty rational literal");
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        // decimal literal: shift the point away
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        size_t frac_len = s.size() - dot - 1;
        if (digits.empty() || digits == "-" || digits == "+")
            throw ConfigError("bad rational literal: " + s);
        try {
            Integer num(digits);
            Integer den(1);
            for (size_t i = 0; i < frac_len; ++i) den *= 10;
            Rational q(num, den);
            q.canonicalize();
            return q;
        } catch (const std::invalid_argument&) {
            throw ConfigError("bad rational literal: " + s);
        }
    }
    try {
        Rational q(s);
        q.canonicalize();
        if (sgn(q.get_den()) <= 0) throw ConfigError("nonpositive denominator: " + s);
        return q;
    } catch (const std::invalid_argument&) {
        throw ConfigError("bad rational literal: " + s);
    }
}

std::string rational_to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double log2_abs(const Rational& q) {
    if (is_zero(q)) throw DomainError("log2_abs of zero");
    long en = 0, ed = 0;
    double mn = mpz_get_d_2exp(&en, q.get_num().get_mpz_t());
    double md = mpz_get_d_2exp(&ed, q.get_den().get_mpz_t());
    return (std::log2(std::fabs(mn)) + static_cast<double>(en)) -
           (std::log2(std::fabs(md)) + static_cast<double>(ed));
}

double nth_root_abs(const Rational& q, long n) {
    if (n <= 0) throw DomainError("nth_root_abs needs n >= 1");
    if (is_zero(q)) return 0.0;
    return std::exp2(log2_abs(q) / static_cast<double>(n));
}

Rational pow_rational(const Rational& base, unsigned long e) {
    Rational r(1);
    Rational b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

} // namespace padelab
