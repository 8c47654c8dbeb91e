#include "padelab/polynomial.hpp"

#include <sstream>

#include "padelab/errors.hpp"

namespace padelab {

namespace {
const Rational kZero(0);
}

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial::Polynomial(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

Polynomial Polynomial::monomial(long k, const Rational& c) {
    if (padelab::is_zero(c)) return Polynomial();
    std::vector<Rational> v(static_cast<size_t>(k) + 1, Rational(0));
    v.back() = c;
    return Polynomial(std::move(v));
}

void Polynomial::trim() {
    while (!c_.empty() && padelab::is_zero(c_.back())) c_.pop_back();
}

const Rational& Polynomial::coeff(long k) const {
    if (k < 0 || k >= static_cast<long>(c_.size())) return kZero;
    return c_[static_cast<size_t>(k)];
}

Rational Polynomial::eval(const Rational& x) const {
    Rational acc(0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

HPComplex Polynomial::eval(const HPComplex& z) const {
    HPComplex acc = HPComplex::zero();
    for (size_t i = c_.size(); i-- > 0;) acc = acc * z + HPComplex(c_[i]);
    return acc;
}

Polynomial Polynomial::truncated(long max_degree) const {
    if (max_degree < 0) return Polynomial();
    if (degree() <= max_degree) return *this;
    std::vector<Rational> v(c_.begin(), c_.begin() + max_degree + 1);
    return Polynomial(std::move(v));
}

Polynomial Polynomial::derivative() const {
    if (c_.size() <= 1) return Polynomial();
    std::vector<Rational> v(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * Rational(static_cast<long>(i));
    return Polynomial(std::move(v));
}

Polynomial Polynomial::shifted(long k) const {
    if (is_zero() || k == 0) return *this;
    std::vector<Rational> v(static_cast<size_t>(k), Rational(0));
    v.insert(v.end(), c_.begin(), c_.end());
    return Polynomial(std::move(v));
}

Polynomial Polynomial::scaled(const Rational& s) const {
    if (padelab::is_zero(s)) return Polynomial();
    std::vector<Rational> v(c_);
    for (auto& x : v) x *= s;
    return Polynomial(std::move(v));
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return Polynomial();
    return scaled(Rational(1) / leading());
}

std::string Polynomial::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (padelab::is_zero(c_[i])) continue;
        if (!first) os << " + ";
        os << rational_to_string(c_[i]);
        if (i > 0) os << "*z^" << i;
        first = false;
    }
    return os.str();
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
    return Polynomial(std::move(v));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) v[i] -= b.c_[i];
    return Polynomial(std::move(v));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::vector<Rational> v(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (padelab::is_zero(a.c_[i])) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(v));
}

Polynomial pow(const Polynomial& p, unsigned long e) {
    Polynomial r{Rational(1)};
    Polynomial b = p;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

PolyDivMod divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    std::vector<Rational> rem(a.coeffs());
    long db = b.degree();
    long da = a.degree();
    if (da < db) return {Polynomial(), a};
    std::vector<Rational> quot(static_cast<size_t>(da - db) + 1, Rational(0));
    const Rational lead = b.leading();
    for (long k = da; k >= db; --k) {
        Rational& top = rem[static_cast<size_t>(k)];
        if (is_zero(top)) continue;
        Rational f = top / lead;
        quot[static_cast<size_t>(k - db)] = f;
        for (long j = 0; j <= db; ++j)
            rem[static_cast<size_t>(k - db + j)] -= f * b.coeff(j);
    }
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    Polynomial x = a.monic(), y = b.monic();
    while (!y.is_zero()) {
        Polynomial r = divmod(x, y).rem;
        x = y;
        y = r.monic();
    }
    return x;
}

Polynomial exact_div(const Polynomial& a, const Polynomial& b) {
    auto dm = divmod(a, b);
    if (!dm.rem.is_zero()) throw InvariantViolation("polynomial division not exact");
    return dm.quot;
}

HPPoly::HPPoly(const Polynomial& p) {
    c_.reserve(p.coeffs().size());
    for (const auto& q : p.coeffs()) c_.emplace_back(q);
}

HPComplex HPPoly::eval(const HPComplex& z) const {
    HPComplex acc = HPComplex::zero();
    for (size_t i = c_.size(); i-- > 0;) acc = acc * z + c_[i];
    return acc;
}

} // namespace padelab
