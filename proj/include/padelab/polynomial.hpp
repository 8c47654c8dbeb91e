#ifndef PADELAB_POLYNOMIAL_HPP
#define PADELAB_POLYNOMIAL_HPP

#include <initializer_list>
#include <string>
#include <vector>

#include "padelab/hp.hpp"
#include "padelab/rational.hpp"

namespace padelab {

// Dense polynomial with exact rational coefficients, lowest degree first.
// The zero polynomial has an empty coefficient vector; otherwise the
// trailing coefficient is nonzero.  degree() of the zero polynomial is -1.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs);
    Polynomial(std::initializer_list<Rational> coeffs);
    static Polynomial monomial(long k, const Rational& c = Rational(1));

    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    // Coefficient of z^k; 0 beyond the stored range.
    const Rational& coeff(long k) const;
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

    Rational at0() const { return coeff(0); }
    Rational eval(const Rational& x) const;
    HPComplex eval(const HPComplex& z) const;

    Polynomial truncated(long max_degree) const;
    Polynomial derivative() const;
    // Multiply by z^k.
    Polynomial shifted(long k) const;
    Polynomial scaled(const Rational& s) const;
    // Leading coefficient 1 (zero polynomial stays zero).
    Polynomial monic() const;

    std::string str() const; // "c0 + c1 z + ..." with exact fractions

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

private:
    std::vector<Rational> c_;
    void trim();
};

Polynomial pow(const Polynomial& p, unsigned long e);

// Exact division with remainder over Q[z]; throws DomainError on b == 0.
struct PolyDivMod {
    Polynomial quot, rem;
};
PolyDivMod divmod(const Polynomial& a, const Polynomial& b);

// Monic gcd over Q[z]; gcd(0, b) = monic(b).
Polynomial gcd(const Polynomial& a, const Polynomial& b);

// Exact quotient; throws InvariantViolation if the division is not exact.
Polynomial exact_div(const Polynomial& a, const Polynomial& b);

// Rational coefficients rounded once to HP floats for repeated evaluation.
class HPPoly {
public:
    HPPoly() = default;
    explicit HPPoly(const Polynomial& p);
    HPComplex eval(const HPComplex& z) const;
    size_t size() const { return c_.size(); }

private:
    std::vector<HPComplex> c_;
};

} // namespace padelab

#endif
