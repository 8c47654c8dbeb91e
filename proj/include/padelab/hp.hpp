#ifndef PADELAB_HP_HPP
#define PADELAB_HP_HPP

#include <mpfr.h>

#include <string>
#include <utility>

#include "padelab/rational.hpp"

namespace padelab {

// Working significand precision in bits for all floating computation.
// Set once at startup (CLI --precision); tests may change it between cases.
int default_precision();
void set_default_precision(int bits); // clamps to >= 64

// Binary float with explicit significand precision, round-to-nearest.
// Binary operations produce results at max(precision of operands).
class HPReal {
    struct PrecTag {};
    HPReal(PrecTag, int bits) { mpfr_init2(v_, bits < 2 ? 2 : bits); mpfr_set_zero(v_, 1); }

public:
    HPReal() : HPReal(PrecTag{}, default_precision()) {}
    // zero value carried at an explicit precision
    static HPReal with_prec(int bits) { return HPReal(PrecTag{}, bits); }
    HPReal(double d) : HPReal() { mpfr_set_d(v_, d, MPFR_RNDN); }
    HPReal(const Rational& q) : HPReal() { mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN); }
    HPReal(const Rational& q, int prec) : HPReal(PrecTag{}, prec) { mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN); }
    HPReal(long n) : HPReal() { mpfr_set_si(v_, n, MPFR_RNDN); }
    HPReal(int n) : HPReal(static_cast<long>(n)) {}

    HPReal(const HPReal& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    HPReal(HPReal&& o) noexcept { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_swap(v_, o.v_); }
    HPReal& operator=(const HPReal& o) {
        if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
        return *this;
    }
    HPReal& operator=(HPReal&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    ~HPReal() { mpfr_clear(v_); }

    static HPReal pos_inf(int prec = 0) {
        HPReal r(prec > 0 ? prec : default_precision());
        mpfr_set_inf(r.v_, 1);
        return r;
    }
    static HPReal from_string(const std::string& s, int prec = 0);

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    bool is_inf() const { return mpfr_inf_p(v_) != 0; }
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sgn() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    // Scientific-notation string, round-to-nearest, fixed digit count.
    std::string str(int digits) const;

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

private:
    mpfr_t v_;
};

HPReal operator+(const HPReal& a, const HPReal& b);
HPReal operator-(const HPReal& a, const HPReal& b);
HPReal operator*(const HPReal& a, const HPReal& b);
HPReal operator/(const HPReal& a, const HPReal& b);
HPReal operator-(const HPReal& a);
bool operator<(const HPReal& a, const HPReal& b);
bool operator>(const HPReal& a, const HPReal& b);
bool operator<=(const HPReal& a, const HPReal& b);
bool operator>=(const HPReal& a, const HPReal& b);
bool operator==(const HPReal& a, const HPReal& b);

HPReal abs(const HPReal& a);
HPReal sqrt(const HPReal& a);
HPReal log(const HPReal& a);
HPReal log2(const HPReal& a);
HPReal exp(const HPReal& a);
HPReal pow(const HPReal& a, long e);
HPReal hypot(const HPReal& a, const HPReal& b);
HPReal atan2(const HPReal& y, const HPReal& x);
HPReal sin(const HPReal& a);
HPReal cos(const HPReal& a);
HPReal max(const HPReal& a, const HPReal& b);
HPReal min(const HPReal& a, const HPReal& b);
// 2^e at the given (or default) precision.
HPReal exp2i(long e, int prec = 0);

struct HPComplex {
    HPReal re, im;

    HPComplex() = default;
    HPComplex(HPReal r, HPReal i) : re(std::move(r)), im(std::move(i)) {}
    HPComplex(double r, double i = 0.0) : re(r), im(i) {}
    HPComplex(const Rational& r) : re(r), im(0.0) {}
    static HPComplex zero() { return HPComplex(HPReal(0.0), HPReal(0.0)); }
};

HPComplex operator+(const HPComplex& a, const HPComplex& b);
HPComplex operator-(const HPComplex& a, const HPComplex& b);
HPComplex operator*(const HPComplex& a, const HPComplex& b);
HPComplex operator/(const HPComplex& a, const HPComplex& b);
HPComplex operator-(const HPComplex& a);
HPComplex operator*(const HPReal& s, const HPComplex& a);

HPReal abs(const HPComplex& a);
HPReal norm2(const HPComplex& a); // |a|^2
HPComplex conj(const HPComplex& a);
HPComplex log(const HPComplex& a);  // principal branch
HPComplex exp(const HPComplex& a);
HPComplex pow(const HPComplex& a, const HPComplex& w); // exp(w log a)
HPComplex pow(const HPComplex& a, long e);
HPComplex inv(const HPComplex& a);

bool is_finite(const HPComplex& a);

} // namespace padelab

#endif
