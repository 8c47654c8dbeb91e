#include "padelab/hp.hpp"

#include <atomic>
#include <cstdio>
#include <vector>

#include "padelab/errors.hpp"

namespace padelab {

namespace {
std::atomic<int> g_default_prec{256};

mpfr_prec_t join(const HPReal& a, const HPReal& b) {
    return a.precision() > b.precision() ? a.precision() : b.precision();
}
} // namespace

int default_precision() { return g_default_prec.load(std::memory_order_relaxed); }

void set_default_precision(int bits) {
    if (bits < 64) bits = 64;
    g_default_prec.store(bits, std::memory_order_relaxed);
}

HPReal HPReal::from_string(const std::string& s, int prec) {
    HPReal r = HPReal::with_prec(prec > 0 ? prec : default_precision());
    if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
        throw ConfigError("bad float literal: " + s);
    return r;
}

std::string HPReal::str(int digits) const {
    if (digits < 2) digits = 2;
    char* buf = nullptr;
    // %Re prints mpfr values in scientific notation, RNDN.
    int n = mpfr_asprintf(&buf, "%.*Re", digits, v_);
    if (n < 0) throw NumericFailure("mpfr_asprintf failed", 0.0);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

#define PADELAB_BINOP(name, fn)                                   \
    HPReal name(const HPReal& a, const HPReal& b) {               \
        HPReal r = HPReal::with_prec(static_cast<int>(join(a, b)));                   \
        fn(r.raw(), a.raw(), b.raw(), MPFR_RNDN);                 \
        return r;                                                 \
    }

PADELAB_BINOP(operator+, mpfr_add)
PADELAB_BINOP(operator-, mpfr_sub)
PADELAB_BINOP(operator*, mpfr_mul)
PADELAB_BINOP(operator/, mpfr_div)
PADELAB_BINOP(hypot, mpfr_hypot)
PADELAB_BINOP(atan2, mpfr_atan2)
#undef PADELAB_BINOP

HPReal operator-(const HPReal& a) {
    HPReal r = HPReal::with_prec(static_cast<int>(a.precision()));
    mpfr_neg(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}

bool operator<(const HPReal& a, const HPReal& b) { return mpfr_cmp(a.raw(), b.raw()) < 0; }
bool operator>(const HPReal& a, const HPReal& b) { return mpfr_cmp(a.raw(), b.raw()) > 0; }
bool operator<=(const HPReal& a, const HPReal& b) { return mpfr_cmp(a.raw(), b.raw()) <= 0; }
bool operator>=(const HPReal& a, const HPReal& b) { return mpfr_cmp(a.raw(), b.raw()) >= 0; }
bool operator==(const HPReal& a, const HPReal& b) { return mpfr_cmp(a.raw(), b.raw()) == 0; }

#define PADELAB_UNOP(name, fn)                                    \
    HPReal name(const HPReal& a) {                                \
        HPReal r = HPReal::with_prec(static_cast<int>(a.precision()));                \
        fn(r.raw(), a.raw(), MPFR_RNDN);                          \
        return r;                                                 \
    }

PADELAB_UNOP(abs, mpfr_abs)
PADELAB_UNOP(sqrt, mpfr_sqrt)
PADELAB_UNOP(log, mpfr_log)
PADELAB_UNOP(log2, mpfr_log2)
PADELAB_UNOP(exp, mpfr_exp)
PADELAB_UNOP(sin, mpfr_sin)
PADELAB_UNOP(cos, mpfr_cos)
#undef PADELAB_UNOP

HPReal pow(const HPReal& a, long e) {
    HPReal r = HPReal::with_prec(static_cast<int>(a.precision()));
    mpfr_pow_si(r.raw(), a.raw(), e, MPFR_RNDN);
    return r;
}

HPReal max(const HPReal& a, const HPReal& b) { return a < b ? b : a; }
HPReal min(const HPReal& a, const HPReal& b) { return b < a ? b : a; }

HPReal exp2i(long e, int prec) {
    HPReal r = HPReal::with_prec(prec > 0 ? prec : default_precision());
    mpfr_set_si_2exp(r.raw(), 1, e, MPFR_RNDN);
    return r;
}

HPComplex operator+(const HPComplex& a, const HPComplex& b) { return {a.re + b.re, a.im + b.im}; }
HPComplex operator-(const HPComplex& a, const HPComplex& b) { return {a.re - b.re, a.im - b.im}; }

HPComplex operator*(const HPComplex& a, const HPComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

HPComplex operator/(const HPComplex& a, const HPComplex& b) {
    HPReal d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

HPComplex operator-(const HPComplex& a) { return {-a.re, -a.im}; }
HPComplex operator*(const HPReal& s, const HPComplex& a) { return {s * a.re, s * a.im}; }

HPReal abs(const HPComplex& a) { return hypot(a.re, a.im); }
HPReal norm2(const HPComplex& a) { return a.re * a.re + a.im * a.im; }
HPComplex conj(const HPComplex& a) { return {a.re, -a.im}; }

HPComplex log(const HPComplex& a) { return {log(abs(a)), atan2(a.im, a.re)}; }

HPComplex exp(const HPComplex& a) {
    HPReal m = exp(a.re);
    return {m * cos(a.im), m * sin(a.im)};
}

HPComplex pow(const HPComplex& a, const HPComplex& w) { return exp(w * log(a)); }

HPComplex pow(const HPComplex& a, long e) {
    if (e < 0) return inv(pow(a, -e));
    HPComplex r(HPReal(1L), HPReal(0L));
    HPComplex b = a;
    unsigned long k = static_cast<unsigned long>(e);
    while (k) {
        if (k & 1) r = r * b;
        b = b * b;
        k >>= 1;
    }
    return r;
}

HPComplex inv(const HPComplex& a) {
    HPReal d = norm2(a);
    return {a.re / d, -a.im / d};
}

bool is_finite(const HPComplex& a) {
    return !a.re.is_inf() && !a.re.is_nan() && !a.im.is_inf() && !a.im.is_nan();
}

} // namespace padelab
