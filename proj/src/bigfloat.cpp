#include "hasse/bigfloat.hpp"

#include <limits>

namespace hasse {

long BigFloat::exponent2() const {
    if (mpfr_zero_p(v_)) return std::numeric_limits<int>::min() / 2;
    return mpfr_get_exp(v_);
}

BigComplex BigComplex::root_of_unity(long num, long den, mpfr_prec_t prec) {
    num %= den;
    if (num < 0) num += den;
    BigFloat angle = BigFloat::pi(prec) * BigFloat(2.0 * static_cast<double>(num), prec) /
                     BigFloat(static_cast<double>(den), prec);
    return {cos(angle), sin(angle)};
}

BigComplex BigComplex::principal_root(unsigned d) const {
    mpfr_prec_t p = prec();
    BigFloat r = abs();
    BigFloat th = arg();
    BigFloat dd(static_cast<double>(d), p);
    BigFloat mag = exp(log(r) / dd);
    BigFloat ang = th / dd;
    return {mag * cos(ang), mag * sin(ang)};
}

BigComplex BigComplex::pow(long e) const {
    mpfr_prec_t p = prec();
    BigComplex base = *this;
    if (e < 0) {
        BigComplex one{BigFloat(1.0, p), BigFloat(0.0, p)};
        base = one / base;
        e = -e;
    }
    BigComplex r{BigFloat(1.0, p), BigFloat(0.0, p)};
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

} // namespace hasse
