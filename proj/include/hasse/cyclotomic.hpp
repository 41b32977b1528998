#pragma once

// Exact arithmetic in Q(mu_m) on the power basis of zeta_m = e^{2 pi i/m}.

#include "hasse/bigfloat.hpp"
#include "hasse/fpoly.hpp"
#include "hasse/ntkernel.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hasse {

std::uint64_t canonical_conductor(std::uint64_t m);

struct CycFieldData;

class CycField {
public:
    explicit CycField(std::uint64_t m = 1);

    std::uint64_t conductor() const;
    unsigned degree() const;
    const std::vector<Int>& min_poly() const; // Phi_m, monic, degree+1 entries
    const std::vector<std::uint64_t>& units() const; // (Z/m)^*, ascending; indexes the embeddings
    std::size_t unit_index(std::uint64_t t) const;

    bool is_rational() const { return conductor() == 1; }
    bool contains(const CycField& sub) const { return conductor() % sub.conductor() == 0; }
    std::string name() const; // "Q" or "Q(muN)"
    static CycField parse(const std::string& s);

    const CycFieldData& data() const { return *d_; }

    friend bool operator==(const CycField& a, const CycField& b) { return a.d_ == b.d_; }
    friend bool operator!=(const CycField& a, const CycField& b) { return a.d_ != b.d_; }

private:
    std::shared_ptr<const CycFieldData> d_;
};

class CycElt {
public:
    explicit CycElt(const CycField& F = CycField(1));
    CycElt(const CycField& F, const Rat& r);
    CycElt(const CycField& F, std::vector<Int> num, Int den);

    static CycElt from_rationals(const CycField& F, const std::vector<Rat>& coeffs); // any length, reduced mod Phi
    static CycElt zeta_power(const CycField& F, long k);
    static CycElt parse(const CycField& F, const std::string& s);

    const CycField& field() const { return F_; }
    const std::vector<Int>& numerators() const { return num_; }
    const Int& denominator() const { return den_; }
    Rat coeff(std::size_t i) const;
    std::vector<Rat> coeffs() const;

    bool is_zero() const;
    bool is_one() const;
    bool is_integral() const { return den_ == 1; }
    std::optional<Rat> rational_value() const;

    CycElt operator-() const;
    friend CycElt operator+(const CycElt& a, const CycElt& b);
    friend CycElt operator-(const CycElt& a, const CycElt& b);
    friend CycElt operator*(const CycElt& a, const CycElt& b);
    friend CycElt operator/(const CycElt& a, const CycElt& b);
    friend bool operator==(const CycElt& a, const CycElt& b);
    friend bool operator!=(const CycElt& a, const CycElt& b) { return !(a == b); }
    CycElt& operator*=(const CycElt& b) { return *this = *this * b; }
    CycElt& operator+=(const CycElt& b) { return *this = *this + b; }

    CycElt inverse() const; // throws DivisionByZero
    CycElt pow(long e) const;
    CycElt scaled(const Rat& r) const;

    // sigma_t : zeta -> zeta^t, t a unit mod the conductor
    CycElt automorphism(std::uint64_t t) const;
    std::vector<CycElt> conjugates() const;
    Rat norm() const;
    Rat trace() const;

    CycElt embed(const CycField& big) const; // requires big to contain field()
    // Inverse of embed; throws InvalidArgument if the element is not in sub.
    CycElt restrict_to(const CycField& sub) const;
    // Smallest canonical conductor m' | m with the element in Q(mu_m').
    std::uint64_t minimal_conductor() const;
    // Image under zeta -> e^{2 pi i t/m}
    BigComplex numeric(std::uint64_t t, mpfr_prec_t prec) const;
    std::vector<BigComplex> numeric_embeddings(mpfr_prec_t prec) const;
    // log2 of an upper bound for max |conjugate|
    double log2_house() const;

    std::string to_string() const;

private:
    void normalize();

    CycField F_;
    std::vector<Int> num_;
    Int den_;
};

bool mu_in_field(std::uint64_t m_prime, const CycField& F);
std::uint64_t degree_ext(const CycField& F, std::uint64_t d);
// The principal primitive n-th root of unity e^{2 pi i/n}; requires mu_in_field(n, F).
CycElt root_of_unity(const CycField& F, std::uint64_t n);

struct PowerOptions {
    mpfr_prec_t start_prec = 128;
    mpfr_prec_t max_prec = 4096;
    std::uint64_t candidate_budget = 4'000'000;
    unsigned prefilter_primes = 8;
};

std::optional<CycElt> is_dth_power_cyclotomic(const CycElt& a, unsigned d, const PowerOptions& opt = {});

struct CycPrime {
    CycField field;
    std::uint64_t ell = 0;
    unsigned e = 1, f = 1;
    fpoly::Poly h;                 // monic irreducible factor of Phi_{m'} mod ell
    std::uint64_t ell_part = 1;    // ell^a with m = ell^a m'
    std::uint64_t m_prime = 1;
    unsigned index = 0;            // position in factor_prime output
    std::shared_ptr<const CycElt> tau; // v_P(tau) = e-1, v_Q(tau) >= e at the other primes above ell
    std::shared_ptr<const CycElt> pi;  // uniformizer

    std::string label() const;
};

std::vector<CycPrime> factor_prime(std::uint64_t ell, const CycField& F);

long valuation_at(const CycElt& a, const CycPrime& P);

// For nonzero integral a: v = v_P(a) and the integral P-unit u = a * (tau/ell)^v.
struct UnitSplit {
    long v;
    CycElt unit;
};
UnitSplit unit_part(const CycElt& a, const CycPrime& P);

// Residue of an integral element in F_q = F_ell[x]/h.
fpoly::Poly reduce_mod_prime(const CycElt& a, const CycPrime& P);

} // namespace hasse
