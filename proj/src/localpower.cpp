#include "hasse/localpower.hpp"

#include "hasse/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace hasse {

std::string Place::label() const {
    switch (kind) {
    case Kind::Real: return "inf";
    case Kind::RationalPrime: return std::to_string(ell);
    case Kind::CyclotomicPrime: return prime->label();
    }
    return "?";
}

namespace {

using u128 = unsigned __int128;

std::uint64_t mod_pow_limit(std::uint64_t ell, unsigned N) {
    u128 r = 1;
    for (unsigned i = 0; i < N; ++i) {
        r *= ell;
        if (r > (u128(1) << 62)) throw Error(ErrorKind::BudgetExceeded, "local precision exceeds 62 bits");
    }
    return static_cast<std::uint64_t>(r);
}

std::uint64_t mm(std::uint64_t a, std::uint64_t b, std::uint64_t m) { return static_cast<std::uint64_t>(u128(a) * b % m); }

std::uint64_t pw(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    while (e) {
        if (e & 1) r = mm(r, a, m);
        a = mm(a, a, m);
        e >>= 1;
    }
    return r;
}

std::uint64_t residue(const Int& x, std::uint64_t m) { return mpz_fdiv_ui(x.get_mpz_t(), m); }

void split_degree(unsigned d, std::uint64_t ell, unsigned& b, unsigned& dprime) {
    b = 0;
    dprime = d;
    while (dprime % ell == 0) {
        dprime /= static_cast<unsigned>(ell);
        ++b;
    }
}

// Is the l-adic unit u (given mod l^N) an (l^b)-th power mod l^N? Digit-by-digit search.
bool wild_search_int(std::uint64_t u, std::uint64_t ell, unsigned b, unsigned N, std::uint64_t budget) {
    std::uint64_t e = 1;
    for (unsigned i = 0; i < b; ++i) e *= ell;
    std::vector<std::uint64_t> S;
    for (std::uint64_t x = 1; x < ell; ++x)
        if (pw(x, e, ell) == u % ell) S.push_back(x);
    std::uint64_t mod = ell, work = ell;
    for (unsigned j = 1; j < N && !S.empty(); ++j) {
        std::uint64_t next_mod = mod * ell;
        std::vector<std::uint64_t> T;
        for (auto x : S)
            for (std::uint64_t a = 0; a < ell; ++a) {
                std::uint64_t y = x + a * mod;
                if (++work > budget) throw Error(ErrorKind::BudgetExceeded, "p-adic root search budget");
                if (pw(y, e, next_mod) == u % next_mod) T.push_back(y);
            }
        S = std::move(T);
        mod = next_mod;
    }
    return !S.empty();
}

} // namespace

bool is_dth_power_padic(const Rat& a, std::uint64_t ell, unsigned d, const LocalOptions& opt) {
    if (a == 0) throw Error(ErrorKind::InvalidArgument, "zero has no class modulo d-th powers");
    if (!is_prime_u64(ell)) throw Error(ErrorKind::InvalidArgument, "not a prime");
    if (d == 0) throw Error(ErrorKind::InvalidArgument, "d must be positive");
    Int L(static_cast<unsigned long>(ell));
    int v = valuation(a, L);
    if (v % static_cast<int>(d) != 0) return false;
    unsigned b, dp;
    split_degree(d, ell, b, dp);
    unsigned N = b == 0 ? 1 : 2 * b + (ell == 2 ? 3 : 1);
    std::uint64_t mod = mod_pow_limit(ell, N);
    // unit part num/den with the l-power removed
    Int num = a.get_num(), den = a.get_den();
    for (int i = 0; i < v; ++i) num /= L;
    for (int i = 0; i > v; --i) den /= L;
    std::uint64_t u = mm(residue(num, mod), invmod(residue(den, mod), mod), mod);
    if (dp > 1) {
        std::uint64_t g = std::gcd<std::uint64_t>(dp, ell - 1);
        if (pw(u % ell, (ell - 1) / g, ell) != 1) return false;
    }
    if (b == 0) return true;
    return wild_search_int(u, ell, b, N, opt.search_budget);
}

// ---------------------------------------------------------------------------

namespace {

// Z[zeta_m] / l^R with coefficients in [0, l^R).
struct LocalRing {
    std::uint64_t mod;
    unsigned n;
    std::vector<std::uint64_t> phi;

    LocalRing(const CycField& F, std::uint64_t mod_) : mod(mod_), n(F.degree()) {
        for (const auto& c : F.min_poly()) phi.push_back(residue(c, mod));
    }
    using V = std::vector<std::uint64_t>;

    V from(const CycElt& a) const {
        V r(n);
        for (unsigned i = 0; i < n; ++i) r[i] = residue(a.numerators()[i], mod);
        return r;
    }
    V mul(const V& a, const V& b) const {
        std::vector<std::uint64_t> r(2 * n - 1, 0);
        for (unsigned i = 0; i < n; ++i) {
            if (!a[i]) continue;
            for (unsigned j = 0; j < n; ++j)
                if (b[j]) r[i + j] = static_cast<std::uint64_t>((u128(a[i]) * b[j] + r[i + j]) % mod);
        }
        for (unsigned i = 2 * n - 2; i >= n; --i) {
            std::uint64_t c = r[i];
            if (!c) continue;
            for (unsigned j = 0; j < n; ++j)
                if (phi[j]) r[i - n + j] = static_cast<std::uint64_t>((u128(r[i - n + j]) + mod - mm(c, phi[j], mod)) % mod);
        }
        r.resize(n);
        return r;
    }
    V add(const V& a, const V& b) const {
        V r(n);
        for (unsigned i = 0; i < n; ++i) r[i] = static_cast<std::uint64_t>((u128(a[i]) + b[i]) % mod);
        return r;
    }
    V sub(const V& a, const V& b) const {
        V r(n);
        for (unsigned i = 0; i < n; ++i) r[i] = static_cast<std::uint64_t>((u128(a[i]) + mod - b[i]) % mod);
        return r;
    }
    V pow(V a, std::uint64_t e) const {
        V r(n, 0);
        r[0] = 1 % mod;
        while (e) {
            if (e & 1) r = mul(r, a);
            e >>= 1;
            if (e) a = mul(a, a);
        }
        return r;
    }
};

// v_P(z) >= j, for z known modulo l^R with R >= j.
bool valuation_at_least(LocalRing::V z, const LocalRing& R, const LocalRing::V& tau, std::uint64_t ell, unsigned j) {
    for (unsigned k = 0; k < j; ++k) {
        z = R.mul(z, tau);
        for (auto& c : z) {
            if (c % ell) return false;
            c /= ell;
        }
    }
    return true;
}

bool wild_search_cyc(const CycElt& u, const CycPrime& P, unsigned b, const LocalOptions& opt) {
    const CycField& F = P.field;
    const std::uint64_t ell = P.ell;
    unsigned N = 2 * P.e * b + 1 + (ell == 2 ? 2 : 0);
    std::uint64_t mod = mod_pow_limit(ell, N + 1);
    LocalRing R(F, mod);
    auto tau = R.from(*P.tau);
    auto pi = R.from(*P.pi);
    auto uu = R.from(u);
    std::uint64_t e = 1;
    for (unsigned i = 0; i < b; ++i) e *= ell;

    // residue digit representatives sum_{i<f} c_i zeta_{m'}^i
    std::vector<LocalRing::V> digits;
    {
        std::vector<LocalRing::V> basis;
        for (unsigned i = 0; i < P.f; ++i) basis.push_back(R.from(CycElt::zeta_power(F, static_cast<long>(i * P.ell_part))));
        std::vector<std::uint64_t> c(P.f, 0);
        for (;;) {
            LocalRing::V v(R.n, 0);
            for (unsigned i = 0; i < P.f; ++i)
                for (unsigned k = 0; k < R.n; ++k) v[k] = static_cast<std::uint64_t>((u128(v[k]) + u128(c[i]) * basis[i][k]) % mod);
            digits.push_back(v);
            unsigned i = 0;
            while (i < P.f && ++c[i] == ell) c[i++] = 0;
            if (i == P.f) break;
        }
    }
    auto congruent = [&](const LocalRing::V& x, unsigned j) {
        return valuation_at_least(R.sub(R.pow(x, e), uu), R, tau, ell, j);
    };
    std::uint64_t work = 0;
    std::vector<LocalRing::V> S;
    for (const auto& a : digits) {
        ++work;
        if (congruent(a, 1)) S.push_back(a);
    }
    LocalRing::V pij = pi; // pi^j
    for (unsigned j = 1; j < N && !S.empty(); ++j) {
        std::vector<LocalRing::V> T;
        std::set<LocalRing::V> seen;
        for (const auto& x : S)
            for (const auto& a : digits) {
                if (++work > opt.search_budget) throw Error(ErrorKind::BudgetExceeded, "local root search exceeds budget at " + P.label());
                auto y = R.add(x, R.mul(a, pij));
                if (congruent(y, j + 1) && seen.insert(y).second) T.push_back(std::move(y));
            }
        S = std::move(T);
        pij = R.mul(pij, pi);
    }
    return !S.empty();
}

} // namespace

bool is_dth_power_at_completion(const CycElt& a, const CycPrime& P, unsigned d, const LocalOptions& opt) {
    if (a.is_zero()) throw Error(ErrorKind::InvalidArgument, "zero has no class modulo d-th powers");
    if (d == 0) throw Error(ErrorKind::InvalidArgument, "d must be positive");
    if (a.field() != P.field) throw Error(ErrorKind::InvalidArgument, "prime belongs to another field");
    // clear the denominator by a d-th power
    Int Dd;
    mpz_pow_ui(Dd.get_mpz_t(), a.denominator().get_mpz_t(), d);
    CycElt ai = a.scaled(Rat(Dd));
    auto [v, u] = unit_part(ai, P);
    if (v % static_cast<long>(d) != 0) return false;
    unsigned b, dp;
    split_degree(d, P.ell, b, dp);
    if (dp > 1) {
        Int q;
        mpz_ui_pow_ui(q.get_mpz_t(), P.ell, P.f);
        Int g = gcd(Int(dp), q - 1);
        Int ex = (q - 1) / g;
        auto r = fpoly::powmod(reduce_mod_prime(u, P), ex, P.h, P.ell);
        if (!(r.size() == 1 && r[0] == 1)) return false;
    }
    if (b == 0) return true;
    return wild_search_cyc(u, P, b, opt);
}

bool is_dth_power_at_place(const CycElt& a, const Place& place, unsigned d, const LocalOptions& opt) {
    switch (place.kind) {
    case Place::Kind::Real: {
        auto r = a.rational_value();
        if (!a.field().is_rational() || !r) throw Error(ErrorKind::InvalidArgument, "real place only exists over Q");
        return is_dth_power_real(*r, d);
    }
    case Place::Kind::RationalPrime: {
        if (a.field().is_rational()) return is_dth_power_padic(*a.rational_value(), place.ell, d, opt);
        for (const auto& P : factor_prime(place.ell, a.field()))
            if (!is_dth_power_at_completion(a, P, d, opt)) return false;
        return true;
    }
    case Place::Kind::CyclotomicPrime:
        return is_dth_power_at_completion(a, *place.prime, d, opt);
    }
    return false;
}

} // namespace hasse
