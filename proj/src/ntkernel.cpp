#include "hasse/ntkernel.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "hasse/errors.hpp"

namespace hasse {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::PrecisionExceeded: return "PrecisionExceeded";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::ResolventDegenerate: return "ResolventDegenerate";
    case ErrorKind::SearchExhausted: return "SearchExhausted";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
    case ErrorKind::NotApplicable: return "NotApplicable";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Parse: return "Parse";
    }
    return "Unknown";
}

// ---------------------------------------------------------------------------
// machine-word helpers

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    if (m == 1) return 0;
    std::uint64_t r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    return a / std::gcd(a, b) * b;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(m), nr = static_cast<std::int64_t>(a % m);
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::tie(t, nt) = std::make_pair(nt, t - q * nt);
        std::tie(r, nr) = std::make_pair(nr, r - q * nr);
    }
    if (r != 1) throw Error(ErrorKind::NotAUnit, std::to_string(a) + " mod " + std::to_string(m));
    if (t < 0) t += static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(t);
}

unsigned valuation_u64(std::uint64_t n, std::uint64_t p) {
    unsigned v = 0;
    while (n != 0 && n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

unsigned valuation(const Int& n, const Int& p) {
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "valuation of zero");
    Int m = abs(n);
    unsigned v = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
        m /= p;
        ++v;
    }
    return v;
}

int valuation(const Rat& a, const Int& p) {
    return static_cast<int>(valuation(a.get_num(), p)) - static_cast<int>(valuation(a.get_den(), p));
}

std::vector<std::pair<std::uint64_t, unsigned>> factor_small(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            unsigned e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            out.emplace_back(p, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> ds{1};
    for (auto [p, e] : factor_small(n)) {
        std::size_t cur = ds.size();
        std::uint64_t pk = 1;
        for (unsigned i = 0; i < e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < cur; ++j) ds.push_back(ds[j] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
    std::vector<std::uint64_t> primes;
    if (limit < 2) return primes;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return primes;
}

// ---------------------------------------------------------------------------
// primality

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    static constexpr std::uint64_t small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (std::uint64_t p : small) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These twelve bases are deterministic for all n < 2^64.
    for (std::uint64_t a : small) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

bool is_prime(const Int& n) {
    if (n < 2) return false;
    if (n.fits_ulong_p()) return is_prime_u64(n.get_ui());
    // BPSW plus extra Miller-Rabin rounds; error probability below 4^-30.
    return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

std::uint64_t next_prime(std::uint64_t n) {
    std::uint64_t c = n + 1;
    while (!is_prime_u64(c)) ++c;
    return c;
}

// ---------------------------------------------------------------------------
// factorization: trial division then Pollard rho (Brent)

namespace {

std::optional<Int> brent_split(const Int& n, std::uint64_t max_iter, std::uint64_t seed) {
    if (mpz_even_p(n.get_mpz_t())) return Int(2);
    std::mt19937_64 rng(seed);
    gmp_randclass grng(gmp_randinit_default);
    grng.seed(static_cast<unsigned long>(rng()));
    Int y = grng.get_z_range(n - 1) + 1;
    Int c = grng.get_z_range(n - 1) + 1;
    const std::uint64_t m = 128;
    Int g = 1, r = 1, q = 1, x, ys;
    std::uint64_t iters = 0;
    auto f = [&](const Int& v) {
        Int t = v * v + c;
        mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
        return t;
    };
    while (g == 1) {
        x = y;
        for (Int i = 0; i < r; ++i) y = f(y);
        Int k = 0;
        while (k < r && g == 1) {
            ys = y;
            Int lim = (m < r - k) ? Int(m) : Int(r - k);
            for (Int i = 0; i < lim; ++i) {
                y = f(y);
                Int diff = abs(x - y);
                q = q * diff % n;
            }
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            k += m;
            iters += m;
            if (iters > max_iter) return std::nullopt;
        }
        r *= 2;
    }
    if (g == n) {
        do {
            ys = f(ys);
            Int diff = abs(x - ys);
            mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        } while (g == 1);
    }
    if (g == n) return std::nullopt;
    return g;
}

void factor_cofactor(const Int& n, std::map<Int, unsigned>& acc, const FactorBudget& budget) {
    if (n == 1) return;
    if (is_prime(n)) {
        acc[n] += 1;
        return;
    }
    if (auto r = exact_root(n, 2)) {
        factor_cofactor(*r, acc, budget);
        factor_cofactor(*r, acc, budget);
        return;
    }
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        if (auto g = brent_split(n, budget.rho_iterations, seed)) {
            factor_cofactor(*g, acc, budget);
            factor_cofactor(Int(n / *g), acc, budget);
            return;
        }
    }
    throw Error(ErrorKind::BudgetExceeded, "cofactor " + n.get_str() + " resisted Pollard rho");
}

} // namespace

Int Factored::value() const {
    Int v = sign;
    for (const auto& [p, e] : factors) {
        Int pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        v *= pe;
    }
    return v;
}

std::vector<Int> Factored::primes() const {
    std::vector<Int> out;
    for (const auto& f : factors) out.push_back(f.first);
    return out;
}

Factored factor(const Int& n_in, const FactorBudget& budget) {
    if (n_in == 0) throw Error(ErrorKind::InvalidArgument, "factor(0)");
    Factored out;
    out.sign = sgn(n_in) < 0 ? -1 : 1;
    Int n = abs(n_in);
    std::map<Int, unsigned> acc;
    for (std::uint64_t p = 2; p <= budget.trial_limit; p += (p == 2 ? 1 : 2)) {
        if (Int(p) * p > n) break;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            unsigned e = 0;
            while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
                mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
                ++e;
            }
            acc[Int(p)] = e;
        }
    }
    factor_cofactor(n, acc, budget);
    for (auto& [p, e] : acc) out.factors.emplace_back(p, e);
    return out;
}

Factored factor(std::int64_t n) { return factor(Int(static_cast<long>(n))); }

Int euler_phi(const Int& n) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "euler_phi needs n >= 1");
    Int phi = 1;
    for (const auto& [p, e] : factor(n).factors) {
        Int pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e - 1);
        phi *= pe * (p - 1);
    }
    return phi;
}

std::uint64_t euler_phi(std::uint64_t n) {
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "euler_phi needs n >= 1");
    std::uint64_t phi = n;
    for (auto [p, e] : factor_small(n)) phi = phi / p * (p - 1);
    return phi;
}

std::uint64_t multiplicative_order(const Int& a_in, std::uint64_t n) {
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "modulus must be positive");
    Int r = a_in % Int(n);
    if (r < 0) r += n;
    std::uint64_t a = r.get_ui();
    if (n == 1) return 1;
    if (std::gcd(a, n) != 1) throw Error(ErrorKind::NotAUnit, std::to_string(a) + " mod " + std::to_string(n));
    std::uint64_t ord = euler_phi(n);
    for (auto [p, e] : factor_small(ord)) {
        for (unsigned i = 0; i < e; ++i) {
            if (powmod(a, ord / p, n) == 1) ord /= p;
            else break;
        }
    }
    return ord;
}

std::optional<Int> exact_root(const Int& n, unsigned d) {
    if (d == 0) throw Error(ErrorKind::InvalidArgument, "zeroth root");
    if (n < 0 && d % 2 == 0) return std::nullopt;
    Int a = abs(n), r;
    if (mpz_root(r.get_mpz_t(), a.get_mpz_t(), d) == 0) return std::nullopt;
    return n < 0 ? Int(-r) : r;
}

std::optional<Rat> is_dth_power_rational(const Rat& a, unsigned d) {
    if (a == 0) throw Error(ErrorKind::InvalidArgument, "zero is excluded");
    if (d == 0) throw Error(ErrorKind::InvalidArgument, "d must be positive");
    if (sgn(a) < 0 && d % 2 == 0) return std::nullopt;
    // Decide through the exponent vector of numerator and denominator.
    for (const Int* part : {&a.get_num(), &a.get_den()}) {
        for (const auto& [p, e] : factor(*part).factors) {
            if (e % d != 0) return std::nullopt;
        }
    }
    auto num = exact_root(a.get_num(), d);
    auto den = exact_root(a.get_den(), d);
    if (!num || !den) throw Error(ErrorKind::InternalInconsistency, "exponents divisible but no exact root");
    Rat r(*num, *den);
    r.canonicalize();
    return r;
}

bool is_dth_power_real(const Rat& a, unsigned d) {
    if (a == 0) throw Error(ErrorKind::InvalidArgument, "zero is excluded");
    return d % 2 == 1 || sgn(a) > 0;
}

} // namespace hasse
