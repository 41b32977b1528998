#pragma once

// Exact integer / rational primitives: factorization, primality, totient,
// multiplicative order and d-th power tests over Q and R.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace hasse {

using Int = mpz_class;
using Rat = mpq_class; // always canonical: lowest terms, positive denominator

struct Factored {
    int sign = 1;
    std::vector<std::pair<Int, unsigned>> factors; // primes strictly increasing

    Int value() const;
    std::vector<Int> primes() const;
};

struct FactorBudget {
    std::uint64_t trial_limit = 1'000'000;
    std::uint64_t rho_iterations = 5'000'000; // per cofactor split attempt
};

Factored factor(const Int& n, const FactorBudget& budget = {});
Factored factor(std::int64_t n);

bool is_prime(const Int& n);
bool is_prime_u64(std::uint64_t n);

Int euler_phi(const Int& n);
std::uint64_t euler_phi(std::uint64_t n);

std::uint64_t multiplicative_order(const Int& a, std::uint64_t n);

std::optional<Rat> is_dth_power_rational(const Rat& a, unsigned d);
bool is_dth_power_real(const Rat& a, unsigned d);

// ---- small helpers shared by the other modules --------------------------

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);
std::uint64_t invmod(std::uint64_t a, std::uint64_t m); // throws NotAUnit
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);

// Exponent of prime p in n (n != 0).
unsigned valuation(const Int& n, const Int& p);
unsigned valuation_u64(std::uint64_t n, std::uint64_t p);
int valuation(const Rat& a, const Int& p);

// Prime factorization of a machine-size integer, trial division only.
std::vector<std::pair<std::uint64_t, unsigned>> factor_small(std::uint64_t n);

std::vector<std::uint64_t> divisors(std::uint64_t n);

// Primes <= limit, simple Eratosthenes.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

std::uint64_t next_prime(std::uint64_t n); // smallest prime > n

// Exact integer root if n = r^d (n may be negative for odd d).
std::optional<Int> exact_root(const Int& n, unsigned d);

} // namespace hasse
