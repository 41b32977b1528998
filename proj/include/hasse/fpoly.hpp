#pragma once

// Dense polynomials over F_l for word-size primes l, coefficient i at index i.
// Enough to split cyclotomic polynomials modulo l and to compute in F_l[x]/h.

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace hasse::fpoly {

using Poly = std::vector<std::uint64_t>;

void trim(Poly& f);
int degree(const Poly& f); // -1 for zero
bool is_zero(const Poly& f);

Poly add(const Poly& a, const Poly& b, std::uint64_t l);
Poly sub(const Poly& a, const Poly& b, std::uint64_t l);
Poly mul(const Poly& a, const Poly& b, std::uint64_t l);
Poly scale(const Poly& a, std::uint64_t c, std::uint64_t l);
void divmod(const Poly& a, const Poly& b, std::uint64_t l, Poly& q, Poly& r);
Poly mod(const Poly& a, const Poly& b, std::uint64_t l);
Poly monic(const Poly& a, std::uint64_t l);
Poly gcd(Poly a, Poly b, std::uint64_t l);
Poly mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint64_t l);
Poly powmod(const Poly& a, std::uint64_t e, const Poly& m, std::uint64_t l);
Poly powmod(const Poly& a, const mpz_class& e, const Poly& m, std::uint64_t l);

// Reduction of an integer polynomial (given as signed coefficients) mod l.
Poly from_signed(const std::vector<std::int64_t>& c, std::uint64_t l);

// Factorization of a monic squarefree polynomial into monic irreducibles,
// sorted by (degree, coefficients) so the result is deterministic.
std::vector<Poly> factor_squarefree(const Poly& f, std::uint64_t l);

} // namespace hasse::fpoly
