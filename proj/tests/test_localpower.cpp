#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hasse/errors.hpp"
#include "hasse/localpower.hpp"

#include <map>
#include <random>
#include <set>

using namespace hasse;

namespace {

std::uint64_t ipow(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

// Exhaustive oracle: unit d-th powers modulo l^K, K = 2 v_l(d) + 3.
struct BruteTable {
    std::map<std::pair<std::uint64_t, unsigned>, std::pair<std::uint64_t, std::set<std::uint64_t>>> cache;
    const std::pair<std::uint64_t, std::set<std::uint64_t>>& get(std::uint64_t l, unsigned d) {
        auto key = std::make_pair(l, d);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        unsigned K = 2 * valuation_u64(d, l) + 3;
        std::uint64_t mod = ipow(l, K);
        std::set<std::uint64_t> s;
        for (std::uint64_t x = 1; x < mod; ++x)
            if (x % l) s.insert(powmod(x, d, mod));
        return cache.emplace(key, std::make_pair(mod, std::move(s))).first->second;
    }
};

bool brute_padic(BruteTable& T, const Rat& a, std::uint64_t l, unsigned d) {
    Int L(static_cast<unsigned long>(l));
    int v = valuation(a, L);
    if (v % static_cast<int>(d)) return false;
    Int num = a.get_num(), den = a.get_den();
    for (int i = 0; i < v; ++i) num /= L;
    for (int i = 0; i > v; --i) den /= L;
    const auto& [mod, s] = T.get(l, d);
    std::uint64_t u = mulmod(mpz_fdiv_ui(num.get_mpz_t(), mod), invmod(mpz_fdiv_ui(den.get_mpz_t(), mod), mod), mod);
    return s.count(u) > 0;
}

// Closed forms for the wild part: odd l: u^(l-1) = 1 mod l^(b+1); l = 2: u = 1 mod 2^(b+2).
bool closed_form_unit(std::uint64_t u, std::uint64_t l, unsigned b) {
    if (l == 2) return u % ipow(2, b + 2) == 1;
    std::uint64_t m = ipow(l, b + 1);
    return powmod(u % m, l - 1, m) == 1;
}

// Brute force over O/P^N using exact cyclotomic valuations.
bool brute_completion(const CycElt& u, const CycPrime& P, unsigned d) {
    unsigned b = valuation_u64(d, P.ell);
    unsigned N = 2 * P.e * b + 1 + (P.ell == 2 ? 2 : 0);
    const CycField& F = P.field;
    std::vector<CycElt> digits;
    {
        std::vector<std::uint64_t> c(P.f, 0);
        for (;;) {
            CycElt v(F);
            for (unsigned i = 0; i < P.f; ++i)
                v += CycElt::zeta_power(F, static_cast<long>(i * P.ell_part)).scaled(Rat(static_cast<unsigned long>(c[i])));
            digits.push_back(v);
            unsigned i = 0;
            while (i < P.f && ++c[i] == P.ell) c[i++] = 0;
            if (i == P.f) break;
        }
    }
    std::vector<std::size_t> idx(N, 0);
    std::vector<CycElt> pipow{CycElt(F, Rat(1))};
    for (unsigned j = 1; j < N; ++j) pipow.push_back(pipow.back() * *P.pi);
    for (;;) {
        CycElt x(F);
        for (unsigned j = 0; j < N; ++j) x += digits[idx[j]] * pipow[j];
        CycElt diff = x.pow(d) - u;
        if (diff.is_zero() || valuation_at(diff, P) >= static_cast<long>(N)) return true;
        unsigned j = 0;
        while (j < N && ++idx[j] == digits.size()) idx[j++] = 0;
        if (j == N) return false;
    }
}

} // namespace

TEST_CASE("padic examples") {
    CHECK(is_dth_power_padic(Rat(-4), 13, 4));
    CHECK(is_dth_power_padic(Rat(17), 2, 2));
    CHECK_FALSE(is_dth_power_padic(Rat(9), 3, 4));
    CHECK(is_dth_power_padic(Rat(883), 7, 7));
    CHECK_FALSE(is_dth_power_padic(Rat(3), 2, 2));
    CHECK(is_dth_power_padic(Rat(1, 16), 2, 4));
    CHECK_THROWS_AS(is_dth_power_padic(Rat(0), 5, 2), Error);
}

TEST_CASE("padic agrees with exhaustive search") {
    BruteTable T;
    for (std::uint64_t l : primes_up_to(20))
        for (unsigned d = 1; d <= 8; ++d)
            for (int a = -30; a <= 30; ++a) {
                if (a == 0) continue;
                for (int den : {1, 2, 3, 4, 9}) {
                    Rat r(a, den);
                    r.canonicalize();
                    CHECK(is_dth_power_padic(r, l, d) == brute_padic(T, r, l, d));
                }
            }
}

TEST_CASE("wild part matches closed forms") {
    for (std::uint64_t l : {2, 3, 5, 7})
        for (unsigned b = 1; b <= 3; ++b) {
            std::uint64_t d = ipow(l, b);
            if (d > 64) continue;
            std::uint64_t mod = ipow(l, b + 3);
            for (std::uint64_t u = 1; u < std::min<std::uint64_t>(mod, 3000); ++u) {
                if (u % l == 0) continue;
                CHECK(is_dth_power_padic(Rat(static_cast<unsigned long>(u)), l, static_cast<unsigned>(d)) == closed_form_unit(u, l, b));
            }
        }
}

TEST_CASE("Wang's phenomenon for 16") {
    for (std::uint64_t l : primes_up_to(10000))
        if (l != 2) REQUIRE(is_dth_power_padic(Rat(16), l, 8));
    CHECK_FALSE(is_dth_power_padic(Rat(16), 2, 8));
    CHECK_FALSE(is_dth_power_rational(Rat(16), 8));
}

TEST_CASE("dispatch at places") {
    CycField Q(1);
    CHECK(is_dth_power_at_place(CycElt(Q, Rat(-7)), Place::real(), 3));
    CHECK(is_dth_power_at_place(CycElt(Q, Rat(16)), Place::rational(7), 8));
    CHECK_FALSE(is_dth_power_at_place(CycElt(Q, Rat(16)), Place::rational(2), 8));
    CHECK_THROWS_AS(is_dth_power_at_place(CycElt(CycField(3), Rat(2)), Place::real(), 2), Error);
    CHECK(Place::rational(5).label() == "5");
    CHECK(Place::real().label() == "inf");
}

TEST_CASE("completion examples") {
    CycField Q3(3);
    auto p7 = factor_prime(7, Q3);
    for (auto& P : p7) CHECK(is_dth_power_at_completion(CycElt(Q3, Rat(883)), P, 7));
    auto p13 = factor_prime(13, Q3);
    REQUIRE(p13.size() == 2);
    for (auto& P : p13) {
        std::uint64_t r = (13 - P.h[0]) % 13; // image of zeta_3
        bool cube = powmod(r, 4, 13) == 1;
        CHECK(is_dth_power_at_completion(CycElt::zeta_power(Q3, 1), P, 3) == cube);
        CHECK_FALSE(cube);
    }
}

TEST_CASE("unramified degree-one completion agrees with Q_l") {
    std::mt19937 rng(1);
    std::uniform_int_distribution<int> coef(-60, 60);
    for (std::uint64_t m : {3, 4, 5, 8}) {
        CycField F(m);
        for (std::uint64_t l : {5, 7, 13, 17, 29, 41}) {
            if (m % l == 0) continue;
            auto ps = factor_prime(l, F);
            for (auto& P : ps) {
                if (P.f != 1) continue;
                for (unsigned d = 2; d <= 8; ++d)
                    for (int it = 0; it < 6; ++it) {
                        int a = coef(rng);
                        if (a == 0) continue;
                        CHECK(is_dth_power_at_completion(CycElt(F, Rat(a)), P, d) == is_dth_power_padic(Rat(a), l, d));
                    }
            }
        }
    }
}

TEST_CASE("non-rational elements at a split prime agree with the image in Z_l") {
    // P = (7, zeta_3 - r); lift r to a root of x^2+x+1 mod 7^6 and evaluate.
    CycField Q3(3);
    std::mt19937 rng(2);
    std::uniform_int_distribution<int> coef(-40, 40);
    for (auto& P : factor_prime(7, Q3)) {
        std::uint64_t mod = 117649, r = (7 - P.h[0]) % 7;
        for (int k = 0; k < 8; ++k) { // Newton on x^2+x+1
            std::int64_t f = static_cast<std::int64_t>((mulmod(r, r, mod) + r + 1) % mod);
            std::uint64_t fp = (2 * r + 1) % mod;
            r = (r + mod - mulmod(static_cast<std::uint64_t>(f), invmod(fp, mod), mod)) % mod;
        }
        for (int it = 0; it < 60; ++it) {
            int a0 = coef(rng), a1 = coef(rng);
            CycElt a = CycElt::from_rationals(Q3, {Rat(a0), Rat(a1)});
            if (a.is_zero() || valuation_at(a, P) != 0) continue;
            std::uint64_t a1m = static_cast<std::uint64_t>((a1 % static_cast<std::int64_t>(mod) + static_cast<std::int64_t>(mod)) % static_cast<std::int64_t>(mod));
            std::uint64_t a0m = static_cast<std::uint64_t>((a0 % static_cast<std::int64_t>(mod) + static_cast<std::int64_t>(mod)) % static_cast<std::int64_t>(mod));
            std::uint64_t val = (a0m + mulmod(a1m, r, mod)) % mod;
            for (unsigned d : {2u, 3u, 7u, 14u})
                CHECK(is_dth_power_at_completion(a, P, d) == is_dth_power_padic(Rat(static_cast<unsigned long>(val)), 7, d));
        }
    }
}

TEST_CASE("ramified wild completions agree with brute force") {
    std::mt19937 rng(4);
    std::uniform_int_distribution<int> coef(-9, 9);
    struct Case {
        std::uint64_t m, l;
        unsigned d;
    };
    for (Case c : {Case{4, 2, 2}, Case{4, 2, 4}, Case{3, 3, 3}, Case{8, 2, 2}, Case{3, 2, 2}, Case{12, 3, 3}}) {
        CycField F(c.m);
        auto ps = factor_prime(c.l, F);
        for (int it = 0; it < 12; ++it) {
            std::vector<Int> v(F.degree());
            for (auto& x : v) x = coef(rng);
            CycElt a(F, v, 1);
            if (a.is_zero()) continue;
            for (auto& P : ps) {
                auto [val, u] = unit_part(a, P);
                bool expect = val % static_cast<long>(c.d) == 0 && brute_completion(u, P, c.d);
                CHECK(is_dth_power_at_completion(a, P, c.d) == expect);
            }
        }
    }
    // known values in Q_2(i): -4 = (1+i)^4, -1 = i^2, 2 is not a square
    CycField Q4(4);
    auto P2 = factor_prime(2, Q4).at(0);
    CHECK(is_dth_power_at_completion(CycElt(Q4, Rat(-4)), P2, 4));
    CHECK(is_dth_power_at_completion(CycElt(Q4, Rat(-1)), P2, 2));
    CHECK_FALSE(is_dth_power_at_completion(CycElt(Q4, Rat(2)), P2, 2));
}

TEST_CASE("global powers are local powers") {
    std::mt19937 rng(8);
    std::uniform_int_distribution<int> coef(-5, 5);
    for (std::uint64_t m : {3, 4, 5}) {
        CycField F(m);
        for (unsigned d = 2; d <= 4; ++d) {
            std::vector<Int> v(F.degree());
            for (auto& x : v) x = coef(rng);
            CycElt b(F, v, 1);
            if (b.is_zero()) continue;
            CycElt a = b.pow(d);
            for (std::uint64_t l : {2, 3, 5, 7, 11, 13})
                CHECK(is_dth_power_at_place(a, Place::rational(l), d));
        }
    }
}
