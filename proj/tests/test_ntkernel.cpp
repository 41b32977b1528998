#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hasse/errors.hpp"
#include "hasse/ntkernel.hpp"

#include <numeric>
#include <random>

using namespace hasse;

namespace {

// Independent oracles: plain trial division and direct counting.
bool trial_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

std::uint64_t count_units(std::uint64_t n) {
    std::uint64_t c = 0;
    for (std::uint64_t a = 1; a <= n; ++a)
        if (std::gcd(a, n) == 1) ++c;
    return c;
}

std::uint64_t brute_order(std::uint64_t a, std::uint64_t n) {
    std::uint64_t x = a % n, e = 1;
    while (x != 1 % n) {
        x = x * a % n;
        ++e;
    }
    return e;
}

} // namespace

TEST_CASE("factor examples") {
    auto f = factor(Int(21));
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0] == std::make_pair(Int(3), 1u));
    CHECK(f.factors[1] == std::make_pair(Int(7), 1u));
    CHECK(f.sign == 1);

    auto one = factor(Int(1));
    CHECK(one.factors.empty());
    CHECK(one.sign == 1);

    CHECK(trial_prime(883));
    auto p = factor(Int(883));
    REQUIRE(p.factors.size() == 1);
    CHECK(p.factors[0].first == 883);

    auto neg = factor(Int(-360));
    CHECK(neg.sign == -1);
    CHECK(neg.value() == -360);
}

TEST_CASE("factor rejects zero") {
    CHECK_THROWS_AS(factor(Int(0)), Error);
}

TEST_CASE("factor round trip and ordering") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 400; ++it) {
        Int n = Int(static_cast<unsigned long>(rng() >> 20)) * Int(static_cast<unsigned long>(rng() >> 34)) + 1;
        if (it % 3 == 0) n = -n;
        auto f = factor(n);
        CHECK(f.value() == n);
        for (std::size_t i = 0; i < f.factors.size(); ++i) {
            CHECK(is_prime(f.factors[i].first));
            if (i) CHECK(f.factors[i - 1].first < f.factors[i].first);
        }
    }
}

TEST_CASE("factor semiprime beyond trial division") {
    Int p("1000000000039"), q("1000000000061");
    auto f = factor(p * q);
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0].first == p);
    CHECK(f.factors[1].first == q);
}

TEST_CASE("is_prime matches trial division") {
    CHECK(is_prime(Int(2)));
    CHECK_FALSE(is_prime(Int(1)));
    CHECK_FALSE(is_prime(Int(0)));
    CHECK(is_prime(Int(883)));
    for (std::uint64_t n = 0; n < 20000; ++n) CHECK(is_prime_u64(n) == trial_prime(n));
    CHECK(is_prime(Int("18446744073709551557"))); // largest prime below 2^64
    CHECK_FALSE(is_prime(Int("3825123056546413051"))); // strong pseudoprime to bases 2..23
}

TEST_CASE("euler_phi") {
    CHECK(euler_phi(std::uint64_t(1)) == 1);
    CHECK(euler_phi(std::uint64_t(21)) == count_units(21));
    CHECK(euler_phi(std::uint64_t(21)) == 12);
    CHECK(euler_phi(std::uint64_t(8)) == 4);
    for (std::uint64_t n = 1; n < 500; ++n) CHECK(euler_phi(n) == count_units(n));
    for (std::uint64_t a = 1; a < 40; ++a)
        for (std::uint64_t b = 1; b < 40; ++b)
            if (std::gcd(a, b) == 1) CHECK(euler_phi(a * b) == euler_phi(a) * euler_phi(b));
}

TEST_CASE("multiplicative_order") {
    CHECK(multiplicative_order(Int(1), 5) == 1);
    CHECK(multiplicative_order(Int(2), 7) == 3);
    CHECK(multiplicative_order(Int(2), 9) == 6);
    CHECK_THROWS_AS(multiplicative_order(Int(3), 9), Error);
    for (std::uint64_t n = 2; n < 120; ++n)
        for (std::uint64_t a = 1; a < n; ++a)
            if (std::gcd(a, n) == 1) CHECK(multiplicative_order(Int(a), n) == brute_order(a, n));
}

TEST_CASE("is_dth_power_rational examples") {
    CHECK_FALSE(is_dth_power_rational(Rat(-4), 4));
    auto r = is_dth_power_rational(Rat(16), 4);
    REQUIRE(r);
    CHECK(*r == 2);
    CHECK_FALSE(is_dth_power_rational(Rat(289), 4));
    auto c = is_dth_power_rational(Rat(-27, 8), 3);
    REQUIRE(c);
    CHECK(*c == Rat(-3, 2));
}

TEST_CASE("is_dth_power_rational properties") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> num(-40, 40), den(1, 40), dd(1, 12);
    for (int it = 0; it < 500; ++it) {
        int n = num(rng);
        if (n == 0) continue;
        Rat a(n, den(rng));
        a.canonicalize();
        unsigned d = dd(rng);
        Rat ad;
        mpz_pow_ui(ad.get_num_mpz_t(), a.get_num_mpz_t(), d);
        mpz_pow_ui(ad.get_den_mpz_t(), a.get_den_mpz_t(), d);
        auto r = is_dth_power_rational(ad, d);
        REQUIRE(r);
        Rat rd;
        mpz_pow_ui(rd.get_num_mpz_t(), r->get_num_mpz_t(), d);
        mpz_pow_ui(rd.get_den_mpz_t(), r->get_den_mpz_t(), d);
        CHECK(rd == ad);
    }
    // multiplicativity
    for (int it = 0; it < 300; ++it) {
        unsigned d = dd(rng);
        Rat a(num(rng) | 1, den(rng)), b(num(rng) | 1, den(rng));
        a.canonicalize();
        b.canonicalize();
        if (is_dth_power_rational(a, d) && is_dth_power_rational(b, d)) CHECK(is_dth_power_rational(a * b, d));
    }
}

TEST_CASE("is_dth_power_real") {
    CHECK(is_dth_power_real(Rat(-7), 3));
    CHECK_FALSE(is_dth_power_real(Rat(-4), 4));
    CHECK(is_dth_power_real(Rat(1, 2), 8));
}
