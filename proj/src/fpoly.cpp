#include "hasse/fpoly.hpp"

#include "hasse/ntkernel.hpp"

#include <algorithm>
#include <random>

namespace hasse::fpoly {

namespace {

std::uint64_t mm(std::uint64_t a, std::uint64_t b, std::uint64_t l) { return ::hasse::mulmod(a, b, l); }
std::uint64_t inv(std::uint64_t a, std::uint64_t l) { return ::hasse::invmod(a, l); }

} // namespace

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const Poly& f) {
    for (std::size_t i = f.size(); i-- > 0;)
        if (f[i]) return static_cast<int>(i);
    return -1;
}

bool is_zero(const Poly& f) { return degree(f) < 0; }

Poly add(const Poly& a, const Poly& b, std::uint64_t l) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::uint64_t x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
        r[i] = (x + y) % l;
    }
    trim(r);
    return r;
}

Poly sub(const Poly& a, const Poly& b, std::uint64_t l) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::uint64_t x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
        r[i] = (x + l - y) % l;
    }
    trim(r);
    return r;
}

Poly mul(const Poly& a, const Poly& b, std::uint64_t l) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mm(a[i], b[j], l)) % l;
    }
    trim(r);
    return r;
}

Poly scale(const Poly& a, std::uint64_t c, std::uint64_t l) {
    Poly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = mm(a[i], c % l, l);
    trim(r);
    return r;
}

void divmod(const Poly& a, const Poly& b, std::uint64_t l, Poly& q, Poly& r) {
    int db = degree(b);
    if (db < 0) throw std::invalid_argument("fpoly::divmod by zero");
    r = a;
    trim(r);
    int da = degree(r);
    q.assign(da >= db ? da - db + 1 : 0, 0);
    std::uint64_t lead_inv = inv(b[db], l);
    for (int i = da; i >= db; --i) {
        std::uint64_t c = mm(r[i], lead_inv, l);
        if (!c) continue;
        q[i - db] = c;
        for (int j = 0; j <= db; ++j) r[i - db + j] = (r[i - db + j] + l - mm(c, b[j], l)) % l;
    }
    trim(r);
    trim(q);
}

Poly mod(const Poly& a, const Poly& b, std::uint64_t l) {
    Poly q, r;
    divmod(a, b, l, q, r);
    return r;
}

Poly monic(const Poly& a, std::uint64_t l) {
    int d = degree(a);
    if (d < 0) return {};
    return scale(a, inv(a[d], l), l);
}

Poly gcd(Poly a, Poly b, std::uint64_t l) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = mod(a, b, l);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, l);
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint64_t l) { return mod(mul(a, b, l), m, l); }

Poly powmod(const Poly& a, std::uint64_t e, const Poly& m, std::uint64_t l) {
    Poly r{1}, base = mod(a, m, l);
    r = mod(r, m, l);
    while (e) {
        if (e & 1) r = mulmod(r, base, m, l);
        e >>= 1;
        if (e) base = mulmod(base, base, m, l);
    }
    return r;
}

Poly powmod(const Poly& a, const mpz_class& e, const Poly& m, std::uint64_t l) {
    Poly r = mod(Poly{1}, m, l), base = mod(a, m, l);
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        r = mulmod(r, r, m, l);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = mulmod(r, base, m, l);
    }
    return r;
}

Poly from_signed(const std::vector<std::int64_t>& c, std::uint64_t l) {
    Poly r(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        std::int64_t v = c[i] % static_cast<std::int64_t>(l);
        if (v < 0) v += static_cast<std::int64_t>(l);
        r[i] = static_cast<std::uint64_t>(v);
    }
    trim(r);
    return r;
}

namespace {

// Split f, a product of distinct irreducibles of degree k, into its factors.
void equal_degree(const Poly& f, int k, std::uint64_t l, std::mt19937_64& rng, std::vector<Poly>& out) {
    int n = degree(f);
    if (n == k) {
        out.push_back(monic(f, l));
        return;
    }
    std::uniform_int_distribution<std::uint64_t> coef(0, l - 1);
    mpz_class e;
    if (l != 2) {
        mpz_ui_pow_ui(e.get_mpz_t(), l, static_cast<unsigned long>(k));
        e = (e - 1) / 2;
    }
    for (;;) {
        Poly a(n);
        for (auto& c : a) c = coef(rng);
        trim(a);
        if (degree(a) < 1) continue;
        Poly g;
        if (l == 2) {
            // trace a + a^2 + ... + a^(2^(k-1))
            Poly t = a, acc = a;
            for (int i = 1; i < k; ++i) {
                t = mulmod(t, t, f, l);
                acc = add(acc, t, l);
            }
            g = gcd(f, acc, l);
        } else {
            Poly h = sub(powmod(a, e, f, l), Poly{1}, l);
            g = gcd(f, h, l);
        }
        int dg = degree(g);
        if (dg > 0 && dg < n) {
            Poly q, r;
            divmod(f, g, l, q, r);
            equal_degree(g, k, l, rng, out);
            equal_degree(monic(q, l), k, l, rng, out);
            return;
        }
    }
}

} // namespace

std::vector<Poly> factor_squarefree(const Poly& f_in, std::uint64_t l) {
    Poly f = monic(f_in, l);
    std::vector<Poly> out;
    if (degree(f) < 1) return out;
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ l);
    Poly xp{0, 1}; // x^(l^i) mod f
    Poly x{0, 1};
    int i = 0;
    while (degree(f) >= 2 * (i + 1)) {
        ++i;
        xp = powmod(xp, l, f, l);
        Poly g = gcd(f, sub(xp, x, l), l);
        if (degree(g) > 0) {
            equal_degree(g, i, l, rng, out);
            Poly q, r;
            divmod(f, g, l, q, r);
            f = monic(q, l);
            xp = mod(xp, f, l);
        }
    }
    if (degree(f) > 0) out.push_back(f);
    std::sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

} // namespace hasse::fpoly
