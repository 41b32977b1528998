#include "hasse/construct.hpp"

#include "hasse/errors.hpp"

#include <set>

namespace hasse {

namespace {

std::uint64_t ipow_u64(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

std::uint64_t primitive_root_mod(std::uint64_t ell) {
    auto fac = factor_small(ell - 1);
    for (std::uint64_t g = 2;; ++g) {
        bool ok = true;
        for (auto& [p, e] : fac)
            if (powmod(g, (ell - 1) / p, ell) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
}

std::optional<std::uint64_t> eval_mod(const CycElt& x, std::uint64_t z, std::uint64_t ell) {
    std::uint64_t den = mpz_fdiv_ui(x.denominator().get_mpz_t(), ell);
    if (den == 0) return std::nullopt;
    std::uint64_t acc = 0;
    const auto& num = x.numerators();
    for (std::size_t i = num.size(); i-- > 0;) acc = (mulmod(acc, z, ell) + mpz_fdiv_ui(num[i].get_mpz_t(), ell)) % ell;
    return mulmod(acc, invmod(den, ell), ell);
}

// rational primes below the primes of k dividing alpha
std::vector<std::uint64_t> support_primes(const CycElt& alpha) {
    CycElt num(alpha.field(), alpha.numerators(), 1);
    Int n = abs(Int(num.norm().get_num()));
    std::set<std::uint64_t> out;
    if (n > 1)
        for (const auto& p : factor(n).primes()) {
            if (!p.fits_ulong_p()) throw Error(ErrorKind::BudgetExceeded, "prime factor of N(alpha) exceeds 64 bits");
            out.insert(p.get_ui());
        }
    Int den = alpha.denominator();
    if (den > 1)
        for (const auto& p : factor(den).primes()) out.insert(p.get_ui());
    return {out.begin(), out.end()};
}

std::vector<LocalCheck> power_checks(const CycElt& x, const CycField& k, std::uint64_t ell, std::uint64_t n,
                                     const LocalOptions& opt) {
    std::vector<LocalCheck> out;
    const unsigned nn = static_cast<unsigned>(n);
    if (k.is_rational()) {
        Place P = Place::rational(ell);
        out.push_back({P.label(), is_dth_power_at_place(x, P, nn, opt)});
        return out;
    }
    for (const auto& P : factor_prime(ell, k)) out.push_back({P.label(), is_dth_power_at_completion(x, P, nn, opt)});
    return out;
}

} // namespace

bool BetaCertificate::verified() const {
    if (!coprime || split_prime.empty() || p_power_checks.empty()) return false;
    for (const auto& c : q_power_checks)
        if (!c.holds) return false;
    for (const auto& c : p_power_checks)
        if (!c.holds) return false;
    return true;
}

BetaCertificate verify_beta(const CycElt& alpha, std::uint64_t p, std::uint64_t q, const CycField& k, std::uint64_t beta,
                            const LocalOptions& opt) {
    BetaCertificate c;
    c.beta = beta;
    c.alpha = alpha;
    c.p = p;
    c.q = q;
    auto supp = support_primes(alpha);
    c.coprime = !std::binary_search(supp.begin(), supp.end(), beta);
    if (k.is_rational()) {
        c.split_prime = Place::rational(beta).label();
    } else {
        for (const auto& P : factor_prime(beta, k))
            if (P.e == 1) {
                c.split_prime = P.label();
                break;
            }
    }
    std::set<std::uint64_t> bad(supp.begin(), supp.end());
    for (auto [r, e] : factor_small(q)) bad.insert(r);
    CycElt b(k, Rat(static_cast<long>(beta)));
    for (auto ell : bad)
        for (auto& chk : power_checks(b, k, ell, q, opt)) {
            chk.place = std::to_string(ell) + ":" + chk.place;
            c.q_power_checks.push_back(chk);
        }
    c.p_power_checks = power_checks(alpha, k, beta, p, opt);
    return c;
}

BetaCertificate find_beta(const CycElt& alpha, std::uint64_t p, std::uint64_t q, const CycField& k,
                          const BetaSearchOptions& opt) {
    if (alpha.is_zero()) throw Error(ErrorKind::InvalidArgument, "alpha must be nonzero");
    if (alpha.denominator() != 1) throw Error(ErrorKind::InvalidArgument, "alpha must be integral");
    if (p < 1 || q < 1) throw Error(ErrorKind::InvalidArgument, "p and q must be positive");
    const CycElt a = alpha.field() == k ? alpha : alpha.embed(k);
    const std::uint64_t m = k.conductor();

    // beta = 1 mod m (split in k), mod p (mu_p), and to Hensel levels at the primes of alpha and q
    std::uint64_t mod = lcm_u64(m, p);
    std::set<std::uint64_t> level_primes;
    for (auto r : support_primes(a)) level_primes.insert(r);
    for (auto [r, e] : factor_small(q)) level_primes.insert(r);
    for (auto r : level_primes) {
        unsigned v = valuation_u64(q, r);
        std::uint64_t lev = r == 2 ? ipow_u64(2, v + 2) : ipow_u64(r, v + 1);
        unsigned __int128 next = static_cast<unsigned __int128>(mod / gcd_u64(mod, lev)) * lev;
        if (next > opt.bound) throw Error(ErrorKind::SearchExhausted, "congruence modulus for beta exceeds the bound " + std::to_string(opt.bound));
        mod = static_cast<std::uint64_t>(next);
    }

    unsigned tried = 0;
    std::uint64_t beta = opt.start / mod * mod + 1;
    while (beta <= opt.start) beta += mod;
    for (; beta <= opt.bound; beta += mod) {
        if (beta < 3 || !is_prime_u64(beta) || level_primes.count(beta)) continue;
        ++tried;
        // alpha a p-th power mod every prime above beta
        std::uint64_t g = primitive_root_mod(beta);
        std::uint64_t rm = powmod(g, (beta - 1) / m, beta);
        bool ok = true;
        for (auto u : m == 1 ? std::vector<std::uint64_t>{1} : k.units()) {
            auto v = eval_mod(a, powmod(rm, u, beta), beta);
            if (!v || *v == 0 || powmod(*v, (beta - 1) / p, beta) != 1) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        auto cert = verify_beta(a, p, q, k, beta, opt.local);
        cert.modulus = mod;
        cert.candidates_tried = tried;
        if (cert.verified()) return cert;
    }
    throw Error(ErrorKind::SearchExhausted, "no beta up to " + std::to_string(opt.bound));
}

// ---------------------------------------------------------------------------

const char* to_string(ConstructionPath p) {
    switch (p) {
    case ConstructionPath::SpecialEven: return "special_even";
    case ConstructionPath::CaseA: return "case_a";
    case ConstructionPath::CaseB: return "case_b";
    }
    return "?";
}

namespace {

// a0 = 1 and the three other coefficients from (alpha power, beta power, signs)
template <class Build>
Construction build_verified(const CycField& k, std::uint64_t d, ConstructionPath path, const CycElt& alpha, std::uint64_t p,
                            std::uint64_t q, const ConstructOptions& opt, Build&& build) {
    BetaSearchOptions so = opt.search;
    for (unsigned attempt = 1; attempt <= opt.max_beta_attempts; ++attempt) {
        auto cert = find_beta(alpha, p, q, k, so);
        DiagonalSurface S = build(CycElt(k, Rat(static_cast<long>(cert.beta))));
        auto v = hasse_verdict(S, opt.verdict);
        if (v.kind == VerdictKind::HasseFailure) {
            Construction c{S, path, std::nullopt, alpha, cert, v, attempt};
            return c;
        }
        so.start = cert.beta;
    }
    throw Error(ErrorKind::VerificationFailed, std::string(to_string(path)) + " surface over " + k.name() + " with d = " +
                                                   std::to_string(d) + " not certified after " +
                                                   std::to_string(opt.max_beta_attempts) + " choices of beta");
}

} // namespace

Construction construct_special_even(const CycField& k, std::uint64_t d, const ConstructOptions& opt) {
    if (d < 4 || d % 2) throw Error(ErrorKind::NotApplicable, "special even construction needs even d >= 4");
    if (!minus_one_is_dth_power(k, d)) throw Error(ErrorKind::NotApplicable, "-1 is not a d-th power in " + k.name());
    const std::uint64_t m = k.conductor();
    std::uint64_t a = m + 1;
    while (!is_prime_u64(a)) a += m;
    CycElt alpha(k, Rat(static_cast<long>(a)));
    const long h = static_cast<long>(d / 2);
    return build_verified(k, d, ConstructionPath::SpecialEven, alpha, 2, 2, opt, [&](const CycElt& beta) {
        CycElt ah = alpha.pow(h), bh = beta.pow(h);
        return DiagonalSurface(static_cast<unsigned>(d), k, {CycElt(k, Rat(1)), ah, bh, ah * bh});
    });
}

Construction construct_case_a(const CycField& k, std::uint64_t d, std::uint64_t p, unsigned n, std::uint64_t q,
                              const ConstructOptions& opt) {
    const std::uint64_t pn = ipow_u64(p, n);
    if (n < 1 || d % (q * pn) || (d / pn) % p == 0 || q == p)
        throw Error(ErrorKind::InvalidArgument, "case A needs d = e q p^n with gcd(eq, p) = 1");
    CaseDecomposition dec;
    dec.kind = CaseDecomposition::Kind::A;
    dec.p = p;
    dec.n = n;
    dec.q = q;
    CycField Kq(lcm_u64(k.conductor(), q));
    dec.m = 0;
    for (unsigned j = 1; j <= n; ++j)
        if (mu_in_field(ipow_u64(p, j), Kq)) dec.m = j;
    auto rep = find_representative(k, dec, d);
    if (!rep.not_power_in_k || !rep.power_in_extension)
        throw Error(ErrorKind::VerificationFailed, "representative certificate incomplete");
    const std::uint64_t e = d / (q * pn);
    const CycElt alpha = rep.alpha;
    auto c = build_verified(k, d, ConstructionPath::CaseA, alpha, pn, q, opt, [&](const CycElt& beta) {
        CycElt A = alpha.pow(static_cast<long>(e * q)), B = beta.pow(static_cast<long>(e * pn));
        return DiagonalSurface(static_cast<unsigned>(d), k, {CycElt(k, Rat(1)), -A, -B, A * B});
    });
    c.decomposition = dec;
    return c;
}

Construction construct_case_b(const CycField& k, std::uint64_t d, const ConstructOptions& opt) {
    unsigned n = valuation_u64(d, 2);
    if (n == 0 || !is_special_case(k, 2, n)) throw Error(ErrorKind::NotApplicable, "(k, 2^n) is not the special case");
    CaseDecomposition dec;
    dec.kind = CaseDecomposition::Kind::B;
    dec.p = 2;
    dec.n = n;
    auto rep = find_representative(k, dec, d);
    if (!rep.not_power_in_k || !rep.power_in_extension)
        throw Error(ErrorKind::VerificationFailed, "representative certificate incomplete");
    const std::uint64_t pn = ipow_u64(2, n), e = d / pn;
    const CycElt alpha = rep.alpha;
    auto c = build_verified(k, d, ConstructionPath::CaseB, alpha, pn, 2, opt, [&](const CycElt& beta) {
        CycElt A = alpha.pow(static_cast<long>(e)), B = beta.pow(static_cast<long>(d / 2));
        return DiagonalSurface(static_cast<unsigned>(d), k, {CycElt(k, Rat(1)), -A, -B, A * B});
    });
    c.decomposition = dec;
    return c;
}

Construction construct_for(const CycField& k, std::uint64_t d, const ConstructOptions& opt) {
    auto pred = hasse_principle_predicted(k, d);
    if (pred.verdict == Prediction::AlwaysHolds)
        throw Error(ErrorKind::NotApplicable, "the Hasse principle for lines holds for d = " + std::to_string(d) + " over " + k.name());
    if (d % 2 == 0 && minus_one_is_dth_power(k, d)) return construct_special_even(k, d, opt);
    auto dec = decompose_nontrivial(k, d);
    if (dec.kind == CaseDecomposition::Kind::B) return construct_case_b(k, d, opt);
    return construct_case_a(k, d, dec.p, dec.n, dec.q, opt);
}

} // namespace hasse
