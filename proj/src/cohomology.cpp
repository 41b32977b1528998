#include "hasse/cohomology.hpp"

#include "hasse/errors.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace hasse {

const char* to_string(Prediction p) {
    return p == Prediction::AlwaysHolds ? "AlwaysHolds" : "CounterexamplesExist";
}

std::string CaseDecomposition::label() const {
    std::ostringstream os;
    if (kind == Kind::A)
        os << "A(p=" << p << ",n=" << n << ",q=" << q << ")";
    else
        os << "B(n=" << n << ")";
    return os.str();
}

namespace {

std::uint64_t ipow(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

// Gal(Q(mu_L)/Q(mu_sub)) as residues t mod L with t = 1 mod sub.
std::vector<std::uint64_t> relative_group(std::uint64_t L, std::uint64_t sub) {
    std::vector<std::uint64_t> g;
    for (auto t : CycField(L).units())
        if (t % sub == 1 % sub) g.push_back(t);
    return g;
}

std::uint64_t roots_of_unity_order(const CycField& k) {
    std::uint64_t m = k.conductor();
    return m % 2 == 0 ? m : 2 * m;
}

} // namespace

bool is_special_case(const CycField& k, std::uint64_t p, unsigned n) {
    return p == 2 && n >= 2 && k.conductor() % 4 != 0;
}

H1Factor h1_prime_power(const CycField& k, std::uint64_t d, std::uint64_t p, unsigned n) {
    std::uint64_t pn = ipow(p, n);
    if (n == 0 || d % pn != 0 || (d / pn) % p == 0)
        throw Error(ErrorKind::InvalidArgument, "p^n must exactly divide d");
    H1Factor f;
    f.p = p;
    f.n = n;
    f.special = is_special_case(k, p, n);
    f.degree_total = degree_ext(k, d);
    f.degree_ppart = degree_ext(k, pn);
    std::uint64_t rel = f.degree_total / f.degree_ppart;
    std::ostringstream why;
    if (f.special) {
        f.trivial = false;
        why << "special case: k meets Q(mu_" << pn << ") in a totally real field";
    } else {
        bool mu_p = mu_in_field(p, k);
        f.trivial = !(mu_p && rel % p == 0);
        if (!mu_p)
            why << "mu_" << p << " not in k";
        else
            why << "[k(mu_" << d << "):k(mu_" << pn << ")] = " << rel << (rel % p == 0 ? " divisible by " : " prime to ") << p;

        std::uint64_t L = canonical_conductor(lcm_u64(k.conductor(), d));
        std::uint64_t sub = canonical_conductor(lcm_u64(k.conductor(), pn));
        auto G = relative_group(L, sub);
        std::uint64_t w = gcd_u64(pn, roots_of_unity_order(k));
        std::set<std::uint64_t> Gw;
        for (auto t : G) Gw.insert(powmod(t, w, L));
        f.hom_order = G.size() / Gw.size();
        for (auto t : G)
            if (multiplicative_order(Int(static_cast<unsigned long>(t)), L) == G.size()) {
                f.hom_source_cyclic = true;
                break;
            }
    }
    f.reason = why.str();
    return f;
}

H1Report h1_total(const CycField& k, std::uint64_t d) {
    if (d < 1) throw Error(ErrorKind::InvalidArgument, "d must be positive");
    H1Report r;
    r.field = k.conductor();
    r.d = d;
    for (auto [p, n] : factor_small(d)) {
        r.factors.push_back(h1_prime_power(k, d, p, n));
        if (!r.factors.back().trivial) r.overall_trivial = false;
    }
    return r;
}

bool minus_one_is_dth_power(const CycField& k, std::uint64_t d) {
    if (d == 0 || d % 2) throw Error(ErrorKind::InvalidArgument, "d must be even");
    unsigned n = valuation_u64(d, 2);
    return mu_in_field(ipow(2, n + 1), k);
}

PredictionReport hasse_principle_predicted(const CycField& k, std::uint64_t d) {
    if (d < 3) throw Error(ErrorKind::InvalidArgument, "degree must be at least 3");
    PredictionReport out;
    out.h1 = h1_total(k, d);
    bool fails = !out.h1.overall_trivial;
    for (const auto& f : out.h1.factors)
        if (!f.trivial) out.reasons.push_back("H^1 factor at " + std::to_string(f.p) + "^" + std::to_string(f.n) + " nontrivial: " + f.reason);
    if (out.h1.overall_trivial) out.reasons.push_back("H^1(k(mu_d)/k, mu_d) = 0");
    if (d % 2 == 0) {
        out.minus_one_dth_power = minus_one_is_dth_power(k, d);
        if (*out.minus_one_dth_power) {
            fails = true;
            out.reasons.push_back("-1 is a d-th power in k");
        } else {
            out.reasons.push_back("-1 is not a d-th power in k");
        }
    }
    out.verdict = fails ? Prediction::CounterexamplesExist : Prediction::AlwaysHolds;
    return out;
}

CaseDecomposition decompose_nontrivial(const CycField& k, std::uint64_t d) {
    auto rep = h1_total(k, d);
    if (rep.overall_trivial) throw Error(ErrorKind::InvalidArgument, "H^1 is trivial for " + k.name() + ", d = " + std::to_string(d));
    for (const auto& f : rep.factors)
        if (f.special) {
            CaseDecomposition c;
            c.kind = CaseDecomposition::Kind::B;
            c.p = 2;
            c.n = f.n;
            return c;
        }
    for (const auto& f : rep.factors) {
        if (f.trivial) continue;
        std::uint64_t pn = ipow(f.p, f.n);
        for (auto [q, e] : factor_small(d / pn)) {
            (void)e;
            // [k(mu_q) : k(mu_{p^n}) cap k(mu_q)] = [k(mu_{p^n q}) : k(mu_{p^n})]
            if ((degree_ext(k, pn * q) / degree_ext(k, pn)) % f.p != 0) continue;
            unsigned m = 0;
            while (m < f.n && mu_in_field(ipow(f.p, m + 1), CycField(lcm_u64(k.conductor(), q)))) ++m;
            std::uint64_t pm = ipow(f.p, m);
            if (m == 0 || !mu_in_field(f.p, k) || (degree_ext(k, q) / degree_ext(k, pm)) % f.p != 0)
                throw Error(ErrorKind::InternalInconsistency, "tower argument produced a trivial H^1(k(mu_q)/k)");
            CaseDecomposition c;
            c.kind = CaseDecomposition::Kind::A;
            c.p = f.p;
            c.n = f.n;
            c.q = q;
            c.m = m;
            return c;
        }
    }
    throw Error(ErrorKind::InternalInconsistency, "nontrivial H^1 without a case (a) or (b) witness");
}

namespace {

Representative representative_b(const CycField& k, const CaseDecomposition& dec) {
    Representative r;
    r.decomposition = dec;
    r.power = ipow(2, dec.n);
    CycField E(canonical_conductor(lcm_u64(k.conductor(), r.power)));
    CycElt one_plus_i = CycElt(E, Rat(1)) + root_of_unity(E, 4);
    r.root = one_plus_i;
    CycElt a = one_plus_i.pow(static_cast<long>(r.power));
    r.alpha = a.restrict_to(k);
    r.power_in_extension = r.root.pow(static_cast<long>(r.power)) == r.alpha.embed(E);
    r.not_power_in_k = !is_dth_power_cyclotomic(r.alpha, static_cast<unsigned>(r.power)).has_value();
    return r;
}

Representative representative_a(const CycField& k, const CaseDecomposition& dec) {
    const std::uint64_t p = dec.p, q = dec.q;
    CycField K(canonical_conductor(lcm_u64(k.conductor(), q)));
    const std::uint64_t M = K.conductor();
    auto G = relative_group(M, k.conductor());
    if (G.size() % p != 0)
        throw Error(ErrorKind::InvalidArgument, "p does not divide [k(mu_q):k] for " + dec.label());
    std::set<std::uint64_t> Gp;
    for (auto t : G) Gp.insert(powmod(t, p, M));
    // generators of G/G^p (order p): anything outside G^p, smallest residue mod q first
    std::vector<std::uint64_t> gens;
    for (auto t : G)
        if (!Gp.count(t)) gens.push_back(t);
    std::stable_sort(gens.begin(), gens.end(), [&](std::uint64_t a, std::uint64_t b) { return a % q < b % q; });

    CycElt zp = root_of_unity(k, p).embed(K);
    auto trace_to_L = [&](const CycElt& x) {
        CycElt s(K);
        for (auto h : Gp) s += x.automorphism(h);
        return s;
    };
    // exponents r for theta = Tr_{K/L}(zeta_M^r), zeta_q first
    std::vector<std::uint64_t> seeds{M / q};
    for (std::uint64_t r = 1; r < M && seeds.size() < 8; ++r)
        if (r != M / q) seeds.push_back(r);

    unsigned attempts = 0;
    for (auto tau : gens)
        for (auto s : seeds) {
            ++attempts;
            CycElt theta = trace_to_L(CycElt::zeta_power(K, static_cast<long>(s)));
            CycElt rho(K), zj(K, Rat(1));
            CycElt img = theta;
            for (std::uint64_t j = 0; j < p; ++j) {
                rho += zj * img;
                zj *= zp;
                img = img.automorphism(tau);
            }
            if (rho.is_zero()) continue;
            Representative r;
            r.decomposition = dec;
            r.power = ipow(p, dec.n);
            r.root = rho;
            r.tau = tau;
            r.attempts = attempts;
            CycElt a = rho.pow(static_cast<long>(r.power));
            r.alpha = a.restrict_to(k);
            bool in_L = true;
            for (auto h : Gp) in_L = in_L && rho.automorphism(h) == rho;
            r.power_in_extension = in_L && r.root.pow(static_cast<long>(r.power)) == r.alpha.embed(K);
            r.not_power_in_k = !is_dth_power_cyclotomic(r.alpha, static_cast<unsigned>(r.power)).has_value();
            return r;
        }
    throw Error(ErrorKind::ResolventDegenerate, "every Lagrange resolvent vanished for " + dec.label());
}

} // namespace

Representative find_representative(const CycField& k, const CaseDecomposition& dec, std::uint64_t d) {
    std::uint64_t pn = ipow(dec.p, dec.n);
    if (d % pn != 0 || (d / pn) % dec.p == 0) throw Error(ErrorKind::InvalidArgument, "decomposition does not match d");
    Representative r = dec.kind == CaseDecomposition::Kind::B ? representative_b(k, dec) : representative_a(k, dec);
    if (!r.not_power_in_k || !r.power_in_extension)
        throw Error(ErrorKind::VerificationFailed, "representative " + r.alpha.to_string() + " fails its certificate");
    return r;
}

} // namespace hasse
