#include "hasse/galois.hpp"

#include "hasse/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include <omp.h>

namespace hasse {

namespace {

using Vec3 = std::array<std::uint32_t, 3>;

std::uint64_t primitive_root(std::uint64_t ell) {
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

// b_i = a_i / a_0
std::array<CycElt, 3> radicands(const DiagonalSurface& S) {
    return {S.a[1] / S.a[0], S.a[2] / S.a[0], S.a[3] / S.a[0]};
}

// Image of an element of Q(mu_m) in F_ell under zeta_m -> z; nullopt if the denominator vanishes.
std::optional<std::uint64_t> reduce_at(const CycElt& x, std::uint64_t z, std::uint64_t ell) {
    std::uint64_t den = mpz_fdiv_ui(x.denominator().get_mpz_t(), ell);
    if (den == 0) return std::nullopt;
    std::uint64_t acc = 0;
    const auto& num = x.numerators();
    for (std::size_t i = num.size(); i-- > 0;) acc = (mulmod(acc, z, ell) + mpz_fdiv_ui(num[i].get_mpz_t(), ell)) % ell;
    return mulmod(acc, invmod(den, ell), ell);
}

std::uint32_t encode(const Vec3& v, unsigned d) { return (v[0] * d + v[1]) * d + v[2]; }
Vec3 decode(std::uint32_t x, unsigned d) { return {x / (d * d), (x / d) % d, x % d}; }

// Greedy generating set of a subgroup of (Z/d)^3 given by its member list (sorted).
std::vector<Vec3> subgroup_generators(const std::vector<Vec3>& members, unsigned d) {
    std::vector<Vec3> gens;
    std::vector<char> in_span(static_cast<std::size_t>(d) * d * d, 0);
    std::vector<Vec3> span{{0, 0, 0}};
    in_span[0] = 1;
    for (const auto& m : members) {
        if (in_span[encode(m, d)]) continue;
        gens.push_back(m);
        // close the span under adding the new generator
        std::vector<Vec3> cur = span;
        for (const auto& s : cur) {
            Vec3 x = s;
            for (;;) {
                for (int i = 0; i < 3; ++i) x[i] = (x[i] + m[i]) % d;
                if (in_span[encode(x, d)]) break;
                in_span[encode(x, d)] = 1;
                span.push_back(x);
            }
        }
    }
    return gens;
}

std::array<long, 3> centered(const Vec3& v, unsigned d) {
    std::array<long, 3> r;
    for (int i = 0; i < 3; ++i) {
        long x = static_cast<long>(v[i]);
        r[i] = 2 * x > static_cast<long>(d) ? x - static_cast<long>(d) : x;
    }
    return r;
}

CycElt power_product(const std::array<CycElt, 3>& b, const std::array<long, 3>& e) {
    CycElt r(b[0].field(), Rat(1));
    for (int i = 0; i < 3; ++i)
        if (e[i]) r *= b[i].pow(e[i]);
    return r;
}

long max_coeff_bits(const CycElt& x) {
    long bits = static_cast<long>(mpz_sizeinbase(x.denominator().get_mpz_t(), 2));
    for (const auto& c : x.numerators()) bits = std::max<long>(bits, static_cast<long>(mpz_sizeinbase(c.get_mpz_t(), 2)));
    return bits;
}

// Exponent h with z = e^{2 pi i h/d}, for z numerically close to a d-th root of unity.
unsigned nearest_root_index(const BigComplex& z, unsigned d) {
    mpfr_prec_t p = z.prec();
    BigFloat two_pi = BigFloat::pi(p) * BigFloat(2.0, p);
    BigFloat x = z.arg() / two_pi * BigFloat(static_cast<double>(d), p);
    long h = static_cast<long>(x.round().get_si());
    h %= static_cast<long>(d);
    if (h < 0) h += static_cast<long>(d);
    BigComplex diff = z - BigComplex::root_of_unity(h, static_cast<long>(d), p);
    if (!(diff.abs() < BigFloat(1e-12, p)))
        throw Error(ErrorKind::PrecisionExceeded, "root of unity discrepancy not resolved numerically");
    return static_cast<unsigned>(h);
}

LatticeGenerator make_generator(const std::array<CycElt, 3>& b, const CycField& K0, const Vec3& v, unsigned d,
                                const CycElt& w) {
    LatticeGenerator g;
    g.e = centered(v, d);
    g.w = w;
    mpfr_prec_t prec = 192 + 2 * max_coeff_bits(w);
    for (const auto& x : b) prec = std::max<mpfr_prec_t>(prec, 192 + 2 * max_coeff_bits(x));
    BigComplex ge(prec);
    ge = BigComplex(BigFloat(1.0, prec), BigFloat(0.0, prec));
    for (int i = 0; i < 3; ++i) {
        if (!g.e[i]) continue;
        BigComplex gi = b[i].numeric(1, prec).principal_root(d);
        ge = ge * gi.pow(g.e[i]);
    }
    g.eta = nearest_root_index(ge / w.numeric(1, prec), d);
    (void)K0;
    return g;
}

} // namespace

bool RelationLattice::contains(const Vec3& e) const {
    return std::binary_search(members.begin(), members.end(), Vec3{e[0] % d, e[1] % d, e[2] % d});
}

RelationLattice relation_lattice(const DiagonalSurface& S, const GaloisOptions& opt) {
    const unsigned d = S.d;
    if (d > opt.max_degree) throw Error(ErrorKind::BudgetExceeded, "degree " + std::to_string(d) + " exceeds the Galois budget");
    const CycField& k = S.field;
    const std::uint64_t m = k.conductor();
    RelationLattice L;
    L.d = d;
    L.M0 = canonical_conductor(lcm_u64(m, 2 * d));
    CycField K0(L.M0);
    auto b = radicands(S);

    const std::size_t N = static_cast<std::size_t>(d) * d * d;
    std::vector<char> alive(N, 1);
    std::size_t alive_count = N;

    std::uint64_t ell = 1;
    auto add_primes = [&](unsigned stable_needed, unsigned cap) {
        unsigned stable = 0, used = 0;
        while (stable < stable_needed && used < cap) {
            ell += L.M0;
            if (!is_prime_u64(ell)) continue;
            std::uint64_t g = primitive_root(ell);
            std::uint64_t rm = powmod(g, (ell - 1) / m, ell);
            std::uint64_t gd = powmod(g, (ell - 1) / d, ell);
            std::map<std::uint64_t, std::uint32_t> dlog;
            for (std::uint32_t j = 0, x = 1; j < d; ++j, x = static_cast<std::uint32_t>(mulmod(x, gd, ell))) dlog[x] = j;
            std::vector<Vec3> chars;
            bool usable = true;
            for (auto u : k.units()) {
                std::uint64_t z = powmod(rm, u, ell);
                Vec3 v;
                for (int i = 0; i < 3 && usable; ++i) {
                    auto r = reduce_at(b[i], z, ell);
                    if (!r || *r == 0) {
                        usable = false;
                        break;
                    }
                    v[i] = dlog.at(powmod(*r, (ell - 1) / d, ell));
                }
                if (!usable) break;
                chars.push_back(v);
            }
            if (!usable) continue;
            ++used;
            ++L.primes_used;
            std::size_t before = alive_count;
            for (std::uint32_t x = 0; x < N; ++x) {
                if (!alive[x]) continue;
                Vec3 e = decode(x, d);
                for (const auto& v : chars)
                    if ((static_cast<std::uint64_t>(v[0]) * e[0] + static_cast<std::uint64_t>(v[1]) * e[1] +
                         static_cast<std::uint64_t>(v[2]) * e[2]) % d != 0) {
                        alive[x] = 0;
                        --alive_count;
                        break;
                    }
            }
            stable = alive_count == before ? stable + 1 : 0;
        }
    };

    auto members_now = [&] {
        std::vector<Vec3> out;
        for (std::uint32_t x = 0; x < N; ++x)
            if (alive[x]) out.push_back(decode(x, d));
        return out;
    };

    auto root_of = [&](const Vec3& v) { return is_dth_power_cyclotomic(power_product(b, centered(v, d)).embed(K0), d, opt.power); };

    add_primes(8, 400);
    for (int round = 0; round < 3; ++round) {
        auto members = members_now();
        auto gens = subgroup_generators(members, d);
        std::vector<LatticeGenerator> out;
        bool ok = true;
        for (const auto& v : gens) {
            auto w = root_of(v);
            if (!w) {
                ok = false;
                break;
            }
            out.push_back(make_generator(b, K0, v, d, *w));
        }
        if (ok) {
            L.members = std::move(members);
            L.generators = std::move(out);
            return L;
        }
        add_primes(16 * (round + 2), 400);
    }

    // exact membership test on every survivor
    auto survivors = members_now();
    if (survivors.size() > 4096) throw Error(ErrorKind::BudgetExceeded, "relation lattice search too large");
    std::vector<Vec3> members;
    std::map<Vec3, CycElt> roots;
    for (const auto& v : survivors) {
        if (v == Vec3{0, 0, 0}) {
            members.push_back(v);
            continue;
        }
        if (auto w = root_of(v)) {
            members.push_back(v);
            roots.emplace(v, *w);
        }
    }
    L.exhaustive_fallback = true;
    for (const auto& v : subgroup_generators(members, d)) L.generators.push_back(make_generator(b, K0, v, d, roots.at(v)));
    L.members = std::move(members);
    return L;
}

// ---------------------------------------------------------------------------

SplittingGroup::SplittingGroup(const DiagonalSurface& S, RelationLattice lattice)
    : d_(S.d), M0_(lattice.M0), lattice_(std::move(lattice)) {
    const std::uint64_t m = S.field.conductor();
    CycField K0(M0_);
    for (auto t : K0.units())
        if (t % m == 1 % m) T_.push_back(t);

    const auto& gens = lattice_.generators;
    auto emod = [&](long x) { return static_cast<std::uint32_t>(((x % static_cast<long>(d_)) + d_) % d_); };
    std::vector<Vec3> ge;
    for (const auto& g : gens) ge.push_back({emod(g.e[0]), emod(g.e[1]), emod(g.e[2])});
    auto dot = [&](const Vec3& c, const Vec3& e) {
        return static_cast<std::uint32_t>((static_cast<std::uint64_t>(c[0]) * e[0] + static_cast<std::uint64_t>(c[1]) * e[1] +
                                           static_cast<std::uint64_t>(c[2]) * e[2]) % d_);
    };

    for (std::uint32_t x = 0; x < d_ * d_ * d_; ++x) {
        Vec3 c = decode(x, d_);
        bool ok = true;
        for (const auto& e : ge) ok = ok && dot(c, e) == 0;
        if (ok) perp_.push_back(c);
    }

    CycElt zd = root_of_unity(K0, d_);
    std::vector<CycElt> zpow{CycElt(K0, Rat(1))};
    for (unsigned j = 1; j < d_; ++j) zpow.push_back(zpow.back() * zd);

    for (auto t : T_) {
        std::vector<std::uint32_t> kappa;
        for (const auto& g : gens) {
            CycElt st = g.w.automorphism(t);
            mpfr_prec_t prec = 192 + 2 * max_coeff_bits(g.w);
            unsigned j = nearest_root_index(st.numeric(1, prec) / g.w.numeric(1, prec), d_);
            if (st != zpow[j] * g.w) throw Error(ErrorKind::InternalInconsistency, "sigma_t(w)/w is not the expected root of unity");
            std::uint64_t tm = t % d_;
            kappa.push_back(static_cast<std::uint32_t>((g.eta * ((tm + d_ - 1) % d_) + j) % d_));
        }
        std::optional<Vec3> c0;
        for (std::uint32_t x = 0; x < d_ * d_ * d_ && !c0; ++x) {
            Vec3 c = decode(x, d_);
            bool ok = true;
            for (std::size_t g = 0; g < ge.size() && ok; ++g) ok = dot(c, ge[g]) == kappa[g];
            if (ok) c0 = c;
        }
        if (!c0) throw Error(ErrorKind::InternalInconsistency, "no lift of t = " + std::to_string(t) + " to the splitting field");
        c0_.push_back(*c0);
    }
    std::uint64_t expected = T_.size() * static_cast<std::uint64_t>(d_) * d_ * d_ / lattice_.members.size();
    if (order() != expected) throw Error(ErrorKind::InternalInconsistency, "group order identity fails");
}

unsigned SplittingGroup::t2(std::uint64_t t) const {
    const std::uint64_t dd = 2 * d_;
    if (M0_ % dd == 0) return static_cast<unsigned>(t % dd);
    return static_cast<unsigned>((d_ + (t % dd) * (d_ + 1)) % dd);
}

bool SplittingGroup::contains(const GaloisElement& g) const {
    auto it = std::find(T_.begin(), T_.end(), g.t);
    if (it == T_.end()) return false;
    const auto& c0 = c0_[static_cast<std::size_t>(it - T_.begin())];
    Vec3 diff;
    for (int i = 0; i < 3; ++i) diff[i] = (g.c[i] % d_ + d_ - c0[i]) % d_;
    return std::binary_search(perp_.begin(), perp_.end(), diff);
}

GaloisElement SplittingGroup::multiply(const GaloisElement& a, const GaloisElement& b) const {
    GaloisElement r;
    r.t = a.t * b.t % M0_;
    std::uint64_t tm = a.t % d_;
    for (int i = 0; i < 3; ++i) r.c[i] = static_cast<std::uint32_t>((a.c[i] + tm * b.c[i]) % d_);
    return r;
}

GaloisElement SplittingGroup::inverse(const GaloisElement& a) const {
    GaloisElement r;
    r.t = M0_ == 1 ? 1 : invmod(a.t % M0_, M0_);
    std::uint64_t tm = r.t % d_;
    for (int i = 0; i < 3; ++i) r.c[i] = static_cast<std::uint32_t>((d_ - tm * a.c[i] % d_) % d_);
    return r;
}

std::vector<GaloisElement> SplittingGroup::elements() const {
    std::vector<GaloisElement> out;
    out.reserve(order());
    for_each([&](const GaloisElement& g) { out.push_back(g); });
    return out;
}

std::vector<GaloisElement> SplittingGroup::generators() const {
    std::vector<GaloisElement> gens;
    // base part: greedy generators of T
    std::set<std::uint64_t> span{1 % M0_};
    for (std::size_t k = 0; k < T_.size(); ++k) {
        if (span.count(T_[k])) continue;
        GaloisElement g;
        g.t = T_[k];
        g.c = c0_[k];
        gens.push_back(g);
        std::vector<std::uint64_t> frontier(span.begin(), span.end());
        while (!frontier.empty()) {
            std::vector<std::uint64_t> next;
            for (auto x : frontier)
                for (const auto& h : gens) {
                    auto y = x * h.t % M0_;
                    if (span.insert(y).second) next.push_back(y);
                }
            frontier = std::move(next);
        }
    }
    for (const auto& p : subgroup_generators(perp_, d_)) {
        GaloisElement g;
        g.c = p;
        gens.push_back(g);
    }
    return gens;
}

namespace {

constexpr int kQ[3] = {1, 2, 3};
constexpr int kR[3] = {2, 1, 1};
constexpr int kS[3] = {3, 3, 2};

} // namespace

std::size_t SplittingGroup::act(const GaloisElement& g, std::size_t line) const {
    const std::size_t dd = static_cast<std::size_t>(d_) * d_;
    std::size_t comp = line / dd;
    std::uint64_t i = (line % dd) / d_, j = line % d_;
    unsigned s = t2(g.t);
    std::uint64_t half = (s - 1) / 2, sm = s % d_;
    std::uint64_t cq = g.c[kQ[comp] - 1];
    std::uint64_t cs = (g.c[kS[comp] - 1] + d_ - g.c[kR[comp] - 1]) % d_;
    std::uint64_t i2 = (i * sm + half + cq) % d_;
    std::uint64_t j2 = (j * sm + half + cs) % d_;
    return comp * dd + i2 * d_ + j2;
}

std::optional<std::size_t> SplittingGroup::fixed_line(const GaloisElement& g) const {
    unsigned s = t2(g.t);
    std::uint64_t A = (s % d_ + d_ - 1) % d_, half = (s - 1) / 2;
    for (std::size_t comp = 0; comp < 3; ++comp) {
        std::uint64_t cq = g.c[kQ[comp] - 1];
        std::uint64_t cs = (g.c[kS[comp] - 1] + d_ - g.c[kR[comp] - 1]) % d_;
        // A x + half + c = 0 mod d
        std::uint64_t Bi = (2 * d_ - (half + cq) % d_) % d_, Bj = (2 * d_ - (half + cs) % d_) % d_;
        std::uint64_t gA = std::gcd<std::uint64_t>(A, d_);
        if (Bi % gA || Bj % gA) continue;
        std::optional<std::uint64_t> i, j;
        for (std::uint64_t x = 0; x < d_ && (!i || !j); ++x) {
            if (!i && A * x % d_ == Bi) i = x;
            if (!j && A * x % d_ == Bj) j = x;
        }
        return comp * d_ * d_ + *i * d_ + *j;
    }
    return std::nullopt;
}

SplittingGroup splitting_group(const DiagonalSurface& S, const GaloisOptions& opt) {
    return SplittingGroup(S, relation_lattice(S, opt));
}

std::vector<std::size_t> action_on_lines(const SplittingGroup& G, const GaloisElement& g) {
    std::vector<std::size_t> p(G.line_count());
    for (std::size_t l = 0; l < p.size(); ++l) p[l] = G.act(g, l);
    return p;
}

std::vector<ClassEntry> conjugacy_classes(const SplittingGroup& G) {
    auto elems = G.elements();
    std::sort(elems.begin(), elems.end());
    auto gens = G.generators();
    std::vector<GaloisElement> inv;
    for (const auto& h : gens) inv.push_back(G.inverse(h));
    std::vector<char> seen(elems.size(), 0);
    auto index = [&](const GaloisElement& x) {
        auto it = std::lower_bound(elems.begin(), elems.end(), x);
        if (it == elems.end() || !(*it == x)) throw Error(ErrorKind::InternalInconsistency, "group not closed under conjugation");
        return static_cast<std::size_t>(it - elems.begin());
    };
    std::vector<ClassEntry> out;
    for (std::size_t s = 0; s < elems.size(); ++s) {
        if (seen[s]) continue;
        seen[s] = 1;
        ClassEntry ce;
        ce.rep = elems[s];
        ce.size = 1;
        std::vector<GaloisElement> frontier{elems[s]};
        while (!frontier.empty()) {
            std::vector<GaloisElement> next;
            for (const auto& x : frontier)
                for (std::size_t h = 0; h < gens.size(); ++h) {
                    auto y = G.multiply(G.multiply(gens[h], x), inv[h]);
                    auto iy = index(y);
                    if (!seen[iy]) {
                        seen[iy] = 1;
                        ++ce.size;
                        next.push_back(y);
                    }
                }
            frontier = std::move(next);
        }
        ce.fixed_line = G.fixed_line(ce.rep);
        out.push_back(ce);
    }
    return out;
}

ChebotarevReport chebotarev_analysis(const SplittingGroup& G, const GaloisOptions& opt) {
    ChebotarevReport r;
    G.for_each([&](const GaloisElement& g) {
        if (!r.every_class_fixes) return;
        if (!G.fixed_line(g)) {
            r.every_class_fixes = false;
            r.fixed_point_free = g;
        }
    });
    auto gens = G.generators();
    for (std::size_t l = 0; l < G.line_count() && !r.common_line; ++l) {
        bool all = true;
        for (const auto& g : gens) all = all && G.act(g, l) == l;
        if (all) r.common_line = l;
    }
    r.common_fixed_point = r.common_line.has_value();
    if (G.order() <= opt.max_class_group) {
        r.classes = conjugacy_classes(G);
        r.classes_materialized = true;
    }
    return r;
}

std::vector<GaloisElement> split_frobenius(const DiagonalSurface& S, const SplittingGroup& G, std::uint64_t ell) {
    const std::uint64_t M0 = G.M0(), m = S.field.conductor();
    const unsigned d = G.d();
    if (!is_prime_u64(ell) || ell % M0 != 1 % M0 || (ell - 1) % d != 0)
        throw Error(ErrorKind::InvalidArgument, "ell must be a prime splitting completely in K0");
    auto b = radicands(S);
    std::uint64_t g = primitive_root(ell);
    std::uint64_t rho = powmod(g, (ell - 1) / M0, ell);
    std::vector<GaloisElement> out;
    for (auto t : CycField(M0).units()) {
        std::uint64_t r = powmod(rho, t, ell);
        std::uint64_t zm = powmod(r, M0 / m, ell), zd = powmod(r, M0 / d, ell);
        std::map<std::uint64_t, std::uint32_t> dlog;
        for (std::uint32_t j = 0, x = 1; j < d; ++j, x = static_cast<std::uint32_t>(mulmod(x, zd, ell))) dlog[x] = j;
        GaloisElement fr;
        for (int i = 0; i < 3; ++i) {
            auto v = reduce_at(b[i], zm, ell);
            if (!v || *v == 0) throw Error(ErrorKind::InvalidArgument, "ell divides a radicand");
            fr.c[i] = dlog.at(powmod(*v, (ell - 1) / d, ell));
        }
        out.push_back(fr);
    }
    return out;
}

// ---------------------------------------------------------------------------

std::vector<std::uint64_t> bad_primes(const DiagonalSurface& S) {
    std::set<std::uint64_t> ps;
    for (auto [p, e] : factor_small(2ull * S.d * S.field.conductor())) ps.insert(p);
    for (const auto& a : S.a) {
        CycElt num(a.field(), a.numerators(), 1);
        Rat nn = num.norm();
        for (const Int& x : {Int(nn.get_num()), a.denominator()}) {
            Int ax = abs(x);
            if (ax <= 1) continue;
            for (const auto& p : factor(ax).primes()) {
                if (!p.fits_ulong_p()) throw Error(ErrorKind::BudgetExceeded, "bad prime exceeds 64 bits");
                ps.insert(p.get_ui());
            }
        }
    }
    return {ps.begin(), ps.end()};
}

std::vector<Place> bad_places(const DiagonalSurface& S) {
    std::vector<Place> out;
    if (S.field.is_rational()) out.push_back(Place::real());
    for (auto p : bad_primes(S)) out.push_back(Place::rational(p));
    return out;
}

namespace {

std::vector<std::uint64_t> scan_candidates(std::uint64_t bound, const std::vector<std::uint64_t>& skip) {
    std::vector<std::uint64_t> out;
    for (auto p : primes_up_to(bound))
        if (!std::binary_search(skip.begin(), skip.end(), p)) out.push_back(p);
    return out;
}

} // namespace

ScanResult scan_unramified_serial(const DiagonalSurface& S, std::uint64_t bound, const std::vector<std::uint64_t>& skip,
                                  const LocalOptions& opt) {
    std::vector<std::uint64_t> sk(skip);
    std::sort(sk.begin(), sk.end());
    ScanResult r;
    for (auto p : scan_candidates(bound, sk)) {
        try {
            if (!has_line_locally(S, Place::rational(p), opt)) {
                r.ell = p;
                return r;
            }
        } catch (const Error& e) {
            if (!e.is_budget()) throw;
            r.error = e.what();
            return r;
        }
    }
    return r;
}

ScanResult scan_unramified(const DiagonalSurface& S, std::uint64_t bound, const std::vector<std::uint64_t>& skip,
                           const LocalOptions& opt) {
    std::vector<std::uint64_t> sk(skip);
    std::sort(sk.begin(), sk.end());
    auto cand = scan_candidates(bound, sk);
    // 0 = has line, 1 = no line, 2 = budget error, 3 = other error
    std::vector<int> status(cand.size(), 0);
    std::vector<std::string> msg(cand.size());
    const std::size_t chunk = 64;
    for (std::size_t lo = 0; lo < cand.size(); lo += chunk) {
        const std::size_t hi = std::min(cand.size(), lo + chunk);
#pragma omp parallel for schedule(dynamic, 1)
        for (std::size_t i = lo; i < hi; ++i) {
            try {
                status[i] = has_line_locally(S, Place::rational(cand[i]), opt) ? 0 : 1;
            } catch (const Error& e) {
                status[i] = e.is_budget() ? 2 : 3;
                msg[i] = e.what();
            } catch (const std::exception& e) {
                status[i] = 3;
                msg[i] = e.what();
            }
        }
        for (std::size_t i = lo; i < hi; ++i) {
            ScanResult r;
            if (status[i] == 1) {
                r.ell = cand[i];
                return r;
            }
            if (status[i] == 2) {
                r.error = msg[i];
                return r;
            }
            if (status[i] == 3) throw Error(ErrorKind::InternalInconsistency, "local scan at " + std::to_string(cand[i]) + ": " + msg[i]);
        }
    }
    return {};
}

// ---------------------------------------------------------------------------

const char* to_string(VerdictKind k) {
    switch (k) {
    case VerdictKind::GlobalLine: return "GlobalLine";
    case VerdictKind::LocalObstruction: return "LocalObstruction";
    case VerdictKind::HasseFailure: return "HasseFailure";
    case VerdictKind::Unsupported: return "Unsupported";
    }
    return "?";
}

Verdict hasse_verdict(const DiagonalSurface& S, const VerdictOptions& opt) {
    Verdict v;
    auto unsupported = [&](const std::string& why) {
        v.kind = VerdictKind::Unsupported;
        v.detail = why;
        return v;
    };
    try {
        if (auto w = has_line_over(S, S.field, opt.galois.power)) {
            v.kind = VerdictKind::GlobalLine;
            v.line = w;
            v.detail = "line over " + S.field.name() + " on component " + std::to_string(w->component);
            return v;
        }
    } catch (const Error& e) {
        if (!e.is_budget()) throw;
        return unsupported(std::string("global line test: ") + e.what());
    }

    std::vector<std::uint64_t> bad;
    try {
        bad = bad_primes(S);
    } catch (const Error& e) {
        if (!e.is_budget()) throw;
        return unsupported(std::string("bad primes: ") + e.what());
    }

    std::optional<SplittingGroup> G;
    std::optional<ChebotarevReport> cheb;
    std::string galois_error;
    try {
        G.emplace(splitting_group(S, opt.galois));
        cheb = chebotarev_analysis(*G, opt.galois);
    } catch (const Error& e) {
        if (!e.is_budget()) throw;
        galois_error = e.what();
    }

    std::optional<std::string> scan_error;
    if (cheb && !cheb->every_class_fixes) {
        auto sr = opt.parallel_scan ? scan_unramified(S, opt.scan_bound, bad, opt.local)
                                    : scan_unramified_serial(S, opt.scan_bound, bad, opt.local);
        if (sr.ell) {
            v.kind = VerdictKind::LocalObstruction;
            v.place = std::to_string(*sr.ell);
            v.detail = "no line at the unramified prime " + v.place + " (Frobenius class without a fixed line)";
            return v;
        }
        scan_error = sr.error;
    }

    std::vector<LocalLineResult> checks;
    try {
        for (const auto& P : bad_places(S)) {
            auto rep = local_line_report(S, P, opt.local);
            for (const auto& r : rep) {
                checks.push_back(r);
                if (!r.has_line) {
                    v.kind = VerdictKind::LocalObstruction;
                    v.place = r.place;
                    v.detail = "no line at the bad place " + r.place;
                    return v;
                }
            }
        }
    } catch (const Error& e) {
        if (!e.is_budget()) throw;
        return unsupported(std::string("local test at a bad place: ") + e.what());
    }

    if (!cheb) return unsupported("Galois group: " + galois_error);
    if (!cheb->every_class_fixes)
        return unsupported(scan_error ? "local scan: " + *scan_error
                                      : "some Frobenius class fixes no line but no witness prime <= " + std::to_string(opt.scan_bound));
    if (cheb->common_fixed_point)
        throw Error(ErrorKind::InternalInconsistency, "Galois group fixes a line but no line was found over the base field");

    v.kind = VerdictKind::HasseFailure;
    v.detail = "lines everywhere locally, none globally";
    auto& c = v.certificate;
    c.group_order = G->order();
    c.base_degree = G->base_degree();
    c.lattice_index = G->lattice().members.size();
    c.classes = cheb->classes;
    c.classes_materialized = cheb->classes_materialized;
    c.bad_place_checks = std::move(checks);
    for (const auto& C : hilbert_scheme(S)) {
        NonPowerWitness w;
        w.component = C.index;
        w.u_is_power = is_dth_power_cyclotomic(C.u, S.d, opt.galois.power).has_value();
        w.v_is_power = is_dth_power_cyclotomic(C.v, S.d, opt.galois.power).has_value();
        c.non_powers.push_back(w);
    }
    return v;
}

} // namespace hasse
