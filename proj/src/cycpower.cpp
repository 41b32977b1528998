// is_dth_power_cyclotomic: exact d-th root extraction in Q(mu_m).
//
// For a prime power q | d and integral alpha, every root beta of x^q = alpha is
// integral. For h in the stabilizer H of alpha in Gal(K/Q) we have sigma_h(beta) = zeta_g^{c(h)} beta with c a crossed
// homomorphism H -> Z/g, g = #mu_q(K). Fixing the complex root at one
// embedding per coset of H and the cocycle c therefore determines all complex
// images of beta; inverting the embedding matrix recovers its coefficients.

#include "hasse/cyclotomic.hpp"

#include "hasse/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

namespace hasse {

namespace {

using Matrix = std::vector<std::vector<BigComplex>>;

// Inverse of V[j][i] = omega^{t_j i} (rows indexed by the units t_j).
std::shared_ptr<const Matrix> inverse_embedding_matrix(const CycField& F, mpfr_prec_t prec) {
    static std::map<std::pair<std::uint64_t, mpfr_prec_t>, std::shared_ptr<const Matrix>> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({F.conductor(), prec});
        if (it != cache.end()) return it->second;
    }
    const unsigned n = F.degree();
    const auto& U = F.units();
    const long m = static_cast<long>(F.conductor());
    Matrix A(n, std::vector<BigComplex>(2 * n, BigComplex(prec)));
    for (unsigned j = 0; j < n; ++j) {
        for (unsigned i = 0; i < n; ++i)
            A[j][i] = BigComplex::root_of_unity(static_cast<long>((U[j] * i) % static_cast<std::uint64_t>(m)), m, prec);
        A[j][n + j] = BigComplex(BigFloat(1.0, prec), BigFloat(0.0, prec));
    }
    for (unsigned col = 0; col < n; ++col) {
        unsigned piv = col;
        BigFloat best = A[col][col].norm2();
        for (unsigned r = col + 1; r < n; ++r) {
            BigFloat v = A[r][col].norm2();
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        std::swap(A[col], A[piv]);
        BigComplex inv = BigComplex(BigFloat(1.0, prec), BigFloat(0.0, prec)) / A[col][col];
        for (auto& x : A[col]) x = x * inv;
        for (unsigned r = 0; r < n; ++r) {
            if (r == col) continue;
            BigComplex f = A[r][col];
            if (f.re.is_zero() && f.im.is_zero()) continue;
            for (unsigned c = col; c < 2 * n; ++c) A[r][c] = A[r][c] - f * A[col][c];
        }
    }
    auto out = std::make_shared<Matrix>(n, std::vector<BigComplex>(n, BigComplex(prec)));
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) (*out)[i][j] = A[i][n + j];
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(std::make_pair(F.conductor(), prec), out);
    return out;
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

std::uint64_t mod_int(const Int& x, std::uint64_t ell) {
    return mpz_fdiv_ui(x.get_mpz_t(), static_cast<unsigned long>(ell));
}

// Sound rejection: alpha = beta^d forces alpha to be a d-th power residue at
// every prime where alpha is a unit. Uses primes splitting completely.
bool residue_prefilter_rejects(const CycElt& a, unsigned d, unsigned nprimes) {
    const CycField& F = a.field();
    std::uint64_t M = F.conductor();
    unsigned used = 0;
    for (std::uint64_t ell = M + 1; used < nprimes && ell < 2'000'000; ell += M) {
        if (!is_prime_u64(ell) || ell <= 3) continue;
        if (mod_int(a.denominator(), ell) == 0) continue;
        ++used;
        std::uint64_t g = primitive_root_mod(ell);
        std::uint64_t r = powmod(g, (ell - 1) / M, ell);
        std::uint64_t den_inv = invmod(mod_int(a.denominator(), ell), ell);
        std::uint64_t ex = (ell - 1) / std::gcd<std::uint64_t>(d, ell - 1);
        std::vector<std::uint64_t> coeff;
        for (const auto& c : a.numerators()) coeff.push_back(mod_int(c, ell));
        for (auto t : F.units()) {
            std::uint64_t z = powmod(r, t, ell), acc = 0;
            for (std::size_t i = coeff.size(); i-- > 0;) acc = (mulmod(acc, z, ell) + coeff[i]) % ell;
            acc = mulmod(acc, den_inv, ell);
            if (acc == 0) continue;
            if (powmod(acc, ex, ell) != 1) return true;
        }
    }
    return false;
}

bool rational_power(const Rat& x, unsigned d) {
    if (d % 2 == 0 && x < 0) return false;
    return exact_root(x.get_num(), d).has_value() && exact_root(x.get_den(), d).has_value();
}

bool near_integer(const BigFloat& x, Int& out) {
    out = x.round();
    BigFloat diff = abs(x - BigFloat(out, x.prec()));
    return diff < BigFloat(0.25, x.prec());
}

std::optional<CycElt> root_prime_power(const CycElt& alpha, unsigned q, const PowerOptions& opt) {
    const CycField& F = alpha.field();
    const unsigned n = F.degree();
    const std::uint64_t M = F.conductor();
    const auto& U = F.units();

    // make integral: alpha' = alpha * c^q
    Int c = 1;
    if (alpha.denominator() != 1) {
        try {
            auto fd = factor(alpha.denominator());
            for (auto& [p, e] : fd.factors) {
                Int pp;
                mpz_pow_ui(pp.get_mpz_t(), p.get_mpz_t(), (e + q - 1) / q);
                c *= pp;
            }
        } catch (const Error& err) {
            if (!err.is_budget()) throw;
            c = alpha.denominator();
        }
    }
    Int cq;
    mpz_pow_ui(cq.get_mpz_t(), c.get_mpz_t(), q);
    CycElt a = alpha.scaled(Rat(cq));

    // stabilizer H of a, coset representatives
    std::vector<std::uint64_t> H;
    for (auto t : U)
        if (t == 1 || a.automorphism(t) == a) H.push_back(t);
    std::vector<std::uint64_t> reps;
    std::vector<bool> covered(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (covered[i]) continue;
        reps.push_back(U[i]);
        for (auto h : H) covered[F.unit_index((U[i] * h) % M)] = true;
    }

    std::uint64_t w = M % 2 == 0 ? M : 2 * M;
    unsigned g = static_cast<unsigned>(std::gcd<std::uint64_t>(q, w));
    CycElt zg = root_of_unity(F, g);

    // action of H on mu_g
    std::vector<CycElt> zpow;
    {
        CycElt p(F, Rat(1));
        for (unsigned i = 0; i < g; ++i) {
            zpow.push_back(p);
            p *= zg;
        }
    }
    auto act_of = [&](std::uint64_t h) -> unsigned {
        CycElt img = zg.automorphism(h);
        for (unsigned x = 0; x < g; ++x)
            if (zpow[x] == img) return x;
        throw Error(ErrorKind::InternalInconsistency, "automorphism does not preserve mu_g");
    };
    std::map<std::uint64_t, unsigned> act;
    for (auto h : H) act[h] = act_of(h);

    // generators of H
    std::vector<std::uint64_t> gens;
    {
        std::vector<std::uint64_t> sub{1};
        auto in_sub = [&](std::uint64_t x) { return std::find(sub.begin(), sub.end(), x) != sub.end(); };
        for (auto h : H) {
            if (in_sub(h)) continue;
            gens.push_back(h);
            // closure
            std::vector<std::uint64_t> frontier = sub;
            while (!frontier.empty()) {
                std::vector<std::uint64_t> next;
                for (auto x : frontier)
                    for (auto gg : gens) {
                        std::uint64_t y = (x * gg) % M;
                        if (!in_sub(y)) {
                            sub.push_back(y);
                            next.push_back(y);
                        }
                    }
                frontier = std::move(next);
            }
        }
    }

    // crossed homomorphisms H -> Z/g
    std::vector<std::map<std::uint64_t, unsigned>> cocycles;
    {
        std::vector<unsigned> assign(gens.size(), 0);
        for (;;) {
            std::map<std::uint64_t, unsigned> cc;
            cc[1] = 0;
            std::vector<std::uint64_t> queue{1};
            bool ok = true;
            for (std::size_t qi = 0; qi < queue.size() && ok; ++qi) {
                std::uint64_t h = queue[qi];
                for (std::size_t k = 0; k < gens.size(); ++k) {
                    std::uint64_t y = (h * gens[k]) % M;
                    unsigned v = static_cast<unsigned>((cc[h] + static_cast<std::uint64_t>(act[h]) * assign[k]) % g);
                    auto it = cc.find(y);
                    if (it == cc.end()) {
                        cc[y] = v;
                        queue.push_back(y);
                    } else if (it->second != v) {
                        ok = false;
                        break;
                    }
                }
            }
            if (ok) cocycles.push_back(cc);
            std::size_t k = 0;
            while (k < assign.size() && ++assign[k] == g) assign[k++] = 0;
            if (k == assign.size()) break;
        }
    }

    const std::size_t C = reps.size();
    double count = static_cast<double>(cocycles.size()) * (static_cast<double>(q) / g) * std::pow(static_cast<double>(q), static_cast<double>(C - 1));
    if (count > static_cast<double>(opt.candidate_budget))
        throw Error(ErrorKind::BudgetExceeded, "root candidate enumeration too large (" + std::to_string(static_cast<long long>(count)) + ")");

    // working precision from the coefficient bound
    mpfr_prec_t prec = opt.start_prec;
    double need;
    {
        double log_house = a.log2_house() / q;
        auto Vinv = inverse_embedding_matrix(F, 128);
        double row = 0;
        for (const auto& r : *Vinv) {
            double s = 0;
            for (const auto& x : r) s += x.abs().to_double();
            row = std::max(row, s);
        }
        need = log_house + std::log2(std::max(row, 1.0)) + std::log2(static_cast<double>(n * H.size() + 1)) + 48;
    }
    while (prec < need) prec *= 2;
    if (prec > opt.max_prec) throw Error(ErrorKind::PrecisionExceeded, "root reconstruction needs " + std::to_string(static_cast<long>(need)) + " bits");

    auto Vinv = inverse_embedding_matrix(F, prec);
    BigFloat quarter(0.25, prec);

    std::vector<BigComplex> root(C, BigComplex(prec)), zimg(C, BigComplex(prec));
    for (std::size_t j = 0; j < C; ++j) {
        root[j] = a.numeric(reps[j], prec).principal_root(q);
        zimg[j] = zg.numeric(reps[j], prec);
    }
    std::vector<BigComplex> eps;
    for (unsigned k = 0; k < q; ++k) eps.push_back(BigComplex::root_of_unity(k, q, prec));

    for (const auto& cc : cocycles) {
        // P[j][a][i] = sum_h Vinv[i][s_j h] * zimg_j^{c(h)} * root_j * eps^a
        std::vector<std::vector<std::vector<BigComplex>>> P(C);
        for (std::size_t j = 0; j < C; ++j) {
            std::vector<BigComplex> zp;
            for (unsigned k = 0; k < g; ++k) zp.push_back(zimg[j].pow(k));
            std::vector<BigComplex> W(n, BigComplex(prec));
            for (unsigned i = 0; i < n; ++i)
                for (auto h : H) {
                    W[i] += (*Vinv)[i][F.unit_index((reps[j] * h) % M)] * zp[cc.at(h)];
                }
            unsigned alim = j == 0 ? q / g : q;
            P[j].resize(alim);
            for (unsigned av = 0; av < alim; ++av) {
                BigComplex s = root[j] * eps[av];
                P[j][av].reserve(n);
                for (unsigned i = 0; i < n; ++i) P[j][av].push_back(W[i] * s);
            }
        }
        std::vector<unsigned> aa(C, 0);
        for (;;) {
            bool ok = true;
            std::vector<Int> coeffs(n);
            for (unsigned i = 0; i < n && ok; ++i) {
                BigComplex s = P[0][aa[0]][i];
                for (std::size_t j = 1; j < C; ++j) s += P[j][aa[j]][i];
                if (!(abs(s.im) < quarter) || !near_integer(s.re, coeffs[i])) ok = false;
            }
            if (ok) {
                CycElt beta(F, coeffs, 1);
                if (beta.pow(q) == a) return beta.scaled(Rat(1, c));
            }
            std::size_t k = 0;
            while (k < C) {
                unsigned lim = static_cast<unsigned>(P[k].size());
                if (++aa[k] < lim) break;
                aa[k++] = 0;
            }
            if (k == C) break;
        }
    }
    return std::nullopt;
}

} // namespace

std::optional<CycElt> is_dth_power_cyclotomic(const CycElt& alpha, unsigned d, const PowerOptions& opt) {
    if (alpha.is_zero()) throw Error(ErrorKind::InvalidArgument, "zero has no class modulo d-th powers");
    if (d == 0) throw Error(ErrorKind::InvalidArgument, "d must be positive");
    const CycField& F = alpha.field();
    if (d == 1) return alpha;
    if (F.is_rational()) {
        auto r = is_dth_power_rational(*alpha.rational_value(), d);
        if (!r) return std::nullopt;
        return CycElt(F, *r);
    }
    if (!rational_power(alpha.norm(), d)) return std::nullopt;
    if (residue_prefilter_rejects(alpha, d, opt.prefilter_primes)) return std::nullopt;

    std::optional<CycElt> acc;
    unsigned acc_exp = 1;
    for (auto [p, e] : factor_small(d)) {
        unsigned q = 1;
        for (unsigned i = 0; i < e; ++i) q *= static_cast<unsigned>(p);
        auto r = root_prime_power(alpha, q, opt);
        if (!r) return std::nullopt;
        if (!acc) {
            acc = r;
            acc_exp = q;
            continue;
        }
        // x*acc_exp + y*q = 1  =>  acc^y * r^x is an (acc_exp*q)-th root
        mpz_class gg, x, y;
        mpz_gcdext(gg.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), mpz_class(acc_exp).get_mpz_t(), mpz_class(q).get_mpz_t());
        acc = acc->pow(y.get_si()) * r->pow(x.get_si());
        acc_exp *= q;
    }
    if (acc->pow(d) != alpha) throw Error(ErrorKind::InternalInconsistency, "root recombination failed");
    return acc;
}

} // namespace hasse
