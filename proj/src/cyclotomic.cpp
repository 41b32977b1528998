#include "hasse/cyclotomic.hpp"

#include "hasse/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace hasse {

struct CycFieldData {
    std::uint64_t m = 1;
    unsigned n = 1;
    std::vector<Int> phi;
    std::vector<std::uint64_t> units;
    std::vector<int> unit_pos;            // size m, -1 for non-units
    std::vector<std::vector<Int>> xpow;   // x^j mod Phi_m, j < m
};

std::uint64_t canonical_conductor(std::uint64_t m) {
    if (m == 0) throw Error(ErrorKind::InvalidArgument, "conductor must be positive");
    return m % 4 == 2 ? m / 2 : m;
}

namespace {

std::vector<Int> poly_div_exact(std::vector<Int> a, const std::vector<Int>& b) {
    // b monic
    std::size_t db = b.size() - 1;
    std::vector<Int> q(a.size() - db, 0);
    for (std::size_t i = a.size(); i-- > db;) {
        Int c = a[i];
        q[i - db] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    return q;
}

const std::vector<Int>& cyclotomic_poly(std::uint64_t n) {
    static std::map<std::uint64_t, std::vector<Int>> cache;
    static std::recursive_mutex mu;
    std::lock_guard<std::recursive_mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<Int> p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (std::uint64_t d : divisors(n))
        if (d < n) p = poly_div_exact(p, cyclotomic_poly(d));
    return cache.emplace(n, std::move(p)).first->second;
}

std::shared_ptr<const CycFieldData> build_field(std::uint64_t m) {
    auto F = std::make_shared<CycFieldData>();
    F->m = m;
    F->phi = cyclotomic_poly(m);
    F->n = static_cast<unsigned>(F->phi.size() - 1);
    F->unit_pos.assign(m, -1);
    for (std::uint64_t t = 0; t < m; ++t)
        if (std::gcd(t, m) == 1) {
            F->unit_pos[t] = static_cast<int>(F->units.size());
            F->units.push_back(t);
        }
    if (m == 1) {
        F->units = {1};
        F->unit_pos = {0};
    }
    std::vector<Int> cur(F->n, 0);
    cur[0] = 1;
    F->xpow.reserve(m);
    for (std::uint64_t j = 0; j < m; ++j) {
        F->xpow.push_back(cur);
        // cur *= x mod Phi
        Int top = cur[F->n - 1];
        for (unsigned i = F->n - 1; i > 0; --i) cur[i] = cur[i - 1];
        cur[0] = 0;
        if (top != 0)
            for (unsigned i = 0; i < F->n; ++i) cur[i] -= top * F->phi[i];
    }
    return F;
}

} // namespace

CycField::CycField(std::uint64_t m) {
    m = canonical_conductor(m);
    static std::map<std::uint64_t, std::shared_ptr<const CycFieldData>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it == cache.end()) it = cache.emplace(m, build_field(m)).first;
    d_ = it->second;
}

std::uint64_t CycField::conductor() const { return d_->m; }
unsigned CycField::degree() const { return d_->n; }
const std::vector<Int>& CycField::min_poly() const { return d_->phi; }
const std::vector<std::uint64_t>& CycField::units() const { return d_->units; }

std::size_t CycField::unit_index(std::uint64_t t) const {
    int p = d_->unit_pos[t % d_->m];
    if (p < 0) throw Error(ErrorKind::NotAUnit, "not a unit modulo the conductor");
    return static_cast<std::size_t>(p);
}

std::string CycField::name() const {
    if (d_->m == 1) return "Q";
    return "Q(mu" + std::to_string(d_->m) + ")";
}

CycField CycField::parse(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s == "Q" || s == "QQ") return CycField(1);
    for (const char* prefix : {"Q(mu", "Q(zeta", "Q(zeta_", "Q(mu_"}) {
        std::string p(prefix);
        if (s.size() > p.size() + 1 && s.compare(0, p.size(), p) == 0 && s.back() == ')') {
            std::string mid = s.substr(p.size(), s.size() - p.size() - 1);
            if (!mid.empty() && std::all_of(mid.begin(), mid.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
                return CycField(std::stoull(mid));
        }
    }
    throw Error(ErrorKind::Parse, "unrecognised field '" + raw + "' (expected Q or Q(muN))");
}

// ---------------------------------------------------------------------------

CycElt::CycElt(const CycField& F) : F_(F), num_(F.degree(), 0), den_(1) {}

CycElt::CycElt(const CycField& F, const Rat& r) : F_(F), num_(F.degree(), 0), den_(r.get_den()) {
    if (den_ == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator");
    num_[0] = r.get_num();
    normalize(); // r may come from a non-canonical mpq_class(num, den)
}

CycElt::CycElt(const CycField& F, std::vector<Int> num, Int den) : F_(F), num_(std::move(num)), den_(std::move(den)) {
    if (num_.size() != F_.degree()) throw Error(ErrorKind::InvalidArgument, "coefficient vector has wrong length");
    if (den_ == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator");
    normalize();
}

void CycElt::normalize() {
    if (den_ < 0) {
        den_ = -den_;
        for (auto& c : num_) c = -c;
    }
    Int g = den_;
    for (const auto& c : num_) {
        if (g == 1) break;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    }
    if (g != 1) {
        for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
    }
    if (is_zero()) den_ = 1;
}

CycElt CycElt::from_rationals(const CycField& F, const std::vector<Rat>& coeffs) {
    const auto& D = F.data();
    Int den = 1;
    for (const auto& c : coeffs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Int> acc(D.n, 0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0) continue;
        Int c = coeffs[i].get_num() * (den / coeffs[i].get_den());
        const auto& xp = D.xpow[i % D.m];
        for (unsigned j = 0; j < D.n; ++j)
            if (xp[j] != 0) acc[j] += c * xp[j];
    }
    return CycElt(F, std::move(acc), den);
}

CycElt CycElt::zeta_power(const CycField& F, long k) {
    const auto& D = F.data();
    long m = static_cast<long>(D.m);
    long r = ((k % m) + m) % m;
    return CycElt(F, D.xpow[r], 1);
}

Rat CycElt::coeff(std::size_t i) const {
    Rat r(num_[i], den_);
    r.canonicalize();
    return r;
}

std::vector<Rat> CycElt::coeffs() const {
    std::vector<Rat> out;
    for (std::size_t i = 0; i < num_.size(); ++i) out.push_back(coeff(i));
    return out;
}

bool CycElt::is_zero() const {
    return std::all_of(num_.begin(), num_.end(), [](const Int& c) { return c == 0; });
}

bool CycElt::is_one() const {
    if (den_ != 1 || num_[0] != 1) return false;
    return std::all_of(num_.begin() + 1, num_.end(), [](const Int& c) { return c == 0; });
}

std::optional<Rat> CycElt::rational_value() const {
    for (std::size_t i = 1; i < num_.size(); ++i)
        if (num_[i] != 0) return std::nullopt;
    return coeff(0);
}

namespace {

void require_same(const CycElt& a, const CycElt& b) {
    if (a.field() != b.field())
        throw Error(ErrorKind::InvalidArgument, "mixed fields " + a.field().name() + " and " + b.field().name());
}

} // namespace

CycElt CycElt::operator-() const {
    CycElt r = *this;
    for (auto& c : r.num_) c = -c;
    return r;
}

CycElt operator+(const CycElt& a, const CycElt& b) {
    require_same(a, b);
    std::vector<Int> num(a.num_.size());
    if (a.den_ == b.den_) {
        for (std::size_t i = 0; i < num.size(); ++i) num[i] = a.num_[i] + b.num_[i];
        return CycElt(a.F_, std::move(num), a.den_);
    }
    for (std::size_t i = 0; i < num.size(); ++i) num[i] = a.num_[i] * b.den_ + b.num_[i] * a.den_;
    return CycElt(a.F_, std::move(num), a.den_ * b.den_);
}

CycElt operator-(const CycElt& a, const CycElt& b) { return a + (-b); }

CycElt operator*(const CycElt& a, const CycElt& b) {
    require_same(a, b);
    const auto& D = a.F_.data();
    unsigned n = D.n;
    if (n == 1) return CycElt(a.F_, {a.num_[0] * b.num_[0]}, a.den_ * b.den_);
    std::vector<Int> r(2 * n - 1, 0);
    for (unsigned i = 0; i < n; ++i) {
        if (a.num_[i] == 0) continue;
        for (unsigned j = 0; j < n; ++j)
            if (b.num_[j] != 0) mpz_addmul(r[i + j].get_mpz_t(), a.num_[i].get_mpz_t(), b.num_[j].get_mpz_t());
    }
    for (unsigned i = 2 * n - 2; i >= n; --i) {
        if (r[i] == 0) continue;
        for (unsigned j = 0; j < n; ++j)
            if (D.phi[j] != 0) mpz_submul(r[i - n + j].get_mpz_t(), r[i].get_mpz_t(), D.phi[j].get_mpz_t());
        r[i] = 0;
    }
    r.resize(n);
    return CycElt(a.F_, std::move(r), a.den_ * b.den_);
}

CycElt operator/(const CycElt& a, const CycElt& b) { return a * b.inverse(); }

bool operator==(const CycElt& a, const CycElt& b) {
    require_same(a, b);
    return a.den_ == b.den_ && a.num_ == b.num_;
}

CycElt CycElt::scaled(const Rat& r) const {
    std::vector<Int> num = num_;
    for (auto& c : num) c *= r.get_num();
    return CycElt(F_, std::move(num), den_ * r.get_den());
}

CycElt CycElt::automorphism(std::uint64_t t) const {
    const auto& D = F_.data();
    t %= D.m;
    if (D.m > 1 && std::gcd(t, D.m) != 1) throw Error(ErrorKind::NotAUnit, "automorphism index not a unit");
    std::vector<Int> acc(D.n, 0);
    for (unsigned i = 0; i < D.n; ++i) {
        if (num_[i] == 0) continue;
        const auto& xp = D.xpow[(i * t) % D.m];
        for (unsigned j = 0; j < D.n; ++j)
            if (xp[j] != 0) mpz_addmul(acc[j].get_mpz_t(), num_[i].get_mpz_t(), xp[j].get_mpz_t());
    }
    return CycElt(F_, std::move(acc), den_);
}

std::vector<CycElt> CycElt::conjugates() const {
    std::vector<CycElt> out;
    for (auto t : F_.units()) out.push_back(automorphism(t));
    return out;
}

Rat CycElt::norm() const {
    CycElt p(F_, Rat(1));
    for (auto t : F_.units()) p *= automorphism(t);
    auto r = p.rational_value();
    if (!r) throw Error(ErrorKind::InternalInconsistency, "norm is not rational");
    return *r;
}

Rat CycElt::trace() const {
    CycElt s(F_);
    for (auto t : F_.units()) s += automorphism(t);
    auto r = s.rational_value();
    if (!r) throw Error(ErrorKind::InternalInconsistency, "trace is not rational");
    return *r;
}

CycElt CycElt::inverse() const {
    if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
    CycElt p(F_, Rat(1));
    for (auto t : F_.units())
        if (t != 1) p *= automorphism(t);
    CycElt full = p * *this;
    auto n = full.rational_value();
    if (!n || *n == 0) throw Error(ErrorKind::InternalInconsistency, "norm computation failed");
    return p.scaled(1 / *n);
}

CycElt CycElt::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    CycElt r(F_, Rat(1)), b = *this;
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

CycElt CycElt::embed(const CycField& big) const {
    if (big == F_) return *this;
    if (!big.contains(F_)) throw Error(ErrorKind::InvalidArgument, big.name() + " does not contain " + F_.name());
    const auto& B = big.data();
    std::uint64_t step = B.m / F_.conductor();
    std::vector<Int> acc(B.n, 0);
    for (unsigned i = 0; i < num_.size(); ++i) {
        if (num_[i] == 0) continue;
        const auto& xp = B.xpow[(i * step) % B.m];
        for (unsigned j = 0; j < B.n; ++j)
            if (xp[j] != 0) mpz_addmul(acc[j].get_mpz_t(), num_[i].get_mpz_t(), xp[j].get_mpz_t());
    }
    return CycElt(big, std::move(acc), den_);
}

CycElt CycElt::restrict_to(const CycField& sub) const {
    if (sub == F_) return *this;
    if (!F_.contains(sub)) throw Error(ErrorKind::InvalidArgument, F_.name() + " does not contain " + sub.name());
    // Solve sum_j c_j zeta_m^j = x in the big power basis (columns = embedded basis of sub).
    const auto& B = F_.data();
    unsigned n = B.n, k = sub.degree();
    std::uint64_t step = B.m / sub.conductor();
    std::vector<std::vector<Rat>> A(n, std::vector<Rat>(k + 1));
    for (unsigned j = 0; j < k; ++j) {
        const auto& xp = B.xpow[(j * step) % B.m];
        for (unsigned i = 0; i < n; ++i) A[i][j] = Rat(xp[i]);
    }
    for (unsigned i = 0; i < n; ++i) {
        A[i][k] = Rat(num_[i], den_);
        A[i][k].canonicalize();
    }
    unsigned row = 0;
    std::vector<unsigned> pivcol;
    for (unsigned c = 0; c < k && row < n; ++c) {
        unsigned r = row;
        while (r < n && A[r][c] == 0) ++r;
        if (r == n) continue;
        std::swap(A[r], A[row]);
        Rat inv = 1 / A[row][c];
        for (auto& x : A[row]) x *= inv;
        for (unsigned i = 0; i < n; ++i)
            if (i != row && A[i][c] != 0) {
                Rat f = A[i][c];
                for (unsigned j = c; j <= k; ++j) A[i][j] -= f * A[row][j];
            }
        pivcol.push_back(c);
        ++row;
    }
    for (unsigned i = row; i < n; ++i)
        if (A[i][k] != 0) throw Error(ErrorKind::InvalidArgument, "element does not lie in " + sub.name());
    std::vector<Rat> c(k, Rat(0));
    for (unsigned i = 0; i < row; ++i) c[pivcol[i]] = A[i][k];
    return from_rationals(sub, c);
}

std::uint64_t CycElt::minimal_conductor() const {
    std::uint64_t m = F_.conductor();
    for (std::uint64_t mp : divisors(m)) {
        if (canonical_conductor(mp) != mp) continue;
        bool fixed = true;
        for (auto t : F_.units())
            if (t % mp == 1 % mp && t != 1 && automorphism(t) != *this) {
                fixed = false;
                break;
            }
        if (fixed) return mp;
    }
    return m;
}

BigComplex CycElt::numeric(std::uint64_t t, mpfr_prec_t prec) const {
    std::uint64_t m = F_.conductor();
    BigComplex w = BigComplex::root_of_unity(static_cast<long>(t % m), static_cast<long>(m), prec);
    BigComplex acc(prec);
    for (std::size_t i = num_.size(); i-- > 0;) {
        acc = acc * w;
        acc.re += BigFloat(num_[i], prec);
    }
    BigFloat den(den_, prec);
    return {acc.re / den, acc.im / den};
}

std::vector<BigComplex> CycElt::numeric_embeddings(mpfr_prec_t prec) const {
    std::vector<BigComplex> out;
    for (auto t : F_.units()) out.push_back(numeric(t, prec));
    return out;
}

double CycElt::log2_house() const {
    Int s = 0;
    for (const auto& c : num_) s += abs(c);
    if (s == 0) return -1e9;
    long e1, e2;
    double m1 = mpz_get_d_2exp(&e1, s.get_mpz_t());
    double m2 = mpz_get_d_2exp(&e2, den_.get_mpz_t());
    return std::log2(m1) + static_cast<double>(e1) - std::log2(m2) - static_cast<double>(e2);
}

std::string CycElt::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < num_.size(); ++i) {
        Rat c = coeff(i);
        if (c == 0) continue;
        bool neg = c < 0;
        Rat a = neg ? Rat(-c) : c;
        if (neg)
            os << "-";
        else if (!first)
            os << "+";
        if (i == 0) {
            os << a.get_str();
        } else {
            if (a != 1) os << a.get_str() << "*";
            os << "z";
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

CycElt CycElt::parse(const CycField& F, const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw Error(ErrorKind::Parse, "empty element");
    std::map<std::size_t, Rat> terms;
    std::size_t pos = 0;
    auto fail = [&](const std::string& why) { throw Error(ErrorKind::Parse, why + " in '" + raw + "'"); };
    auto read_int = [&](Int& out) {
        std::size_t st = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (st == pos) return false;
        out = Int(s.substr(st, pos - st));
        return true;
    };
    while (pos < s.size()) {
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (pos != 0) {
            fail("expected + or -");
        }
        Rat coef(1);
        bool have_coef = false;
        Int num;
        if (read_int(num)) {
            have_coef = true;
            Int den = 1;
            if (pos < s.size() && s[pos] == '/') {
                ++pos;
                if (!read_int(den) || den == 0) fail("bad denominator");
            }
            coef = Rat(num, den);
            coef.canonicalize();
            if (pos < s.size() && s[pos] == '*') ++pos;
        }
        std::size_t power = 0;
        if (pos < s.size() && (s[pos] == 'z' || s[pos] == 'Z')) {
            ++pos;
            power = 1;
            if (pos < s.size() && s[pos] == '^') {
                ++pos;
                Int p;
                if (!read_int(p)) fail("bad exponent");
                power = p.get_ui();
            }
        } else if (!have_coef) {
            fail("expected a number or z");
        }
        terms[power] += sign * coef;
    }
    std::size_t maxp = terms.rbegin()->first;
    std::vector<Rat> coeffs(maxp + 1, Rat(0));
    for (auto& [p, c] : terms) coeffs[p] = c;
    return from_rationals(F, coeffs);
}

// ---------------------------------------------------------------------------

bool mu_in_field(std::uint64_t m_prime, const CycField& F) {
    std::uint64_t m = F.conductor();
    std::uint64_t M = m % 2 == 0 ? m : 2 * m;
    return M % m_prime == 0;
}

std::uint64_t degree_ext(const CycField& F, std::uint64_t d) {
    std::uint64_t m = F.conductor();
    std::uint64_t L = canonical_conductor(lcm_u64(m, d));
    return euler_phi(L) / euler_phi(m);
}

CycElt root_of_unity(const CycField& F, std::uint64_t n) {
    if (!mu_in_field(n, F))
        throw Error(ErrorKind::InvalidArgument, "mu_" + std::to_string(n) + " not contained in " + F.name());
    std::uint64_t M = F.conductor();
    if (M % n == 0) return CycElt::zeta_power(F, static_cast<long>(M / n));
    std::uint64_t h = n / 2; // n = 2h, h | M, M odd
    return -CycElt::zeta_power(F, static_cast<long>((M / h) * ((h + 1) / 2)));
}

// ---------------------------------------------------------------------------

std::string CycPrime::label() const {
    std::ostringstream os;
    os << "P" << index << "|" << ell << " (e=" << e << ",f=" << f << ")";
    return os.str();
}

std::vector<CycPrime> factor_prime(std::uint64_t ell, const CycField& F) {
    if (!is_prime_u64(ell)) throw Error(ErrorKind::InvalidArgument, std::to_string(ell) + " is not prime");
    std::uint64_t M = F.conductor();
    std::uint64_t la = 1, Mp = M;
    while (Mp % ell == 0) {
        Mp /= ell;
        la *= ell;
    }
    const auto& phi_small = cyclotomic_poly(Mp);
    fpoly::Poly red(phi_small.size());
    for (std::size_t i = 0; i < phi_small.size(); ++i) {
        Int r = phi_small[i] % Int(static_cast<unsigned long>(ell));
        if (r < 0) r += static_cast<unsigned long>(ell);
        red[i] = r.get_ui();
    }
    auto hs = fpoly::factor_squarefree(red, ell);
    unsigned e = static_cast<unsigned>(euler_phi(la));

    // 1 - zeta_{la}^k for k != 1, product = ell / (1 - zeta_{la})
    CycElt rest(F, Rat(1));
    CycElt pi(F, Rat(static_cast<unsigned long>(ell)));
    if (la > 1) {
        for (std::uint64_t k = 2; k < la; ++k)
            if (k % ell != 0) rest *= CycElt(F, Rat(1)) - CycElt::zeta_power(F, static_cast<long>(k * Mp));
        pi = CycElt(F, Rat(1)) - CycElt::zeta_power(F, static_cast<long>(Mp));
    }
    auto pi_ptr = std::make_shared<const CycElt>(pi);

    std::vector<CycPrime> out;
    for (std::size_t idx = 0; idx < hs.size(); ++idx) {
        CycPrime P;
        P.field = F;
        P.ell = ell;
        P.e = e;
        P.f = static_cast<unsigned>(fpoly::degree(hs[idx]));
        P.h = hs[idx];
        P.ell_part = la;
        P.m_prime = Mp;
        P.index = static_cast<unsigned>(idx);
        CycElt gamma(F, Rat(1));
        if (hs.size() > 1) {
            fpoly::Poly q, r;
            fpoly::divmod(red, hs[idx], ell, q, r);
            CycElt g(F);
            for (std::size_t i = 0; i < q.size(); ++i)
                if (q[i]) g += CycElt::zeta_power(F, static_cast<long>(i * la)).scaled(Rat(static_cast<unsigned long>(q[i])));
            gamma = g;
        }
        P.tau = std::make_shared<const CycElt>(gamma * rest);
        P.pi = pi_ptr;
        out.push_back(std::move(P));
    }
    return out;
}

namespace {

bool divisible_by(const CycElt& z, const Int& ell) {
    for (const auto& c : z.numerators())
        if (!mpz_divisible_p(c.get_mpz_t(), ell.get_mpz_t())) return false;
    return true;
}

CycElt integral_part(const CycElt& a) { return CycElt(a.field(), a.numerators(), 1); }

} // namespace

UnitSplit unit_part(const CycElt& a, const CycPrime& P) {
    if (a.is_zero()) throw Error(ErrorKind::InvalidArgument, "valuation of zero");
    if (!a.is_integral()) throw Error(ErrorKind::InvalidArgument, "unit_part expects an integral element");
    Int ell(static_cast<unsigned long>(P.ell));
    CycElt z = a;
    long v = 0;
    for (;;) {
        CycElt t = z * *P.tau;
        if (!divisible_by(t, ell)) break;
        z = t.scaled(Rat(1, ell));
        ++v;
    }
    return {v, z};
}

long valuation_at(const CycElt& a, const CycPrime& P) {
    if (a.field() != P.field) throw Error(ErrorKind::InvalidArgument, "prime belongs to another field");
    long v = unit_part(integral_part(a), P).v;
    return v - static_cast<long>(P.e) * static_cast<long>(valuation(a.denominator(), Int(static_cast<unsigned long>(P.ell))));
}

fpoly::Poly reduce_mod_prime(const CycElt& a, const CycPrime& P) {
    if (!a.is_integral()) throw Error(ErrorKind::InvalidArgument, "reduction needs an integral element");
    std::uint64_t ell = P.ell, Mp = P.m_prime;
    std::uint64_t inv_la = Mp == 1 ? 0 : invmod(P.ell_part % Mp, Mp);
    fpoly::Poly acc;
    Int L(static_cast<unsigned long>(ell));
    const auto& num = a.numerators();
    for (std::size_t i = 0; i < num.size(); ++i) {
        if (num[i] == 0) continue;
        Int c = num[i] % L;
        if (c < 0) c += L;
        if (c == 0) continue;
        std::uint64_t s = Mp == 1 ? 0 : mulmod(i % Mp, inv_la, Mp);
        fpoly::Poly mono(s + 1, 0);
        mono[s] = c.get_ui();
        acc = fpoly::add(acc, mono, ell);
    }
    return fpoly::mod(acc, P.h, ell);
}

} // namespace hasse
