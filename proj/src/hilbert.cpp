#include "hasse/hilbert.hpp"

#include "hasse/errors.hpp"

#include <sstream>

namespace hasse {

DiagonalSurface::DiagonalSurface(unsigned d_, const CycField& k, std::array<CycElt, 4> coeffs)
    : d(d_), field(k), a(std::move(coeffs)) {
    if (d < 3) throw Error(ErrorKind::InvalidArgument, "diagonal surfaces need d >= 3");
    for (auto& c : a) {
        if (c.field() != field) c = c.embed(field);
        if (c.is_zero()) throw Error(ErrorKind::InvalidArgument, "coefficients must be nonzero");
    }
}

DiagonalSurface DiagonalSurface::rational(unsigned d, const std::array<Rat, 4>& c) {
    CycField Q(1);
    return DiagonalSurface(d, Q, {CycElt(Q, c[0]), CycElt(Q, c[1]), CycElt(Q, c[2]), CycElt(Q, c[3])});
}

DiagonalSurface DiagonalSurface::parse(unsigned d, const CycField& k, const std::string& s) {
    std::vector<CycElt> parts;
    std::string cur;
    for (char ch : s + ",") {
        if (ch == ',') {
            parts.push_back(CycElt::parse(k, cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (parts.size() != 4) throw Error(ErrorKind::Parse, "expected four coefficients, got " + std::to_string(parts.size()));
    return DiagonalSurface(d, k, {parts[0], parts[1], parts[2], parts[3]});
}

std::string DiagonalSurface::to_string() const {
    std::ostringstream os;
    for (int i = 0; i < 4; ++i) {
        if (i) os << " + ";
        os << "(" << a[i].to_string() << ")*x" << i << "^" << d;
    }
    os << " = 0 over " << field.name();
    return os.str();
}

ComponentShape component_shape(int t) {
    switch (t) {
    case 1: return {{0, 1, 2, 3}, true};
    case 2: return {{0, 2, 1, 3}, false};
    case 3: return {{0, 3, 1, 2}, true};
    }
    throw Error(ErrorKind::InvalidArgument, "component index must be 1, 2 or 3");
}

std::array<LineComponent, 3> hilbert_scheme(const DiagonalSurface& S) {
    const auto& a = S.a;
    return {LineComponent{1, -(a[1] / a[0]), -(a[2] / a[3])},
            LineComponent{2, -(a[2] / a[0]), -(a[3] / a[1])},
            LineComponent{3, -(a[3] / a[0]), -(a[1] / a[2])}};
}

bool LineWitness::lies_on(const DiagonalSurface& S) const {
    const CycField& E = c1.field();
    auto sh = component_shape(component);
    auto coef = [&](int i) { return S.a[i].embed(E); };
    auto dth = [&](const CycElt& c) { return c.pow(static_cast<long>(S.d)); };
    const auto& v = sh.vars;
    return (coef(v[0]) * dth(c1) + coef(v[1])).is_zero() && (coef(v[2]) * dth(c2.embed(E)) + coef(v[3])).is_zero();
}

std::string LineWitness::to_string() const {
    auto v = component_shape(component).vars;
    std::ostringstream os;
    os << "x" << v[0] << " = (" << c1.to_string() << ")*x" << v[1] << ", x" << v[2] << " = (" << c2.to_string() << ")*x" << v[3];
    return os.str();
}

std::optional<LineWitness> has_line_over(const DiagonalSurface& S, const CycField& target, const PowerOptions& opt) {
    if (!target.contains(S.field)) throw Error(ErrorKind::InvalidArgument, target.name() + " does not contain " + S.field.name());
    for (const auto& C : hilbert_scheme(S)) {
        auto r = is_dth_power_cyclotomic(C.u.embed(target), S.d, opt);
        if (!r) continue;
        auto s = is_dth_power_cyclotomic(C.v.embed(target), S.d, opt);
        if (!s) continue;
        LineWitness w;
        w.component = C.index;
        w.c1 = *r;
        w.c2 = component_shape(C.index).invert_second ? s->inverse() : *s;
        if (!w.lies_on(S)) throw Error(ErrorKind::InternalInconsistency, "line witness failed substitution");
        return w;
    }
    return std::nullopt;
}

namespace {

bool component_local(const LineComponent& C, unsigned d, const std::optional<CycPrime>& P, const Place& place,
                     const LocalOptions& opt) {
    if (P) return is_dth_power_at_completion(C.u, *P, d, opt) && is_dth_power_at_completion(C.v, *P, d, opt);
    return is_dth_power_at_place(C.u, place, d, opt) && is_dth_power_at_place(C.v, place, d, opt);
}

LocalLineResult check_one(const std::array<LineComponent, 3>& comps, unsigned d, const std::optional<CycPrime>& P,
                          const Place& place, const LocalOptions& opt) {
    LocalLineResult r;
    r.place = P ? P->label() : place.label();
    for (const auto& C : comps)
        if (component_local(C, d, P, place, opt)) {
            r.has_line = true;
            r.component = C.index;
            break;
        }
    return r;
}

} // namespace

std::vector<LocalLineResult> local_line_report(const DiagonalSurface& S, const Place& place, const LocalOptions& opt) {
    auto comps = hilbert_scheme(S);
    std::vector<LocalLineResult> out;
    switch (place.kind) {
    case Place::Kind::Real:
    case Place::Kind::CyclotomicPrime:
        out.push_back(check_one(comps, S.d, place.prime, place, opt));
        break;
    case Place::Kind::RationalPrime:
        if (S.field.is_rational()) {
            out.push_back(check_one(comps, S.d, std::nullopt, place, opt));
        } else {
            for (const auto& P : factor_prime(place.ell, S.field)) out.push_back(check_one(comps, S.d, P, place, opt));
        }
        break;
    }
    return out;
}

bool has_line_locally(const DiagonalSurface& S, const Place& place, const LocalOptions& opt) {
    for (const auto& r : local_line_report(S, place, opt))
        if (!r.has_line) return false;
    return true;
}

// ---------------------------------------------------------------------------

CycElt SymbolicLine::dth_power(const DiagonalSurface& S, const Monomial& m) {
    CycElt r(S.field, Rat(m.zeta_exp % 2 ? -1 : 1));
    for (int k = 0; k < 3; ++k)
        if (m.g[k]) r *= (S.a[k + 1] / S.a[0]).pow(m.g[k]);
    return r;
}

bool SymbolicLine::verify(const DiagonalSurface& S) const {
    const auto& v = component_shape(component).vars;
    return (S.a[v[0]] * dth_power(S, c1) + S.a[v[1]]).is_zero() && (S.a[v[2]] * dth_power(S, c2) + S.a[v[3]]).is_zero();
}

namespace {

// zeta stands for zeta_{2d}
std::string monomial_string(const Monomial& m) {
    std::ostringstream os;
    os << "zeta^" << m.zeta_exp;
    for (int k = 0; k < 3; ++k) {
        if (!m.g[k]) continue;
        os << "*g" << k + 1;
        if (m.g[k] != 1) os << "^" << m.g[k];
    }
    return os.str();
}

} // namespace

std::string SymbolicLine::to_string() const {
    auto v = component_shape(component).vars;
    std::ostringstream os;
    os << "L" << component << "^{" << i << "," << j << "}: x" << v[0] << " = " << monomial_string(c1) << "*x" << v[1]
       << ", x" << v[2] << " = " << monomial_string(c2) << "*x" << v[3];
    return os.str();
}

std::vector<SymbolicLine> lines_explicit(const DiagonalSurface& S) {
    std::vector<SymbolicLine> out;
    out.reserve(3 * S.d * S.d);
    for (int t = 1; t <= 3; ++t) {
        const auto& v = component_shape(t).vars;
        for (unsigned i = 0; i < S.d; ++i)
            for (unsigned j = 0; j < S.d; ++j) {
                SymbolicLine L;
                L.component = t;
                L.i = i;
                L.j = j;
                L.c1.zeta_exp = 2 * i + 1;
                L.c1.g[v[1] - 1] = 1; // (a_Q/a_0)^(1/d)
                L.c2.zeta_exp = 2 * j + 1;
                L.c2.g[v[3] - 1] += 1; // (a_S/a_R)^(1/d)
                L.c2.g[v[2] - 1] -= 1;
                if (!L.verify(S)) throw Error(ErrorKind::InternalInconsistency, "symbolic line fails substitution");
                out.push_back(L);
            }
    }
    return out;
}

} // namespace hasse
