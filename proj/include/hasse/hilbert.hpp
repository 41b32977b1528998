#pragma once

// Lines on diagonal surfaces a0 x0^d + a1 x1^d + a2 x2^d + a3 x3^d = 0.
//
// The Fano scheme splits into three components, each {x^d = u} x {y^d = v}:
//   1: (-a1/a0, -a2/a3)   2: (-a2/a0, -a3/a1)   3: (-a3/a0, -a1/a2)
// A line on component t is written x_P = c1 x_Q, x_R = c2 x_S with c1^d = u and
// c2^d = v or 1/v (components 1 and 3 use y -> 1/y).

#include "hasse/cyclotomic.hpp"
#include "hasse/localpower.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hasse {

struct DiagonalSurface {
    unsigned d = 3;
    CycField field;
    std::array<CycElt, 4> a;

    DiagonalSurface(unsigned d, const CycField& k, std::array<CycElt, 4> coeffs);
    static DiagonalSurface rational(unsigned d, const std::array<Rat, 4>& coeffs);
    // comma separated coefficients in the CycElt::parse grammar
    static DiagonalSurface parse(unsigned d, const CycField& k, const std::string& coeffs);

    std::string to_string() const;
};

struct LineComponent {
    int index = 1;
    CycElt u, v;
};

// Variable layout x_P = c1 x_Q, x_R = c2 x_S of the lines on component t,
// and whether c2^d is v (false) or 1/v (true).
struct ComponentShape {
    std::array<int, 4> vars;
    bool invert_second;
};
ComponentShape component_shape(int t);

struct LineWitness {
    int component = 1;
    CycElt c1, c2; // in the witness field

    // Exact substitution into S (after embedding the coefficients).
    bool lies_on(const DiagonalSurface& S) const;
    std::string to_string() const;
};

// zeta_{2d}^e * g1^e1 g2^e2 g3^e3 with g_r = (a_r/a_0)^(1/d).
struct Monomial {
    unsigned zeta_exp = 0; // mod 2d
    std::array<int, 3> g{0, 0, 0};
    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

struct SymbolicLine {
    int component = 1;
    unsigned i = 0, j = 0;
    Monomial c1, c2;

    // c^d evaluated in the base field: (-1)^e prod (a_r/a_0)^{e_r}.
    static CycElt dth_power(const DiagonalSurface& S, const Monomial& m);
    bool verify(const DiagonalSurface& S) const;
    std::string to_string() const;
};

std::array<LineComponent, 3> hilbert_scheme(const DiagonalSurface& S);

std::optional<LineWitness> has_line_over(const DiagonalSurface& S, const CycField& target, const PowerOptions& opt = {});

struct LocalLineResult {
    std::string place;
    bool has_line = false;
    int component = 0; // first soluble component, 0 if none
};

bool has_line_locally(const DiagonalSurface& S, const Place& place, const LocalOptions& opt = {});
// Per-prime detail; at a rational prime over a cyclotomic base, one entry per P | ell.
std::vector<LocalLineResult> local_line_report(const DiagonalSurface& S, const Place& place, const LocalOptions& opt = {});

std::vector<SymbolicLine> lines_explicit(const DiagonalSurface& S);

} // namespace hasse
