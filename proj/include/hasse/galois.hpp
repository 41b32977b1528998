#pragma once

// Galois group of the splitting field of the lines on a diagonal surface.
//
// K0 = k(mu_{2d}) = Q(mu_M0), K = K0(g1, g2, g3) with g_i the principal d-th root
// of b_i = a_i/a_0. An automorphism is a pair (t, c): zeta_M0 -> zeta_M0^t and
// g_i -> zeta_d^{c_i} g_i. Pairs compose as (t,c)(t',c') = (tt', c + t c').
// Multiplicative relations b^e = w_e^d (w_e in K0) cut Gamma out of the
// generic group: c.e = kappa(t, e) mod d.

#include "hasse/hilbert.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hasse {

struct GaloisElement {
    std::uint64_t t = 1;
    std::array<std::uint32_t, 3> c{0, 0, 0};
    friend bool operator==(const GaloisElement&, const GaloisElement&) = default;
    friend auto operator<=>(const GaloisElement&, const GaloisElement&) = default;
};

struct LatticeGenerator {
    std::array<long, 3> e{0, 0, 0}; // centered representative
    CycElt w;                        // in K0, w^d = b^e
    unsigned eta = 0;                // g^e = zeta_d^eta * w at the principal embedding
};

struct RelationLattice {
    unsigned d = 0;
    std::uint64_t M0 = 1;            // conductor of K0
    std::vector<LatticeGenerator> generators;
    std::vector<std::array<std::uint32_t, 3>> members; // Lambda / d Z^3
    unsigned primes_used = 0;
    bool exhaustive_fallback = false;

    bool contains(const std::array<std::uint32_t, 3>& e) const;
};

struct GaloisOptions {
    unsigned max_degree = 32;
    std::uint64_t max_class_group = 200'000; // classes are materialized up to this order
    PowerOptions power;
};

RelationLattice relation_lattice(const DiagonalSurface& S, const GaloisOptions& opt = {});

class SplittingGroup {
public:
    SplittingGroup(const DiagonalSurface& S, RelationLattice lattice);

    unsigned d() const { return d_; }
    std::uint64_t M0() const { return M0_; }
    std::uint64_t order() const { return T_.size() * perp_.size(); }
    std::uint64_t base_degree() const { return T_.size(); } // [K0 : k]
    const RelationLattice& lattice() const { return lattice_; }
    const std::vector<std::uint64_t>& base_group() const { return T_; }

    // t acting on zeta_{2d} as an exponent mod 2d
    unsigned t2(std::uint64_t t) const;
    bool contains(const GaloisElement& g) const;
    GaloisElement multiply(const GaloisElement& a, const GaloisElement& b) const;
    GaloisElement inverse(const GaloisElement& a) const;
    GaloisElement identity() const { return {}; }
    std::vector<GaloisElement> elements() const;
    std::vector<GaloisElement> generators() const;

    template <class F> void for_each(F&& f) const {
        for (std::size_t k = 0; k < T_.size(); ++k)
            for (const auto& p : perp_) {
                GaloisElement g;
                g.t = T_[k];
                for (int i = 0; i < 3; ++i) g.c[i] = static_cast<std::uint32_t>((c0_[k][i] + p[i]) % d_);
                f(g);
            }
    }

    // lines are labelled 0 .. 3d^2-1 as (component-1)*d^2 + i*d + j
    std::size_t line_count() const { return 3 * d_ * d_; }
    std::size_t act(const GaloisElement& g, std::size_t line) const;
    std::optional<std::size_t> fixed_line(const GaloisElement& g) const;

private:
    unsigned d_;
    std::uint64_t M0_;
    RelationLattice lattice_;
    std::vector<std::uint64_t> T_;
    std::vector<std::array<std::uint32_t, 3>> c0_;
    std::vector<std::array<std::uint32_t, 3>> perp_;
};

SplittingGroup splitting_group(const DiagonalSurface& S, const GaloisOptions& opt = {});

std::vector<std::size_t> action_on_lines(const SplittingGroup& G, const GaloisElement& g);

struct ClassEntry {
    GaloisElement rep;
    std::uint64_t size = 1;
    std::optional<std::size_t> fixed_line;
};

struct ChebotarevReport {
    bool every_class_fixes = true;
    bool common_fixed_point = false;
    std::optional<std::size_t> common_line;
    std::optional<GaloisElement> fixed_point_free; // first element without a fixed line
    std::vector<ClassEntry> classes;                // empty when the group is too large
    bool classes_materialized = false;
};

ChebotarevReport chebotarev_analysis(const SplittingGroup& G, const GaloisOptions& opt = {});
std::vector<ClassEntry> conjugacy_classes(const SplittingGroup& G);

// Frobenius elements at the primes of K0 above ell = 1 mod M0 (one per root of Phi_M0).
std::vector<GaloisElement> split_frobenius(const DiagonalSurface& S, const SplittingGroup& G, std::uint64_t ell);

std::vector<Place> bad_places(const DiagonalSurface& S);
std::vector<std::uint64_t> bad_primes(const DiagonalSurface& S);

// Smallest prime ell <= bound, not in `skip`, where S has no local line.
struct ScanResult {
    std::optional<std::uint64_t> ell;
    std::optional<std::string> error; // budget failure at the smallest failing prime
};
ScanResult scan_unramified(const DiagonalSurface& S, std::uint64_t bound, const std::vector<std::uint64_t>& skip,
                           const LocalOptions& opt = {});
ScanResult scan_unramified_serial(const DiagonalSurface& S, std::uint64_t bound, const std::vector<std::uint64_t>& skip,
                                  const LocalOptions& opt = {});

enum class VerdictKind { GlobalLine, LocalObstruction, HasseFailure, Unsupported };
const char* to_string(VerdictKind k);

struct NonPowerWitness {
    int component = 1;
    bool u_is_power = false;
    bool v_is_power = false;
};

struct HasseCertificate {
    std::uint64_t group_order = 0;
    std::uint64_t base_degree = 0;
    std::uint64_t lattice_index = 0; // |Lambda / d Z^3|
    std::vector<ClassEntry> classes;
    bool classes_materialized = false;
    std::vector<LocalLineResult> bad_place_checks;
    std::vector<NonPowerWitness> non_powers;
};

struct Verdict {
    VerdictKind kind = VerdictKind::Unsupported;
    std::optional<LineWitness> line;
    std::string place;        // LocalObstruction
    std::string detail;
    HasseCertificate certificate;
};

struct VerdictOptions {
    std::uint64_t scan_bound = 5000;
    bool parallel_scan = true;
    GaloisOptions galois;
    LocalOptions local;
};

Verdict hasse_verdict(const DiagonalSurface& S, const VerdictOptions& opt = {});

} // namespace hasse
