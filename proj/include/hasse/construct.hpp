#pragma once

// Certified counterexamples to the Hasse principle for lines.
//
//   special even ((-1) a d-th power):  x0^d + a^{d/2} x1^d + b^{d/2} x2^d + (ab)^{d/2} x3^d
//   case A (d = e q p^n):               x0^d - a^{eq} x1^d - b^{e p^n} x2^d + a^{eq} b^{e p^n} x3^d
//   case B (d = 2^n e):                 x0^d - a^e x1^d - b^{d/2} x2^d + a^e b^{d/2} x3^d
//
// Every emitted surface is run through hasse_verdict before it is returned.

#include "hasse/cohomology.hpp"
#include "hasse/galois.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hasse {

struct LocalCheck {
    std::string place;
    bool holds = false;
};

struct BetaCertificate {
    std::uint64_t beta = 0;
    CycElt alpha;
    std::uint64_t p = 1, q = 1;
    std::uint64_t modulus = 1;            // beta = 1 mod modulus
    bool coprime = false;                 // (1)
    std::string split_prime;              // (2): a prime b of k with v_b(beta) = 1
    std::vector<LocalCheck> q_power_checks; // (3): beta a q-th power at every P | alpha q
    std::vector<LocalCheck> p_power_checks; // (4): alpha a p-th power at every P | beta
    unsigned candidates_tried = 0;

    bool verified() const;
};

struct BetaSearchOptions {
    std::uint64_t bound = 10'000'000'000;
    std::uint64_t start = 0; // only primes > start
    LocalOptions local;
};

// alpha must be integral and nonzero.
BetaCertificate find_beta(const CycElt& alpha, std::uint64_t p, std::uint64_t q, const CycField& k,
                          const BetaSearchOptions& opt = {});

// Re-run the four local conditions for a given beta.
BetaCertificate verify_beta(const CycElt& alpha, std::uint64_t p, std::uint64_t q, const CycField& k, std::uint64_t beta,
                            const LocalOptions& opt = {});

enum class ConstructionPath { SpecialEven, CaseA, CaseB };
const char* to_string(ConstructionPath p);

struct Construction {
    DiagonalSurface surface;
    ConstructionPath path = ConstructionPath::CaseB;
    std::optional<CaseDecomposition> decomposition;
    CycElt alpha;
    BetaCertificate beta;
    Verdict verdict;
    unsigned beta_attempts = 1;
};

struct ConstructOptions {
    unsigned max_beta_attempts = 5;
    BetaSearchOptions search;
    VerdictOptions verdict;
};

Construction construct_special_even(const CycField& k, std::uint64_t d, const ConstructOptions& opt = {});
Construction construct_case_a(const CycField& k, std::uint64_t d, std::uint64_t p, unsigned n, std::uint64_t q,
                              const ConstructOptions& opt = {});
Construction construct_case_b(const CycField& k, std::uint64_t d, const ConstructOptions& opt = {});
Construction construct_for(const CycField& k, std::uint64_t d, const ConstructOptions& opt = {});

} // namespace hasse
