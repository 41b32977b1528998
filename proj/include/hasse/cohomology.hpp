#pragma once

// H^1(k(mu_d)/k, mu_d) for cyclotomic k: triviality per prime power, the
// case split used for constructions, and Kummer representatives.

#include "hasse/cyclotomic.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hasse {

struct H1Factor {
    std::uint64_t p = 0;
    unsigned n = 0;
    bool special = false;
    bool trivial = true;
    std::string reason;
    std::uint64_t degree_total = 1;   // [k(mu_d) : k]
    std::uint64_t degree_ppart = 1;   // [k(mu_{p^n}) : k]
    // |Hom(Gal(k(mu_d)/k(mu_{p^n})), mu_{p^n}(k))|, outside the special case
    std::optional<std::uint64_t> hom_order;
    bool hom_source_cyclic = false;
};

struct H1Report {
    std::uint64_t field = 1; // conductor of k
    std::uint64_t d = 0;
    std::vector<H1Factor> factors; // ascending p
    bool overall_trivial = true;
};

enum class Prediction { AlwaysHolds, CounterexamplesExist };
const char* to_string(Prediction p);

struct PredictionReport {
    Prediction verdict = Prediction::AlwaysHolds;
    H1Report h1;
    std::optional<bool> minus_one_dth_power; // only for even d
    std::vector<std::string> reasons;
};

struct CaseDecomposition {
    enum class Kind { A, B };
    Kind kind = Kind::B;
    std::uint64_t p = 2;
    unsigned n = 0;
    std::uint64_t q = 0;  // case A only
    unsigned m = 0;       // case A: mu_{p^n}(k(mu_q)) = mu_{p^m}

    std::string label() const; // "A(p=3,n=1,q=7)" / "B(n=2)"
    friend bool operator==(const CaseDecomposition& a, const CaseDecomposition& b) {
        return a.kind == b.kind && a.p == b.p && a.n == b.n && a.q == b.q;
    }
};

// alpha in O_k with alpha not a (p^n)-th power in k but root^(p^n) = alpha in
// the extension E (k(mu_q) for case A, k(mu_{2^n}) for case B).
struct Representative {
    CycElt alpha;
    CaseDecomposition decomposition;
    std::uint64_t power = 1;      // p^n
    CycElt root;                  // in E
    std::uint64_t tau = 1;        // case A: generator of Gal(L/k) used for the resolvent
    unsigned attempts = 1;
    bool not_power_in_k = false;
    bool power_in_extension = false;
};

bool is_special_case(const CycField& k, std::uint64_t p, unsigned n);
H1Factor h1_prime_power(const CycField& k, std::uint64_t d, std::uint64_t p, unsigned n);
H1Report h1_total(const CycField& k, std::uint64_t d);
bool minus_one_is_dth_power(const CycField& k, std::uint64_t d);
PredictionReport hasse_principle_predicted(const CycField& k, std::uint64_t d);
CaseDecomposition decompose_nontrivial(const CycField& k, std::uint64_t d);
Representative find_representative(const CycField& k, const CaseDecomposition& dec, std::uint64_t d);

} // namespace hasse
