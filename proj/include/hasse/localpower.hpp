#pragma once

// d-th power membership in completions: R, Q_l and (Q(mu_m))_P.

#include "hasse/cyclotomic.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace hasse {

struct Place {
    enum class Kind { Real, RationalPrime, CyclotomicPrime };
    Kind kind = Kind::Real;
    std::uint64_t ell = 0;
    std::optional<CycPrime> prime;

    static Place real() { return {}; }
    static Place rational(std::uint64_t l) { return {Kind::RationalPrime, l, std::nullopt}; }
    static Place cyclotomic(const CycPrime& P) { return {Kind::CyclotomicPrime, P.ell, P}; }

    std::string label() const;
};

struct LocalOptions {
    std::uint64_t search_budget = 4'000'000; // residue checks in the wild search
};

bool is_dth_power_padic(const Rat& a, std::uint64_t ell, unsigned d, const LocalOptions& opt = {});
bool is_dth_power_at_completion(const CycElt& a, const CycPrime& P, unsigned d, const LocalOptions& opt = {});

// RationalPrime over a cyclotomic field means: at every prime above ell.
bool is_dth_power_at_place(const CycElt& a, const Place& place, unsigned d, const LocalOptions& opt = {});

} // namespace hasse
