#pragma once

// D(x)    = #{d <= x : q != 1 mod p for all primes p, q | d}
// D_sf(x) = the same count restricted to squarefree d
// d = 1 satisfies the condition vacuously and is counted.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hasse {

bool erdos_condition(std::uint64_t d);
// smallest (p, q) by p then q with p, q | d and q = 1 mod p; d odd, d >= 3
std::optional<std::pair<std::uint64_t, std::uint64_t>> thm13_applicable(std::uint64_t d);

struct CountReport {
    std::uint64_t x = 0;
    std::uint64_t D = 0;
    std::uint64_t D_sf = 0;
    std::optional<double> prediction; // e^{-gamma} x / log log log x, only for x > e^e
    std::optional<double> ratio_sf;   // D_sf / prediction
    std::optional<double> ratio;      // D / prediction
};

struct CountOptions {
    std::uint64_t max_x = 100'000'000;
    std::uint64_t window = 1 << 16;
    bool parallel = true;
};

CountReport count(std::uint64_t x, const CountOptions& opt = {});
CountReport count_serial(std::uint64_t x, const CountOptions& opt = {});
double erdos_prediction(std::uint64_t x);

std::vector<CountReport> erdos_table(const std::vector<std::uint64_t>& grid, const CountOptions& opt = {});
// columns: x,D,D_sf,prediction,D_sf/prediction
std::string to_csv(const std::vector<CountReport>& table);

} // namespace hasse
