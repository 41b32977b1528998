#include "hasse/counting.hpp"

#include "hasse/errors.hpp"
#include "hasse/ntkernel.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace hasse {

namespace {

bool pairs_ok(const std::uint64_t* ps, unsigned n) {
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i + 1; j < n; ++j)
            if (ps[j] % ps[i] == 1) return false;
    return true;
}

constexpr unsigned kMaxPrimes = 16; // 2*3*5*...*53 > 2^64

struct WindowCount {
    std::uint64_t D = 0, D_sf = 0;
};

WindowCount sieve_window(std::uint64_t lo, std::uint64_t hi, const std::vector<std::uint64_t>& small) {
    const std::size_t len = hi - lo;
    std::vector<std::uint64_t> rem(len), ps(len * kMaxPrimes);
    std::vector<unsigned char> cnt(len, 0), sqfree(len, 1);
    for (std::size_t i = 0; i < len; ++i) rem[i] = lo + i;
    for (auto p : small) {
        if (p * p > hi - 1) break;
        std::uint64_t start = (lo + p - 1) / p * p;
        for (std::uint64_t n = start; n < hi; n += p) {
            std::size_t i = n - lo;
            ps[i * kMaxPrimes + cnt[i]++] = p;
            rem[i] /= p;
            if (rem[i] % p == 0) {
                sqfree[i] = 0;
                do rem[i] /= p;
                while (rem[i] % p == 0);
            }
        }
    }
    WindowCount wc;
    for (std::size_t i = 0; i < len; ++i) {
        if (rem[i] > 1) ps[i * kMaxPrimes + cnt[i]++] = rem[i];
        if (pairs_ok(&ps[i * kMaxPrimes], cnt[i])) {
            ++wc.D;
            wc.D_sf += sqfree[i];
        }
    }
    return wc;
}

CountReport count_impl(std::uint64_t x, const CountOptions& opt, bool parallel) {
    if (x > opt.max_x) throw Error(ErrorKind::BudgetExceeded, "x = " + std::to_string(x) + " exceeds the sieve budget");
    CountReport r;
    r.x = x;
    if (x == 0) return r;
    std::uint64_t s = 1;
    while ((s + 1) * (s + 1) <= x) ++s;
    const auto small = primes_up_to(s);
    const std::uint64_t W = std::max<std::uint64_t>(opt.window, 64);
    const std::int64_t nwin = static_cast<std::int64_t>((x + W - 1) / W);
    std::uint64_t D = 0, Dsf = 0;
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : D, Dsf) if (parallel)
    for (std::int64_t w = 0; w < nwin; ++w) {
        std::uint64_t lo = 1 + static_cast<std::uint64_t>(w) * W, hi = std::min(x + 1, lo + W);
        auto wc = sieve_window(lo, hi, small);
        D += wc.D;
        Dsf += wc.D_sf;
    }
    r.D = D;
    r.D_sf = Dsf;
    if (static_cast<double>(x) > std::exp(std::numbers::e)) {
        r.prediction = erdos_prediction(x);
        r.ratio_sf = static_cast<double>(Dsf) / *r.prediction;
        r.ratio = static_cast<double>(D) / *r.prediction;
    }
    return r;
}

} // namespace

bool erdos_condition(std::uint64_t d) {
    if (d == 0) throw Error(ErrorKind::InvalidArgument, "d must be positive");
    std::vector<std::uint64_t> ps;
    for (auto [p, e] : factor_small(d)) ps.push_back(p);
    return pairs_ok(ps.data(), static_cast<unsigned>(ps.size()));
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> thm13_applicable(std::uint64_t d) {
    if (d < 3 || d % 2 == 0) throw Error(ErrorKind::InvalidArgument, "d must be odd and at least 3");
    auto fac = factor_small(d);
    for (auto [p, e] : fac)
        for (auto [q, f] : fac)
            if (q % p == 1) return std::make_pair(p, q);
    return std::nullopt;
}

double erdos_prediction(std::uint64_t x) {
    const double xd = static_cast<double>(x);
    if (!(xd > std::exp(std::numbers::e))) throw Error(ErrorKind::InvalidArgument, "log log log x needs x > e^e");
    return std::exp(-std::numbers::egamma) * xd / std::log(std::log(std::log(xd)));
}

CountReport count(std::uint64_t x, const CountOptions& opt) { return count_impl(x, opt, opt.parallel); }
CountReport count_serial(std::uint64_t x, const CountOptions& opt) { return count_impl(x, opt, false); }

std::vector<CountReport> erdos_table(const std::vector<std::uint64_t>& grid, const CountOptions& opt) {
    std::vector<CountReport> out;
    for (auto x : grid) out.push_back(count(x, opt));
    return out;
}

std::string to_csv(const std::vector<CountReport>& table) {
    std::ostringstream os;
    os << "x,D,D_sf,prediction,D_sf/prediction\n";
    char buf[64];
    for (const auto& r : table) {
        os << r.x << "," << r.D << "," << r.D_sf << ",";
        if (r.prediction) {
            std::snprintf(buf, sizeof buf, "%.6f,%.6f", *r.prediction, *r.ratio_sf);
            os << buf;
        } else {
            os << ",";
        }
        os << "\n";
    }
    return os.str();
}

} // namespace hasse
