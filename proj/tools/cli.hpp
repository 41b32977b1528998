#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hasse::cli {

// Defaults; a JSON file named by $HASSE_CONFIG may override any of them.
struct Config {
    std::uint64_t scan_bound = 5000;
    std::uint64_t beta_bound = 10'000'000'000;
    std::uint64_t max_x = 100'000'000;
    unsigned max_degree = 32;
    std::uint64_t max_class_group = 200'000;
    std::uint64_t local_search_budget = 4'000'000;
    std::string output = "human"; // human | json

    static Config from_json_text(const std::string& text);
    static Config load_from_env(); // defaults when HASSE_CONFIG is unset
};

// Exit codes: 0 success, 1 usage or input error, 2 undecided (Unsupported or a budget error).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Config& cfg);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace hasse::cli
