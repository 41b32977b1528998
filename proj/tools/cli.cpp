#include "cli.hpp"

#include "hasse/errors.hpp"
#include "hasse/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace hasse::cli {

using report::json;

Config Config::from_json_text(const std::string& text) {
    Config c;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Parse, std::string("config: ") + e.what());
    }
    auto num = [&](const char* key, auto& field) {
        if (!j.contains(key)) return;
        auto v = j.at(key).get<std::int64_t>();
        if (v <= 0) throw Error(ErrorKind::InvalidArgument, std::string("config: ") + key + " must be positive");
        field = static_cast<std::remove_reference_t<decltype(field)>>(v);
    };
    num("scan_bound", c.scan_bound);
    num("beta_bound", c.beta_bound);
    num("max_x", c.max_x);
    num("max_degree", c.max_degree);
    num("max_class_group", c.max_class_group);
    num("local_search_budget", c.local_search_budget);
    if (j.contains("output")) {
        c.output = j.at("output").get<std::string>();
        if (c.output != "human" && c.output != "json") throw Error(ErrorKind::InvalidArgument, "config: output must be human or json");
    }
    return c;
}

Config Config::load_from_env() {
    const char* path = std::getenv("HASSE_CONFIG");
    if (!path || !*path) return {};
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidArgument, std::string("cannot read config file ") + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

namespace {

struct Ctx {
    const Config& cfg;
    std::ostream& out;
    bool json_out;
};

VerdictOptions verdict_options(const Config& cfg) {
    VerdictOptions o;
    o.scan_bound = cfg.scan_bound;
    o.galois.max_degree = cfg.max_degree;
    o.galois.max_class_group = cfg.max_class_group;
    o.local.search_budget = cfg.local_search_budget;
    return o;
}

ConstructOptions construct_options(const Config& cfg) {
    ConstructOptions o;
    o.verdict = verdict_options(cfg);
    o.search.bound = cfg.beta_bound;
    o.search.local = o.verdict.local;
    return o;
}

void print_verdict(std::ostream& out, const Verdict& v) {
    out << "verdict: " << to_string(v.kind) << "\n";
    if (!v.place.empty()) out << "place: " << v.place << "\n";
    out << "detail: " << v.detail << "\n";
    if (v.line) out << "line: " << v.line->to_string() << "\n";
    if (v.kind != VerdictKind::HasseFailure) return;
    const auto& c = v.certificate;
    out << "certificate:\n";
    out << "  |Gamma| = " << c.group_order << ", [K0:k] = " << c.base_degree << ", |Lambda/dZ^3| = " << c.lattice_index << "\n";
    if (c.classes_materialized) {
        out << "  conjugacy classes (" << c.classes.size() << "):\n";
        for (const auto& e : c.classes) {
            out << "    t=" << e.rep.t << " c=(" << e.rep.c[0] << "," << e.rep.c[1] << "," << e.rep.c[2] << ") size " << e.size
                << " fixes line " << *e.fixed_line << "\n";
        }
    } else {
        out << "  every element fixes a line (classes not listed)\n";
    }
    out << "  bad places:";
    for (const auto& b : c.bad_place_checks) out << " " << b.place << (b.has_line ? " ok(comp " + std::to_string(b.component) + ")" : " FAIL") << ";";
    out << "\n  non-powers over k:";
    for (const auto& w : c.non_powers)
        out << " comp" << w.component << "[u " << (w.u_is_power ? "power" : "non-power") << ", v "
            << (w.v_is_power ? "power" : "non-power") << "]";
    out << "\n";
}

int verdict_exit(const Verdict& v) { return v.kind == VerdictKind::Unsupported ? 2 : 0; }

DiagonalSurface read_surface(const std::string& field, unsigned d, const std::string& coeffs) {
    return DiagonalSurface::parse(d, CycField::parse(field), coeffs);
}

int cmd_lines(Ctx& cx, const std::string& field, unsigned d, const std::string& coeffs, const std::string& place, bool explicit_lines) {
    auto S = read_surface(field, d, coeffs);
    auto comps = hilbert_scheme(S);
    auto global = has_line_over(S, S.field, {});
    std::vector<LocalLineResult> local;
    if (!place.empty()) {
        Place P = place == "inf" ? Place::real() : Place::rational(std::stoull(place));
        local = local_line_report(S, P, {.search_budget = cx.cfg.local_search_budget});
    }
    if (cx.json_out) {
        json j{{"schema", report::kSchema}, {"surface", report::to_json(S)}};
        j["components"] = json::array();
        for (const auto& c : comps) j["components"].push_back(report::to_json(c));
        j["global_line"] = global ? report::to_json(*global) : json(nullptr);
        if (!place.empty()) {
            j["local"] = json::array();
            for (const auto& r : local) j["local"].push_back({{"place", r.place}, {"has_line", r.has_line}, {"component", r.component}});
        }
        if (explicit_lines) {
            j["lines"] = json::array();
            for (const auto& L : lines_explicit(S)) j["lines"].push_back(L.to_string());
        }
        cx.out << j.dump(2) << "\n";
        return 0;
    }
    cx.out << S.to_string() << "\n";
    for (const auto& c : comps) cx.out << "component " << c.index << ": u = " << c.u.to_string() << ", v = " << c.v.to_string() << "\n";
    cx.out << "line over " << S.field.name() << ": " << (global ? global->to_string() : std::string("none")) << "\n";
    for (const auto& r : local)
        cx.out << "local " << r.place << ": " << (r.has_line ? "line on component " + std::to_string(r.component) : std::string("no line")) << "\n";
    if (explicit_lines)
        for (const auto& L : lines_explicit(S)) cx.out << L.to_string() << "\n";
    return 0;
}

int cmd_verdict(Ctx& cx, const std::string& field, unsigned d, const std::string& coeffs, std::uint64_t scan_bound, bool serial) {
    auto S = read_surface(field, d, coeffs);
    auto opt = verdict_options(cx.cfg);
    if (scan_bound) opt.scan_bound = scan_bound;
    opt.parallel_scan = !serial;
    auto v = hasse_verdict(S, opt);
    if (cx.json_out) {
        auto j = report::to_json(v);
        j["surface"] = report::to_json(S);
        j["components"] = json::array();
        for (const auto& c : hilbert_scheme(S)) j["components"].push_back(report::to_json(c));
        cx.out << j.dump(2) << "\n";
    } else {
        cx.out << S.to_string() << "\n";
        print_verdict(cx.out, v);
    }
    return verdict_exit(v);
}

int cmd_cohomology(Ctx& cx, const std::string& field, std::uint64_t d, bool representative) {
    CycField k = CycField::parse(field);
    auto r = hasse_principle_predicted(k, d);
    std::optional<Representative> rep;
    if (representative && r.verdict == Prediction::CounterexamplesExist && !(d % 2 == 0 && minus_one_is_dth_power(k, d)))
        rep = find_representative(k, decompose_nontrivial(k, d), d);
    if (cx.json_out) {
        auto j = report::to_json(r);
        if (rep) {
            j["decomposition"] = rep->decomposition.label();
            j["alpha"] = report::to_json(rep->alpha);
            j["power"] = rep->power;
        }
        cx.out << j.dump(2) << "\n";
        return 0;
    }
    cx.out << "H^1(" << k.name() << "(mu_" << d << ")/" << k.name() << ", mu_" << d << "): "
           << (r.h1.overall_trivial ? "trivial" : "nontrivial") << "\n";
    for (const auto& f : r.h1.factors) {
        cx.out << "  p^n = " << f.p << "^" << f.n << ": " << (f.trivial ? "trivial" : "nontrivial") << (f.special ? " (special)" : "");
        if (f.hom_order) cx.out << ", |Hom| = " << *f.hom_order;
        cx.out << " -- " << f.reason << "\n";
    }
    if (r.minus_one_dth_power) cx.out << "-1 is " << (*r.minus_one_dth_power ? "" : "not ") << "a d-th power\n";
    cx.out << "prediction: " << to_string(r.verdict) << "\n";
    for (const auto& s : r.reasons) cx.out << "  " << s << "\n";
    if (rep) cx.out << "representative " << rep->decomposition.label() << ": alpha = " << rep->alpha.to_string() << "\n";
    return 0;
}

int cmd_construct(Ctx& cx, const std::string& field, std::uint64_t d) {
    auto c = construct_for(CycField::parse(field), d, construct_options(cx.cfg));
    if (cx.json_out) {
        cx.out << report::to_json(c).dump(2) << "\n";
        return 0;
    }
    cx.out << "path: " << to_string(c.path);
    if (c.decomposition) cx.out << " " << c.decomposition->label();
    cx.out << "\nalpha = " << c.alpha.to_string() << "\nbeta = " << c.beta.beta << " (beta = 1 mod " << c.beta.modulus << ")\n";
    cx.out << "  (1) coprime: " << (c.beta.coprime ? "yes" : "no") << "\n  (2) split prime: " << c.beta.split_prime << "\n";
    for (const auto& q : c.beta.q_power_checks) cx.out << "  (3) beta in (k_P^*)^" << c.beta.q << " at " << q.place << ": " << (q.holds ? "yes" : "no") << "\n";
    for (const auto& p : c.beta.p_power_checks) cx.out << "  (4) alpha in (k_P^*)^" << c.beta.p << " at " << p.place << ": " << (p.holds ? "yes" : "no") << "\n";
    cx.out << "surface: " << c.surface.to_string() << "\n";
    print_verdict(cx.out, c.verdict);
    return 0;
}

int cmd_count(Ctx& cx, std::uint64_t x, const std::string& grid, bool squarefree, const std::string& csv) {
    CountOptions opt;
    opt.max_x = cx.cfg.max_x;
    std::vector<std::uint64_t> xs;
    if (!grid.empty()) {
        std::stringstream ss(grid);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                xs.push_back(std::stoull(tok));
            } catch (const std::exception&) {
                throw Error(ErrorKind::Parse, "bad grid entry '" + tok + "'");
            }
        }
    } else {
        xs.push_back(x);
    }
    auto table = erdos_table(xs, opt);
    if (!csv.empty()) {
        std::ofstream f(csv);
        if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + csv);
        f << to_csv(table);
    }
    if (cx.json_out) {
        json a = json::array();
        for (const auto& r : table) a.push_back(report::to_json(r));
        cx.out << json{{"schema", report::kSchema}, {"rows", a}}.dump(2) << "\n";
        return 0;
    }
    if (table.size() == 1 && grid.empty()) {
        const auto& r = table[0];
        if (squarefree)
            cx.out << r.D_sf << "\n";
        else
            cx.out << "D(" << r.x << ") = " << r.D << ", D_sf(" << r.x << ") = " << r.D_sf << "\n";
        return 0;
    }
    cx.out << to_csv(table);
    return 0;
}

int cmd_demo(Ctx& cx) {
    json all = json::array();
    int code = 0;
    auto opt = verdict_options(cx.cfg);
    if (!cx.json_out) cx.out << "== quartic surfaces x0^4 + 4 x1^4 - p^2 x2^4 - 4p^2 x3^4 over Q, p = 1 mod 8\n";
    for (long p : {17L, 41L, 73L, 89L}) {
        auto S = DiagonalSurface::rational(4, {Rat(1), Rat(4), Rat(-p * p), Rat(-4 * p * p)});
        auto v = hasse_verdict(S, opt);
        std::size_t checked = 1, ok = has_line_locally(S, Place::real()) ? 1 : 0;
        for (auto ell : primes_up_to(1000)) {
            ++checked;
            ok += has_line_locally(S, Place::rational(ell));
        }
        code = std::max(code, verdict_exit(v));
        if (cx.json_out) {
            auto j = report::to_json(v);
            j["surface"] = report::to_json(S);
            j["local_checks"] = {{"places", checked}, {"with_line", ok}, {"bound", 1000}};
            all.push_back(j);
        } else {
            cx.out << "\np = " << p << ": " << S.to_string() << "\n";
            cx.out << "direct local checks at infinity and ell <= 1000: " << ok << "/" << checked << " with a line\n";
            print_verdict(cx.out, v);
        }
    }

    CycField k(3);
    const std::uint64_t d = 21;
    auto dec = decompose_nontrivial(k, d);
    auto rep = find_representative(k, dec, d);
    auto cons = construct_case_a(k, d, dec.p, dec.n, dec.q, construct_options(cx.cfg));
    code = std::max(code, verdict_exit(cons.verdict));
    if (cx.json_out) {
        json j = report::to_json(cons);
        j["decomposition_label"] = dec.label();
        j["representative"] = report::to_json(rep.alpha);
        j["alpha_is_cube_in_Q(mu21)"] = is_dth_power_cyclotomic(rep.alpha.embed(CycField(21)), 3).has_value();
        j["alpha_is_cube_in_Q(mu3)"] = is_dth_power_cyclotomic(rep.alpha, 3).has_value();
        all.push_back(j);
        cx.out << json{{"schema", report::kSchema}, {"demo", all}}.dump(2) << "\n";
        return code;
    }
    cx.out << "\n== degree 21 over Q(mu3)\n";
    cx.out << "decomposition " << dec.label() << ", alpha = " << rep.alpha.to_string() << "\n";
    cx.out << "alpha a cube in Q(mu21): " << (is_dth_power_cyclotomic(rep.alpha.embed(CycField(21)), 3) ? "yes" : "no")
           << ", in Q(mu3): " << (is_dth_power_cyclotomic(rep.alpha, 3) ? "yes" : "no") << "\n";
    cx.out << "beta = " << cons.beta.beta << " (verified: " << (cons.beta.verified() ? "yes" : "no") << ")\n";
    cx.out << "surface: " << cons.surface.to_string() << "\n";
    print_verdict(cx.out, cons.verdict);
    return code;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Config& cfg) {
    CLI::App app{"Lines on diagonal surfaces and the Hasse principle", "hasselines"};
    app.require_subcommand(1);
    bool json_flag = false;
    app.add_flag("--json", json_flag, "JSON output");

    std::string field = "Q", coeffs, place, grid, csv;
    unsigned d = 0;
    std::uint64_t dd = 0, scan_bound = 0, x = 0;
    bool explicit_lines = false, serial = false, representative = false, squarefree = false;

    auto* lines = app.add_subcommand("lines", "Hilbert scheme components, global and local lines");
    lines->add_option("--field", field, "Q or Q(muN)")->capture_default_str();
    lines->add_option("--d", d, "degree")->required()->check(CLI::Range(3u, 1000u));
    lines->add_option("--coeffs", coeffs, "a0,a1,a2,a3")->required();
    lines->add_option("--place", place, "rational prime or inf");
    lines->add_flag("--explicit", explicit_lines, "list all 3d^2 lines");
    lines->add_flag("--json", json_flag, "JSON output");

    auto* verdict = app.add_subcommand("verdict", "Hasse principle verdict with certificate");
    verdict->add_option("--field", field, "Q or Q(muN)")->capture_default_str();
    verdict->add_option("--d", d, "degree")->required()->check(CLI::Range(3u, 1000u));
    verdict->add_option("--coeffs", coeffs, "a0,a1,a2,a3")->required();
    verdict->add_option("--scan-bound", scan_bound, "unramified prime scan bound")->check(CLI::PositiveNumber);
    verdict->add_flag("--serial", serial, "serial prime scan");
    verdict->add_flag("--json", json_flag, "JSON output");

    auto* coh = app.add_subcommand("cohomology", "H^1(k(mu_d)/k, mu_d) and the predicted behaviour");
    coh->add_option("--field", field, "Q or Q(muN)")->capture_default_str();
    coh->add_option("--d", dd, "degree")->required()->check(CLI::Range(std::uint64_t{3}, std::uint64_t{1'000'000}));
    coh->add_flag("--representative", representative, "also compute a cocycle representative");
    coh->add_flag("--json", json_flag, "JSON output");

    auto* cons = app.add_subcommand("construct", "certified counterexample surface");
    cons->add_option("--field", field, "Q or Q(muN)")->capture_default_str();
    cons->add_option("--d", dd, "degree")->required()->check(CLI::Range(std::uint64_t{3}, std::uint64_t{1000}));
    cons->add_flag("--json", json_flag, "JSON output");

    auto* cnt = app.add_subcommand("count", "D(x) and D_sf(x)");
    cnt->add_option("--x", x, "bound");
    cnt->add_option("--grid", grid, "comma separated bounds");
    cnt->add_flag("--squarefree", squarefree, "print D_sf only");
    cnt->add_option("--csv", csv, "write the table as CSV");
    cnt->add_flag("--json", json_flag, "JSON output");

    auto* demo = app.add_subcommand("demo", "reproduce the worked examples end to end");
    demo->add_flag("--json", json_flag, "JSON output");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
        if (cnt->parsed() && x == 0 && grid.empty()) throw CLI::ValidationError("count", "--x or --grid is required");
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    Ctx cx{cfg, out, json_flag || cfg.output == "json"};
    try {
        if (lines->parsed()) return cmd_lines(cx, field, d, coeffs, place, explicit_lines);
        if (verdict->parsed()) return cmd_verdict(cx, field, d, coeffs, scan_bound, serial);
        if (coh->parsed()) return cmd_cohomology(cx, field, dd, representative);
        if (cons->parsed()) return cmd_construct(cx, field, dd);
        if (cnt->parsed()) return cmd_count(cx, x, grid, squarefree, csv);
        if (demo->parsed()) return cmd_demo(cx);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.is_budget() ? 2 : 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config cfg;
    try {
        cfg = Config::load_from_env();
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return run(args, out, err, cfg);
}

} // namespace hasse::cli
