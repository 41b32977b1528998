#include "hasse/report.hpp"

#include "hasse/errors.hpp"

namespace hasse::report {

namespace {

template <class T> json opt(const std::optional<T>& x) { return x ? json(*x) : json(nullptr); }

template <class T> std::optional<T> opt_get(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<T>();
}

const json& need(const json& j, const char* key) {
    if (!j.contains(key)) throw Error(ErrorKind::Parse, std::string("missing JSON field '") + key + "'");
    return j.at(key);
}

} // namespace

json to_json(const CycElt& x) { return {{"field", x.field().conductor()}, {"value", x.to_string()}}; }

CycElt elt_from_json(const json& j) {
    return CycElt::parse(CycField(need(j, "field").get<std::uint64_t>()), need(j, "value").get<std::string>());
}

json to_json(const DiagonalSurface& S) {
    json c = json::array();
    for (const auto& a : S.a) c.push_back(a.to_string());
    return {{"d", S.d}, {"field", S.field.name()}, {"conductor", S.field.conductor()}, {"coeffs", c}};
}

DiagonalSurface surface_from_json(const json& j) {
    CycField k(need(j, "conductor").get<std::uint64_t>());
    const auto& c = need(j, "coeffs");
    if (!c.is_array() || c.size() != 4) throw Error(ErrorKind::Parse, "surface needs four coefficients");
    std::array<CycElt, 4> a;
    for (int i = 0; i < 4; ++i) a[i] = CycElt::parse(k, c[i].get<std::string>());
    return DiagonalSurface(need(j, "d").get<unsigned>(), k, a);
}

json to_json(const LineComponent& c) { return {{"index", c.index}, {"u", c.u.to_string()}, {"v", c.v.to_string()}}; }

json to_json(const LineWitness& w) {
    return {{"component", w.component}, {"c1", to_json(w.c1)}, {"c2", to_json(w.c2)}, {"equations", w.to_string()}};
}

LineWitness line_from_json(const json& j) {
    LineWitness w;
    w.component = need(j, "component").get<int>();
    w.c1 = elt_from_json(need(j, "c1"));
    w.c2 = elt_from_json(need(j, "c2"));
    return w;
}

json to_json(const H1Factor& f) {
    return {{"p", f.p},
            {"n", f.n},
            {"special", f.special},
            {"trivial", f.trivial},
            {"reason", f.reason},
            {"degree_total", f.degree_total},
            {"degree_ppart", f.degree_ppart},
            {"hom_order", opt(f.hom_order)},
            {"hom_source_cyclic", f.hom_source_cyclic}};
}

H1Factor h1_factor_from_json(const json& j) {
    H1Factor f;
    f.p = need(j, "p").get<std::uint64_t>();
    f.n = need(j, "n").get<unsigned>();
    f.special = need(j, "special").get<bool>();
    f.trivial = need(j, "trivial").get<bool>();
    f.reason = need(j, "reason").get<std::string>();
    f.degree_total = need(j, "degree_total").get<std::uint64_t>();
    f.degree_ppart = need(j, "degree_ppart").get<std::uint64_t>();
    f.hom_order = opt_get<std::uint64_t>(j, "hom_order");
    f.hom_source_cyclic = need(j, "hom_source_cyclic").get<bool>();
    return f;
}

json to_json(const PredictionReport& r) {
    json fs = json::array();
    for (const auto& f : r.h1.factors) fs.push_back(to_json(f));
    return {{"schema", kSchema},
            {"prediction", to_string(r.verdict)},
            {"field", CycField(r.h1.field).name()},
            {"conductor", r.h1.field},
            {"d", r.h1.d},
            {"h1_trivial", r.h1.overall_trivial},
            {"factors", fs},
            {"minus_one_dth_power", opt(r.minus_one_dth_power)},
            {"reasons", r.reasons}};
}

PredictionReport prediction_from_json(const json& j) {
    PredictionReport r;
    auto p = need(j, "prediction").get<std::string>();
    if (p == "AlwaysHolds")
        r.verdict = Prediction::AlwaysHolds;
    else if (p == "CounterexamplesExist")
        r.verdict = Prediction::CounterexamplesExist;
    else
        throw Error(ErrorKind::Parse, "unknown prediction '" + p + "'");
    r.h1.field = need(j, "conductor").get<std::uint64_t>();
    r.h1.d = need(j, "d").get<std::uint64_t>();
    r.h1.overall_trivial = need(j, "h1_trivial").get<bool>();
    for (const auto& f : need(j, "factors")) r.h1.factors.push_back(h1_factor_from_json(f));
    r.minus_one_dth_power = opt_get<bool>(j, "minus_one_dth_power");
    r.reasons = need(j, "reasons").get<std::vector<std::string>>();
    return r;
}

json to_json(const GaloisElement& g) { return {{"t", g.t}, {"c", g.c}}; }

GaloisElement element_from_json(const json& j) {
    GaloisElement g;
    g.t = need(j, "t").get<std::uint64_t>();
    g.c = need(j, "c").get<std::array<std::uint32_t, 3>>();
    return g;
}

VerdictKind verdict_kind_from_string(const std::string& s) {
    for (auto k : {VerdictKind::GlobalLine, VerdictKind::LocalObstruction, VerdictKind::HasseFailure, VerdictKind::Unsupported})
        if (s == to_string(k)) return k;
    throw Error(ErrorKind::Parse, "unknown verdict '" + s + "'");
}

json to_json(const Verdict& v) {
    json j{{"schema", kSchema}, {"verdict", to_string(v.kind)}, {"place", v.place}, {"detail", v.detail}};
    j["line"] = v.line ? to_json(*v.line) : json(nullptr);
    if (v.kind == VerdictKind::HasseFailure) {
        const auto& c = v.certificate;
        json classes = json::array();
        for (const auto& e : c.classes)
            classes.push_back({{"rep", to_json(e.rep)}, {"size", e.size}, {"fixes", e.fixed_line.has_value()}, {"line", opt(e.fixed_line)}});
        json bad = json::array();
        for (const auto& b : c.bad_place_checks) bad.push_back({{"place", b.place}, {"has_line", b.has_line}, {"component", b.component}});
        json wit = json::array();
        for (const auto& w : c.non_powers)
            wit.push_back({{"component", w.component}, {"u_is_power", w.u_is_power}, {"v_is_power", w.v_is_power}});
        j["certificate"] = {{"group_order", c.group_order},
                            {"base_degree", c.base_degree},
                            {"lattice_index", c.lattice_index},
                            {"classes_materialized", c.classes_materialized},
                            {"classes", classes},
                            {"bad_places", bad},
                            {"witnesses", wit}};
    }
    return j;
}

Verdict verdict_from_json(const json& j) {
    Verdict v;
    v.kind = verdict_kind_from_string(need(j, "verdict").get<std::string>());
    v.place = need(j, "place").get<std::string>();
    v.detail = need(j, "detail").get<std::string>();
    if (j.contains("line") && !j.at("line").is_null()) v.line = line_from_json(j.at("line"));
    if (j.contains("certificate")) {
        const auto& c = j.at("certificate");
        auto& out = v.certificate;
        out.group_order = need(c, "group_order").get<std::uint64_t>();
        out.base_degree = need(c, "base_degree").get<std::uint64_t>();
        out.lattice_index = need(c, "lattice_index").get<std::uint64_t>();
        out.classes_materialized = need(c, "classes_materialized").get<bool>();
        for (const auto& e : need(c, "classes")) {
            ClassEntry ce;
            ce.rep = element_from_json(need(e, "rep"));
            ce.size = need(e, "size").get<std::uint64_t>();
            ce.fixed_line = opt_get<std::size_t>(e, "line");
            out.classes.push_back(ce);
        }
        for (const auto& b : need(c, "bad_places"))
            out.bad_place_checks.push_back(
                {need(b, "place").get<std::string>(), need(b, "has_line").get<bool>(), need(b, "component").get<int>()});
        for (const auto& w : need(c, "witnesses"))
            out.non_powers.push_back(
                {need(w, "component").get<int>(), need(w, "u_is_power").get<bool>(), need(w, "v_is_power").get<bool>()});
    }
    return v;
}

json to_json(const BetaCertificate& c) {
    auto checks = [](const std::vector<LocalCheck>& v) {
        json a = json::array();
        for (const auto& x : v) a.push_back({{"place", x.place}, {"holds", x.holds}});
        return a;
    };
    return {{"beta", c.beta},
            {"alpha", to_json(c.alpha)},
            {"p", c.p},
            {"q", c.q},
            {"modulus", c.modulus},
            {"coprime", c.coprime},
            {"split_prime", c.split_prime},
            {"q_power_checks", checks(c.q_power_checks)},
            {"p_power_checks", checks(c.p_power_checks)},
            {"candidates_tried", c.candidates_tried},
            {"verified", c.verified()}};
}

BetaCertificate beta_from_json(const json& j) {
    BetaCertificate c;
    c.beta = need(j, "beta").get<std::uint64_t>();
    c.alpha = elt_from_json(need(j, "alpha"));
    c.p = need(j, "p").get<std::uint64_t>();
    c.q = need(j, "q").get<std::uint64_t>();
    c.modulus = need(j, "modulus").get<std::uint64_t>();
    c.coprime = need(j, "coprime").get<bool>();
    c.split_prime = need(j, "split_prime").get<std::string>();
    for (const auto& x : need(j, "q_power_checks")) c.q_power_checks.push_back({need(x, "place").get<std::string>(), need(x, "holds").get<bool>()});
    for (const auto& x : need(j, "p_power_checks")) c.p_power_checks.push_back({need(x, "place").get<std::string>(), need(x, "holds").get<bool>()});
    c.candidates_tried = need(j, "candidates_tried").get<unsigned>();
    return c;
}

json to_json(const Construction& c) {
    json dec = nullptr;
    if (c.decomposition)
        dec = {{"label", c.decomposition->label()},
               {"kind", c.decomposition->kind == CaseDecomposition::Kind::A ? "A" : "B"},
               {"p", c.decomposition->p},
               {"n", c.decomposition->n},
               {"q", c.decomposition->q},
               {"m", c.decomposition->m}};
    return {{"schema", kSchema},
            {"path", to_string(c.path)},
            {"surface", to_json(c.surface)},
            {"decomposition", dec},
            {"alpha", to_json(c.alpha)},
            {"beta", to_json(c.beta)},
            {"beta_attempts", c.beta_attempts},
            {"verdict", to_json(c.verdict)}};
}

Construction construction_from_json(const json& j) {
    Construction c{surface_from_json(need(j, "surface"))};
    auto path = need(j, "path").get<std::string>();
    bool found = false;
    for (auto p : {ConstructionPath::SpecialEven, ConstructionPath::CaseA, ConstructionPath::CaseB})
        if (path == to_string(p)) {
            c.path = p;
            found = true;
        }
    if (!found) throw Error(ErrorKind::Parse, "unknown construction path '" + path + "'");
    if (!need(j, "decomposition").is_null()) {
        const auto& d = j.at("decomposition");
        CaseDecomposition dec;
        dec.kind = need(d, "kind").get<std::string>() == "A" ? CaseDecomposition::Kind::A : CaseDecomposition::Kind::B;
        dec.p = need(d, "p").get<std::uint64_t>();
        dec.n = need(d, "n").get<unsigned>();
        dec.q = need(d, "q").get<std::uint64_t>();
        dec.m = need(d, "m").get<unsigned>();
        c.decomposition = dec;
    }
    c.alpha = elt_from_json(need(j, "alpha"));
    c.beta = beta_from_json(need(j, "beta"));
    c.beta_attempts = need(j, "beta_attempts").get<unsigned>();
    c.verdict = verdict_from_json(need(j, "verdict"));
    return c;
}

json to_json(const CountReport& r) {
    return {{"x", r.x}, {"D", r.D}, {"D_sf", r.D_sf}, {"prediction", opt(r.prediction)}, {"ratio_sf", opt(r.ratio_sf)}, {"ratio", opt(r.ratio)}};
}

CountReport count_from_json(const json& j) {
    CountReport r;
    r.x = need(j, "x").get<std::uint64_t>();
    r.D = need(j, "D").get<std::uint64_t>();
    r.D_sf = need(j, "D_sf").get<std::uint64_t>();
    r.prediction = opt_get<double>(j, "prediction");
    r.ratio_sf = opt_get<double>(j, "ratio_sf");
    r.ratio = opt_get<double>(j, "ratio");
    return r;
}

} // namespace hasse::report
