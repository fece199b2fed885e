#pragma once

#include "invariants.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

namespace qtv::cli {

enum ExitCode { kOk = 0, kParseError = 2, kBudgetError = 3, kComputationError = 4 };

using json = nlohmann::ordered_json;

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    std::string command;
    std::string braid_text;
    std::string link_name;
    int strands = 0;
    std::string r_text;
    int rmin = 5;
    int rmax = 0;
    bool exact = false;
    std::string format = "json";
    bool format_given = false;
    int jobs = 1;
    long long budget_colorings = 1'000'000;
    int budget_cable = 0;
    bool no_cache = false;
    std::optional<double> volume;
    std::string fast_path = "auto";
    bool force_generic = false;
    std::string color_text;
    bool normalized = false;
    std::optional<int> genus, boundary;
    int p = 0, q = 0, n = 0, m = 0;
    std::string targets_text;
    std::string remove_text;
};

inline std::string dec(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
    return buf;
}

inline std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::string tok;
    std::istringstream is(text);
    while (std::getline(is, tok, ',')) {
        tok.erase(0, tok.find_first_not_of(" \t"));
        tok.erase(tok.find_last_not_of(" \t") + 1);
        if (tok.empty()) continue;
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            throw UsageError("bad integer '" + tok + "'");
        }
        if (used != tok.size()) throw UsageError("bad integer '" + tok + "'");
        out.push_back(v);
    }
    return out;
}

/// "7", "5,7,11" or "5..51" (odd values only).
inline std::vector<int> parse_r_values(const std::string& text) {
    static const std::regex range(R"(\s*(\d+)\s*\.\.\s*(\d+)\s*)");
    std::smatch m;
    std::vector<int> rs;
    if (std::regex_match(text, m, range)) {
        int a = std::stoi(m[1]), b = std::stoi(m[2]);
        if (a % 2 == 0) throw LevelError("r range must start at an odd value");
        for (int r = a; r <= b; r += 2) rs.push_back(r);
    } else {
        rs = parse_int_list(text);
    }
    if (rs.empty()) throw LevelError("empty r range");
    for (int r : rs)
        if (r < 5 || r % 2 == 0) throw LevelError("r must be odd and >= 5, got " + std::to_string(r));
    check_r_list(rs);
    return rs;
}

inline LinkSpec resolve_link(const RunConfig& cfg) {
    if (!cfg.braid_text.empty() && !cfg.link_name.empty()) throw UsageError("give either --braid or --link");
    if (!cfg.link_name.empty()) return named_link(cfg.link_name);
    if (cfg.braid_text.empty() && cfg.strands == 0) throw UsageError("a link is required (--braid or --link)");
    return link_from_braid(BraidWord::parse(cfg.braid_text, cfg.strands));
}

inline json int_matrix(const std::vector<std::vector<int>>& m) {
    json a = json::array();
    for (const auto& row : m) a.push_back(row);
    return a;
}

template <class V>
json value_json(const V& v) {
    json j;
    auto z = [&] {
        if constexpr (std::is_same_v<V, CyclotomicElement>) return v.embed();
        else return v;
    }();
    j["re"] = dec(z.real());
    j["im"] = dec(z.imag());
    if constexpr (std::is_same_v<V, CyclotomicElement>) j["exact"] = serial::exact_to_json(v);
    return j;
}

inline json link_json(const LinkSpec& s) {
    json j;
    j["name"] = s.name;
    j["braid"] = s.link.braid.word_text();
    j["strands"] = s.link.braid.strands;
    j["key"] = s.key();
    j["components"] = s.link.num_components();
    j["crossings"] = s.link.braid.crossing_count();
    j["linking_matrix"] = int_matrix(s.link.linking_matrix);
    return j;
}

inline json fiber_json(const ClosedBraidLink& L) {
    auto f = fiber_data(L);
    json j;
    j["chi"] = f.chi;
    j["boundary"] = f.boundary;
    j["genus"] = f.genus.to_string();
    j["homogeneous"] = f.homogeneous;
    if (!f.homogeneous) j["note"] = "not homogeneous: Seifert surface data only, no fiberedness claim";
    return j;
}

inline InvariantOptions make_options(const RunConfig& cfg, const InvariantCache* cache) {
    InvariantOptions o;
    o.cable_cap = cfg.budget_cable;
    o.coloring_budget = cfg.budget_colorings;
    o.jobs = std::max(1, cfg.jobs);
    o.cache = cache;
    o.force_generic = cfg.force_generic;
    o.use_fast_path = cfg.fast_path != "none";
    return o;
}

inline void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

inline void emit_table(std::ostream& out, const std::vector<std::string>& header,
                       const std::vector<std::vector<std::string>>& rows, bool csv) {
    if (csv) {
        for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
        out << "\n";
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
            out << "\n";
        }
        return;
    }
    std::vector<std::size_t> w(header.size());
    for (std::size_t i = 0; i < header.size(); ++i) w[i] = header[i].size();
    for (const auto& r : rows)
        for (std::size_t i = 0; i < r.size(); ++i) w[i] = std::max(w[i], r[i].size());
    auto line = [&](const std::vector<std::string>& r) {
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "  " : "") << std::setw(static_cast<int>(w[i])) << r[i];
        out << "\n";
    };
    line(header);
    for (const auto& r : rows) line(r);
}

// ---- commands ----

inline int cmd_jones(const RunConfig& cfg, const InvariantOptions& opt, std::ostream& out) {
    auto spec = resolve_link(cfg);
    auto rs = parse_r_values(cfg.r_text);
    Coloring c = parse_int_list(cfg.color_text);
    if (c.size() == 1 && spec.link.num_components() > 1) c.assign(spec.link.num_components(), c[0]);
    json rep;
    rep["command"] = "jones";
    rep["link"] = link_json(spec);
    rep["coloring"] = c;
    rep["backend"] = cfg.exact ? "exact" : "float";
    rep["normalized"] = cfg.normalized;
    json recs = json::array();
    for (int r : rs) {
        json rec;
        rec["r"] = r;
        auto run = [&](const auto& root) {
            auto v = bracket_value(spec, c, root, opt);
            if (cfg.normalized) v = v / unknot_bracket(c.empty() ? 0 : c[0], root);
            rec["value"] = value_json(v);
        };
        if (cfg.exact) run(ExactRoot(r));
        else run(FloatRoot(r));
        recs.push_back(rec);
    }
    rep["records"] = recs;
    emit(out, rep);
    return kOk;
}

inline int cmd_tv(const RunConfig& cfg, const InvariantOptions& opt, std::ostream& out) {
    auto spec = resolve_link(cfg);
    auto rs = parse_r_values(cfg.r_text);
    json rep;
    rep["command"] = "tv";
    rep["link"] = link_json(spec);
    rep["backend"] = cfg.exact ? "exact" : "float";
    json recs = json::array();
    std::vector<std::vector<std::string>> rows;
    for (int r : rs) {
        json rec;
        rec["r"] = r;
        double tv = 0;
        if (cfg.exact) {
            ExactRoot root(r);
            auto res = tv_link_complement(spec, root, opt);
            tv = res.real;
            rec["tv"] = dec(tv);
            rec["tv_exact"] = serial::exact_to_json(res.value);
            auto q = res.value.rational_value();
            rec["rational"] = q ? json(q->to_string()) : json(nullptr);
            rec["is_integer"] = q && q->is_integer();
        } else {
            tv = tv_link_complement(spec, FloatRoot(r), opt).real;
            rec["tv"] = dec(tv);
        }
        rec["y"] = dec(growth_rate(r, tv));
        rows.push_back({std::to_string(r), dec(tv), dec(growth_rate(r, tv))});
        recs.push_back(rec);
    }
    rep["records"] = recs;
    if (cfg.format == "json") emit(out, rep);
    else emit_table(out, {"r", "tv", "y"}, rows, cfg.format == "csv");
    return kOk;
}

inline json series_json(const GrowthSeries& g) {
    json a = json::array();
    auto gaps = g.gaps();
    for (std::size_t i = 0; i < g.samples.size(); ++i) {
        const auto& s = g.samples[i];
        json e;
        e["r"] = s.r;
        e["tv"] = dec(s.tv);
        e["y"] = dec(s.y);
        if (!gaps.empty()) e["gap"] = dec(gaps[i]);
        a.push_back(e);
    }
    json j;
    j["samples"] = a;
    j["max_y"] = g.max_y() ? json(dec(*g.max_y())) : json(nullptr);
    j["last_y"] = g.last_y() ? json(dec(*g.last_y())) : json(nullptr);
    j["volume"] = g.volume ? json(dec(*g.volume)) : json(nullptr);
    return j;
}

inline int cmd_growth(const RunConfig& cfg, InvariantOptions opt, std::ostream& out) {
    auto spec = resolve_link(cfg);
    if (cfg.fast_path == "habiro" && spec.fast_key != std::optional<std::string>("4_1"))
        throw UsageError("the habiro fast path applies to 4_1 only");
    if (cfg.fast_path == "rosso-jones" && !(spec.fast_key && spec.fast_key->rfind("T_", 0) == 0))
        throw UsageError("the rosso-jones fast path applies to torus knots only");
    if (cfg.fast_path != "auto" && cfg.fast_path != "none" && cfg.fast_path != "habiro" && cfg.fast_path != "rosso-jones")
        throw UsageError("unknown fast path '" + cfg.fast_path + "'");
    std::vector<int> rs;
    if (!cfg.r_text.empty()) rs = parse_r_values(cfg.r_text);
    else {
        if (cfg.rmax < cfg.rmin) throw UsageError("--rmax is required and must be >= --rmin");
        rs = parse_r_values(std::to_string(cfg.rmin) + ".." + std::to_string(cfg.rmax));
    }
    auto g = growth_series(spec, rs, cfg.exact ? Backend::exact : Backend::floating, cfg.volume, opt);
    std::string fmt = cfg.format_given ? cfg.format : "csv";
    if (fmt == "json") {
        json rep;
        rep["command"] = "growth";
        rep["link"] = link_json(spec);
        rep["backend"] = cfg.exact ? "exact" : "float";
        rep["series"] = series_json(g);
        emit(out, rep);
        return kOk;
    }
    std::vector<std::vector<std::string>> rows;
    auto gaps = g.gaps();
    for (std::size_t i = 0; i < g.samples.size(); ++i) {
        const auto& s = g.samples[i];
        rows.push_back({std::to_string(s.r), dec(s.tv), dec(s.y), gaps.empty() ? "" : dec(gaps[i])});
    }
    emit_table(out, {"r", "tv", "y", "gap"}, rows, fmt == "csv");
    return kOk;
}

inline json certificate_json(const CertificateSearch& s, const LinkSpec& spec) {
    json j;
    j["searched"] = s.searched;
    j["total"] = s.total;
    j["complete"] = s.complete();
    if (s.certificate) {
        const auto& c = *s.certificate;
        json cj;
        cj["r"] = c.r;
        cj["coloring"] = c.coloring;
        cj["trace_modulus"] = dec(c.trace_modulus);
        cj["dim_bound"] = dec(static_cast<double>(c.dim_bound));
        cj["genus"] = c.genus;
        cj["boundary"] = c.boundary;
        cj["replayed"] = replay_certificate(spec, c, 64);
        j["certificate"] = cj;
    } else {
        j["certificate"] = nullptr;
    }
    return j;
}

inline std::pair<int, int> surface_data(const RunConfig& cfg, const LinkSpec& spec) {
    auto f = fiber_data(spec.link);
    int g = cfg.genus ? *cfg.genus : static_cast<int>(f.genus.num().small_value());
    int n = cfg.boundary ? *cfg.boundary : f.boundary;
    return {g, n};
}

inline int cmd_certify(const RunConfig& cfg, const InvariantOptions& opt, std::ostream& out) {
    auto spec = resolve_link(cfg);
    auto rs = parse_r_values(cfg.r_text);
    auto [g, n] = surface_data(cfg, spec);
    json rep;
    rep["command"] = "certify";
    rep["link"] = link_json(spec);
    rep["fiber"] = fiber_json(spec.link);
    rep["genus"] = g;
    rep["boundary"] = n;
    json recs = json::array();
    bool incomplete = false;
    for (int r : rs) {
        auto s = cfg.exact ? certify_infinite_order(spec, ExactRoot(r), g, n, opt)
                           : certify_infinite_order(spec, FloatRoot(r), g, n, opt);
        json rec = certificate_json(s, spec);
        rec["r"] = r;
        recs.push_back(rec);
        if (!s.complete()) incomplete = true;
    }
    rep["records"] = recs;
    emit(out, rep);
    return incomplete ? kBudgetError : kOk;
}

inline int cmd_integrality(const RunConfig& cfg, const InvariantOptions& opt, std::ostream& out) {
    LinkSpec spec;
    if (cfg.p != 0 || cfg.q != 0) {
        if (!cfg.braid_text.empty() || !cfg.link_name.empty()) throw UsageError("give either --p/--q or a link");
        spec = named_link("T_" + std::to_string(cfg.p) + "_" + std::to_string(cfg.q));
    } else {
        spec = resolve_link(cfg);
    }
    auto rs = parse_r_values(cfg.r_text);
    json rep;
    rep["command"] = "integrality";
    rep["link"] = link_json(spec);
    json recs = json::array();
    for (int r : rs) {
        auto ir = integrality_check(spec, r, opt);
        json rec;
        rec["r"] = r;
        if (cfg.p != 0) rec["coprime"] = std::gcd(r, std::abs(cfg.p * cfg.q)) == 1;
        rec["is_integer"] = ir.is_integer;
        rec["value"] = ir.value ? json(ir.value->to_string()) : json(nullptr);
        rec["tv"] = dec(ir.embedded);
        rec["residual"] = dec(ir.residual);
        rec["galois_fixed"] = ir.galois_fixed;
        rec["tv_exact"] = serial::exact_to_json(ir.exact);
        recs.push_back(rec);
    }
    rep["records"] = recs;
    emit(out, rep);
    return kOk;
}

inline json homogenization_json(const HomogenizationResult& h) {
    auto L = closure(h.braid);
    json j;
    j["braid"] = h.braid.word_text();
    j["strands"] = h.braid.strands;
    j["crossings"] = h.braid.crossing_count();
    j["homogeneous"] = is_homogeneous(h.braid);
    j["components"] = L.num_components();
    j["stallings_component"] = h.stallings_component;
    j["linking_vector"] = h.linking_vector;
    j["linking_matrix"] = int_matrix(L.linking_matrix);
    j["gcd_condition"] = L.num_components() >= 2 ? json(condition_club_gcd(L, h.stallings_component)) : json(nullptr);
    j["fiber"] = fiber_json(L);
    return j;
}

inline std::vector<int> default_targets(std::size_t n) {
    std::vector<int> t(n, 0);
    if (n > 0) t[0] = 1;
    return t;
}

inline int cmd_homogenize(const RunConfig& cfg, std::ostream& out) {
    auto spec = resolve_link(cfg);
    auto h = homogenize(spec.link.braid);
    if (!cfg.targets_text.empty()) h = adjust_linking(h, parse_int_list(cfg.targets_text));
    json rep;
    rep["command"] = "homogenize";
    rep["input"] = link_json(spec);
    rep["result"] = homogenization_json(h);
    emit(out, rep);
    return kOk;
}

inline int cmd_amu(const RunConfig& cfg, const InvariantOptions& opt, std::ostream& out) {
    auto spec = resolve_link(cfg);
    auto h = homogenize(spec.link.braid);
    auto targets = cfg.targets_text.empty() ? default_targets(h.linking_vector.size()) : parse_int_list(cfg.targets_text);
    h = adjust_linking(h, targets);
    auto full = link_from_braid(h.braid);
    auto f = fiber_data(full.link);
    int g = static_cast<int>(f.genus.num().small_value());
    auto rs = parse_r_values(cfg.r_text.empty() ? "5,7" : cfg.r_text);
    json rep;
    rep["command"] = "amu-pipeline";
    rep["input"] = link_json(spec);
    rep["homogenized"] = homogenization_json(h);
    rep["growth"] = series_json(growth_series(full, rs, cfg.exact ? Backend::exact : Backend::floating, cfg.volume, opt));
    json certs = json::array();
    bool incomplete = false;
    for (int r : rs) {
        json rec;
        rec["r"] = r;
        if (!admissible_surface(g, f.boundary)) {
            rec["error"] = "inadmissible surface data";
        } else {
            auto s = cfg.exact ? certify_infinite_order(full, ExactRoot(r), g, f.boundary, opt)
                               : certify_infinite_order(full, FloatRoot(r), g, f.boundary, opt);
            rec.update(certificate_json(s, full));
            if (!s.complete()) incomplete = true;
        }
        certs.push_back(rec);
    }
    rep["certificates"] = certs;
    emit(out, rep);
    return incomplete ? kBudgetError : kOk;
}

inline int cmd_family(const RunConfig& cfg, std::ostream& out) {
    auto b = family_Lnm(cfg.n, cfg.m);
    auto spec = link_from_braid(b, "L_" + std::to_string(cfg.n) + "_" + std::to_string(cfg.m));
    json rep;
    rep["command"] = "family";
    rep["n"] = cfg.n;
    rep["m"] = cfg.m;
    rep["link"] = link_json(spec);
    rep["fiber"] = fiber_json(spec.link);
    auto f = fiber_data(spec.link);
    if (cfg.n >= 3) {
        json d;
        d["computed_genus"] = f.genus.to_string();
        d["printed_genus"] = std::to_string(cfg.m + cfg.n - 1);
        d["consistent"] = f.genus == Rational(cfg.m + cfg.n - 1);
        rep["genus_check"] = d;
    }
    auto sites = detect_stallings_twist(state_graph(b));
    rep["twist_sites"] = static_cast<int>(sites.size());
    emit(out, rep);
    return kOk;
}

inline int cmd_torus(const RunConfig& cfg, std::ostream& out) {
    auto b = torus_braid(cfg.p, cfg.q);
    auto spec = link_from_braid(b, "T_" + std::to_string(cfg.p) + "_" + std::to_string(cfg.q));
    json rep;
    rep["command"] = "torus";
    rep["link"] = link_json(spec);
    rep["fiber"] = fiber_json(spec.link);
    emit(out, rep);
    return kOk;
}

inline int cmd_detect_twist(const RunConfig& cfg, std::ostream& out) {
    auto spec = resolve_link(cfg);
    auto sites = detect_stallings_twist(state_graph(spec.link.braid));
    json rep;
    rep["command"] = "detect-twist";
    rep["link"] = link_json(spec);
    json a = json::array();
    for (const auto& s : sites) {
        json j;
        j["circle"] = s.circle;
        j["low_pair"] = {s.low.first, s.low.second};
        j["low_sign"] = s.low.sign;
        j["high_pair"] = {s.high.first, s.high.second};
        j["high_sign"] = s.high.sign;
        j["framing_check"] = {s.framing_check.first, s.framing_check.second};
        a.push_back(j);
    }
    rep["sites"] = a;
    emit(out, rep);
    return kOk;
}

/// Parses argv, runs one subcommand and writes its report to `out`.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"quantum invariants of closed-braid link complements"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    app.add_option("--format", cfg.format, "json | csv | table")->check(CLI::IsMember({"json", "csv", "table"}));
    app.add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--budget-colorings", cfg.budget_colorings, "maximum number of colorings");
    app.add_option("--budget-cable", cfg.budget_cable, "maximum cable width");
    app.add_flag("--no-cache", cfg.no_cache, "do not read or write the result cache");

    auto link_opts = [&](CLI::App* sub) {
        sub->add_option("--braid", cfg.braid_text, "braid word, e.g. \"1 -2 1 -2\"");
        sub->add_option("--link", cfg.link_name, "named link: unknot, hopf, trefoil, 4_1, borromean, T_p_q, L_n_m");
        sub->add_option("--strands", cfg.strands, "strand count override");
    };

    auto* jones = app.add_subcommand("jones", "colored Kauffman bracket");
    link_opts(jones);
    jones->add_option("--color", cfg.color_text, "color per component (comma separated)")->required();
    jones->add_option("--r", cfg.r_text, "odd level(s)")->required();
    jones->add_flag("--exact", cfg.exact);
    jones->add_flag("--normalized", cfg.normalized, "divide by the unknot value");

    auto* tv = app.add_subcommand("tv", "Turaev-Viro invariant of the complement");
    link_opts(tv);
    tv->add_option("--r", cfg.r_text, "odd level(s): 7, 5,7,11 or 5..51")->required();
    tv->add_flag("--exact", cfg.exact);

    auto* growth = app.add_subcommand("growth", "growth series (2 pi / r) log TV_r");
    link_opts(growth);
    growth->add_option("--rmin", cfg.rmin);
    growth->add_option("--rmax", cfg.rmax);
    growth->add_option("--r", cfg.r_text, "explicit odd levels instead of --rmin/--rmax");
    growth->add_option("--fast-path", cfg.fast_path, "auto | habiro | rosso-jones | none");
    growth->add_option("--volume", cfg.volume, "reference volume");
    growth->add_flag("--exact", cfg.exact);
    growth->add_flag("--force-generic", cfg.force_generic, "allow the generic engine beyond r = 31");

    auto* certify = app.add_subcommand("certify", "search for an infinite-order certificate");
    link_opts(certify);
    certify->add_option("--r", cfg.r_text)->required();
    certify->add_option("--genus", cfg.genus);
    certify->add_option("--boundary", cfg.boundary);
    certify->add_flag("--exact", cfg.exact);

    auto* integ = app.add_subcommand("integrality", "exact integrality of TV_r");
    link_opts(integ);
    integ->add_option("--p", cfg.p);
    integ->add_option("--q", cfg.q);
    integ->add_option("--r", cfg.r_text)->required();

    auto* amu = app.add_subcommand("amu-pipeline", "homogenize, fiber data, growth, certificates");
    link_opts(amu);
    amu->add_option("--targets", cfg.targets_text, "linking targets per original component");
    amu->add_option("--r", cfg.r_text, "odd levels (default 5,7)");
    amu->add_option("--volume", cfg.volume);
    amu->add_flag("--exact", cfg.exact);

    auto* homog = app.add_subcommand("homogenize", "add a Stallings component");
    link_opts(homog);
    homog->add_option("--targets", cfg.targets_text, "linking targets per original component");

    auto* family = app.add_subcommand("family", "the L_{n,m} family");
    family->add_option("--n", cfg.n)->required();
    family->add_option("--m", cfg.m)->required();

    auto* torus = app.add_subcommand("torus", "torus link braid");
    torus->add_option("--p", cfg.p)->required();
    torus->add_option("--q", cfg.q)->required();

    auto* twist = app.add_subcommand("detect-twist", "Stallings twist sites in the state graph");
    link_opts(twist);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kParseError;
    }
    cfg.format_given = app.count("--format") > 0;
    for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();

    std::optional<InvariantCache> cache;
    if (!cfg.no_cache) cache.emplace(InvariantCache::default_dir());
    auto opt = make_options(cfg, cache ? &*cache : nullptr);
    try {
        if (cfg.command == "jones") return cmd_jones(cfg, opt, out);
        if (cfg.command == "tv") return cmd_tv(cfg, opt, out);
        if (cfg.command == "growth") return cmd_growth(cfg, opt, out);
        if (cfg.command == "certify") return cmd_certify(cfg, opt, out);
        if (cfg.command == "integrality") return cmd_integrality(cfg, opt, out);
        if (cfg.command == "amu-pipeline") return cmd_amu(cfg, opt, out);
        if (cfg.command == "homogenize") return cmd_homogenize(cfg, out);
        if (cfg.command == "family") return cmd_family(cfg, out);
        if (cfg.command == "torus") return cmd_torus(cfg, out);
        if (cfg.command == "detect-twist") return cmd_detect_twist(cfg, out);
    } catch (const BudgetError& e) {
        err << "budget error: " << e.what() << "\n";
        return kBudgetError;
    } catch (const InadmissibleSurface& e) {
        err << "computation error: " << e.what() << "\n";
        return kComputationError;
    } catch (const LinkError& e) {
        err << "computation error: " << e.what() << "\n";
        return kComputationError;
    } catch (const std::invalid_argument& e) {
        err << "input error: " << e.what() << "\n";
        return kParseError;
    } catch (const std::out_of_range& e) {
        err << "input error: " << e.what() << "\n";
        return kParseError;
    } catch (const std::exception& e) {
        err << "computation error: " << e.what() << "\n";
        return kComputationError;
    }
    err << "error: unknown command\n";
    return kParseError;
}

}  // namespace qtv::cli
