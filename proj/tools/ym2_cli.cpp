// ym2: exact and Monte Carlo Wilson-loop toolkit for 2D lattice gauge
// theory over u1/su2/su3, with verification commands for the coupling
// universality, independence, and small-loop regularity properties of the
// heat-kernel plaquette measure, plus refinement scans of its Hellinger
// affinity against Haar.
//
// Every command writes report.json (schema: command, config echo, version,
// command-specific fields) and, where there is tabular data, one CSV next to
// it. Exit 0 = verifications passed, 1 = a verification failed (report still
// written), 2 = usage or config error.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ym2/confinement.hpp"
#include "ym2/exact.hpp"
#include "ym2/groups.hpp"
#include "ym2/lattice.hpp"
#include "ym2/principles.hpp"
#include "ym2/random.hpp"
#include "ym2/reporting.hpp"
#include "ym2/singularity.hpp"
#include "ym2/stats.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;
using namespace ym2;

GroupId parse_group(const std::string& s) {
    if (s == "u1") return GroupId::Circle;
    if (s == "su2") return GroupId::SU2;
    if (s == "su3") return GroupId::SU3;
    throw std::domain_error("unknown group '" + s + "' (expected u1, su2, su3)");
}

// u1: charge n; su2: highest-weight index k; su3: "p:q"
Irrep parse_irrep(GroupId g, const std::string& tok) {
    try {
        if (g == GroupId::SU3) {
            auto colon = tok.find(':');
            if (colon == std::string::npos)
                throw std::domain_error("su3 irrep labels look like p:q");
            int p = std::stoi(tok.substr(0, colon));
            int q = std::stoi(tok.substr(colon + 1));
            return irrep_data(g, {p, q});
        }
        return irrep_data(g, {std::stoi(tok), 0});
    } catch (const std::invalid_argument&) {
        throw std::domain_error("bad irrep label '" + tok + "'");
    } catch (const std::out_of_range&) {
        throw std::domain_error("bad irrep label '" + tok + "'");
    }
}

std::vector<Irrep> parse_irreps(GroupId g, const std::vector<std::string>& toks) {
    if (toks.empty()) throw std::domain_error("at least one irrep label required");
    std::vector<Irrep> out;
    out.reserve(toks.size());
    for (const auto& t : toks) out.push_back(parse_irrep(g, t));
    return out;
}

RectRegion parse_region(const std::string& s) {
    RectRegion r;
    char tail = 0;
    if (std::sscanf(s.c_str(), "%d,%d,%d,%d%c", &r.x0, &r.y0, &r.w, &r.h, &tail) != 4)
        throw std::domain_error("bad loop '" + s + "' (expected x0,y0,w,h)");
    if (r.w < 1 || r.h < 1 || r.x0 < 0 || r.y0 < 0)
        throw std::domain_error("bad loop '" + s + "': nonpositive extent or negative corner");
    return r;
}

// Commas are CSV separators, so coordinates are joined with underscores.
std::string region_name(const RectRegion& r) {
    return std::to_string(r.w) + "x" + std::to_string(r.h) + "@" + std::to_string(r.x0) + "_" +
           std::to_string(r.y0);
}

void check_region_fits(const RectRegion& r, const Lattice2D& lat) {
    if (r.x0 + r.w > lat.nx || r.y0 + r.h > lat.nt)
        throw std::domain_error("loop " + region_name(r) + " exceeds the lattice");
}

// --out flag wins over the built-in default; YM2_OUT_DIR overrides both.
fs::path resolve_out_dir(const std::string& flag, const std::string& command) {
    if (const char* env = std::getenv("YM2_OUT_DIR"); env && *env) return env;
    if (!flag.empty()) return flag;
    return fs::path("runs") / command;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

// Flat key=value config, applied after the command line so flags win. Values
// go through the same conversion path as command-line arguments, so list
// options take the same comma-separated form.
void apply_flat_config(CLI::App* cmd, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::domain_error("cannot open config file '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        auto eq = s.find('=');
        std::string where = path + ":" + std::to_string(lineno);
        if (eq == std::string::npos)
            throw std::domain_error(where + ": expected key=value");
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        if (key == "config") throw std::domain_error(where + ": config files cannot nest");
        CLI::Option* opt = cmd->get_option_no_throw("--" + key);
        if (opt == nullptr)
            throw std::domain_error(where + ": unknown option '" + key + "'");
        if (opt->count() > 0) continue;
        opt->add_result(value.empty() && opt->get_expected_min() == 0 ? "true" : value);
        opt->run_callback();
    }
}

// Options that must arrive from the command line or the config file.
void require_present(CLI::App* cmd, std::initializer_list<const char*> names) {
    for (const char* n : names)
        if (cmd->count(n) == 0) throw std::domain_error(std::string(n) + " is required");
}

json irrep_names(const std::vector<Irrep>& irreps) {
    json a = json::array();
    for (const auto& r : irreps) a.push_back(r.name());
    return a;
}

// Shared MC chain knobs. --bins is the jackknife bin count; the bin size in
// sweeps is kept/bins, floored at 1.
struct ChainCfg {
    int sweeps = 20000;
    int therm = 1000;
    int bins = 50;
    std::uint64_t seed = 0;
    double step0 = 0.5;
    bool no_tune = false;
};

void add_chain_opts(CLI::App* cmd, ChainCfg& c) {
    cmd->add_option("--sweeps", c.sweeps, "total sweeps including thermalization");
    cmd->add_option("--therm", c.therm, "thermalization sweeps to discard");
    cmd->add_option("--bins", c.bins, "jackknife bin count");
    cmd->add_option("--seed", c.seed, "RNG seed (required)");
    cmd->add_option("--step0", c.step0, "initial Metropolis proposal scale");
    cmd->add_flag("--no-tune", c.no_tune, "freeze the proposal scale at step0");
}

ChainParams chain_params(const ChainCfg& c) {
    ChainParams p;
    p.n_sweeps = c.sweeps;
    p.n_therm = c.therm;
    p.seed = c.seed;
    p.step0 = c.step0;
    p.tune = !c.no_tune;
    return p;
}

json chain_cfg_json(const ChainCfg& c) {
    return json{{"sweeps", c.sweeps}, {"therm", c.therm},   {"bins", c.bins},
                {"seed", c.seed},     {"step0", c.step0},   {"tune", !c.no_tune}};
}

std::size_t bin_size_for(std::size_t kept, int bins) {
    if (bins < 2) throw std::domain_error("need at least 2 jackknife bins");
    return std::max<std::size_t>(1, kept / static_cast<std::size_t>(bins));
}

int finish(const fs::path& dir, json& rep, bool pass) {
    rep["pass"] = pass;
    write_json((dir / "report.json").string(), rep);
    std::printf("%s: %s\n", rep["command"].get<std::string>().c_str(), pass ? "pass" : "FAIL");
    std::printf("report: %s\n", (dir / "report.json").c_str());
    return pass ? 0 : 1;
}

// ---- wilson-exact: closed-form loop expectations, no sampling

struct WilsonExactOpts {
    std::string group = "u1";
    double g2 = 1.0;
    std::vector<std::string> irreps;
    std::vector<double> areas{0.25, 1.0, 4.0};
    std::string out;
};

int run_wilson_exact(const WilsonExactOpts& o) {
    GroupId g = parse_group(o.group);
    auto irreps = parse_irreps(g, o.irreps);
    fs::path dir = resolve_out_dir(o.out, "wilson-exact");

    json values = json::array();
    std::vector<std::string> header{"area"};
    for (const auto& r : irreps) header.push_back(r.name());
    std::vector<std::vector<double>> rows;
    for (double area : o.areas) {
        std::vector<double> row{area};
        for (const auto& r : irreps) {
            double v = wilson_exact(r, {area, 1.0}, {o.g2});
            values.push_back({{"irrep", r.name()}, {"area", area}, {"value", v}});
            row.push_back(v);
        }
        rows.push_back(std::move(row));
    }
    write_csv((dir / "values.csv").string(), header, rows);

    json rep = base_report("wilson-exact", json{{"group", o.group},
                                                {"g2", o.g2},
                                                {"irreps", irrep_names(irreps)},
                                                {"areas", o.areas},
                                                {"out", dir.string()}});
    rep["values"] = values;
    return finish(dir, rep, true);
}

// ---- verify-universality: normalized exact values vs Casimir-ratio powers

struct UniversalityOpts {
    std::string group = "u1";
    double g2 = 1.0;
    std::vector<double> areas{0.25, 1.0, 4.0};
    std::vector<std::string> irreps;
    std::string ref;
    std::string out;
};

json universality_cases_json(const UniversalityReport& rep) {
    json cases = json::array();
    for (const auto& c : rep.cases)
        cases.push_back({{"irrep", c.irrep.name()},
                         {"loop", c.loop_id},
                         {"measured", c.measured},
                         {"expected", c.expected},
                         {"residual", c.residual},
                         {"tolerance", c.tolerance},
                         {"inconclusive", c.inconclusive},
                         {"pass", c.pass}});
    return cases;
}

int run_universality(const UniversalityOpts& o) {
    GroupId g = parse_group(o.group);
    auto irreps = parse_irreps(g, o.irreps);
    if (o.ref.empty()) throw std::domain_error("--ref is required");
    Irrep ref = parse_irrep(g, o.ref);
    fs::path dir = resolve_out_dir(o.out, "verify-universality");

    ExpectationTable table;
    for (double area : o.areas) {
        std::string loop_id = "A=" + format_double(area);
        for (const auto& r : irreps)
            table.entries.push_back({r, loop_id, area, wilson_exact(r, {area, 1.0}, {o.g2}), 0.0});
    }
    UniversalityReport urep = verify_universality(table, ref);

    json rep = base_report("verify-universality", json{{"group", o.group},
                                                       {"g2", o.g2},
                                                       {"areas", o.areas},
                                                       {"irreps", irrep_names(irreps)},
                                                       {"ref", ref.name()},
                                                       {"out", dir.string()}});
    rep["cases"] = universality_cases_json(urep);
    rep["max_residual"] = urep.max_residual;
    rep["vacuous"] = urep.vacuous;
    return finish(dir, rep, urep.pass);
}

// ---- verify-independence: disjoint loops factorize on an open lattice

struct IndependenceOpts {
    std::string group = "u1";
    double g2 = 1.0;
    double a = 1.0;
    int nx = 4, nt = 4;
    std::string irrep = "1";
    std::vector<std::string> loops;
    int replicas = 1;
    bool allow_overlap = false;
    ChainCfg chain;
    std::string out;
};

int run_independence(const IndependenceOpts& o) {
    GroupId g = parse_group(o.group);
    Irrep irrep = parse_irrep(g, o.irrep);
    Lattice2D lat{o.nx, o.nt, o.a};
    if (o.replicas < 1) throw std::domain_error("--replicas must be at least 1");

    std::vector<std::string> loop_strs = o.loops;
    if (loop_strs.empty()) loop_strs = {"0,0,1,1", "2,2,1,1"};
    std::vector<LoopObservable> obs;
    for (const auto& s : loop_strs) {
        RectRegion r = parse_region(s);
        check_region_fits(r, lat);
        obs.push_back({r, irrep, region_name(r) + ":" + irrep.name()});
    }
    if (obs.size() < 2) throw std::domain_error("need at least two loops");
    std::vector<int> all(obs.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);

    ActionSpec action{ActionKind::HeatKernel, o.g2 * o.a, 0.0};
    fs::path dir = resolve_out_dir(o.out, "verify-independence");

    json replicas = json::array();
    std::vector<std::vector<double>> rows;
    std::vector<double> diffs, sigmas;
    for (int rix = 0; rix < o.replicas; ++rix) {
        ChainParams params = chain_params(o.chain);
        params.seed = o.replicas == 1 ? o.chain.seed : derive_seed(o.chain.seed, rix);
        ChainOutput mc = run_chain(lat, g, action, obs, params);
        std::size_t bs = bin_size_for(mc.series[0].size(), o.chain.bins);
        IndependenceReport irep = verify_independence(obs, mc, {all}, bs, o.allow_overlap);
        const IndependenceCase& c = irep.cases.at(0);
        double diff = c.joint - c.product;
        diffs.push_back(diff);
        sigmas.push_back(c.stderr_);
        replicas.push_back({{"seed", params.seed},
                            {"joint", c.joint},
                            {"product", c.product},
                            {"difference", diff},
                            {"stderr", c.stderr_},
                            {"pass", c.pass}});
        rows.push_back({static_cast<double>(rix), c.joint, c.product, diff, c.stderr_});
    }
    write_csv((dir / "replicas.csv").string(),
              {"replica", "joint", "product", "difference", "stderr"}, rows);

    // pool replicas: scatter-based error once there are at least two
    double mean = 0.0;
    for (double d : diffs) mean += d;
    mean /= static_cast<double>(diffs.size());
    double pooled_sigma = sigmas[0];
    if (diffs.size() > 1) {
        double ss = 0.0;
        for (double d : diffs) ss += (d - mean) * (d - mean);
        pooled_sigma = std::sqrt(ss / (static_cast<double>(diffs.size()) *
                                       (static_cast<double>(diffs.size()) - 1.0)));
    }
    bool pass = std::abs(mean) <= 3.0 * pooled_sigma;

    json rep = base_report("verify-independence",
                           json{{"group", o.group},
                                {"g2", o.g2},
                                {"a", o.a},
                                {"nx", o.nx},
                                {"nt", o.nt},
                                {"irrep", irrep.name()},
                                {"loops", loop_strs},
                                {"replicas", o.replicas},
                                {"allow_overlap", o.allow_overlap},
                                {"chain", chain_cfg_json(o.chain)},
                                {"out", dir.string()}});
    rep["replica_results"] = replicas;
    rep["pooled"] = json{{"difference", mean},
                         {"stderr", pooled_sigma},
                         {"tolerance", 3.0 * pooled_sigma}};
    return finish(dir, rep, pass);
}

// ---- verify-regularity: (dim - <W>)/area stays bounded as area -> 0

struct RegularityOpts {
    std::string group = "u1";
    double g2 = 1.0;
    std::string irrep = "1";
    std::vector<double> areas{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
    std::string out;
};

int run_regularity(const RegularityOpts& o) {
    GroupId g = parse_group(o.group);
    Irrep irrep = parse_irrep(g, o.irrep);
    fs::path dir = resolve_out_dir(o.out, "verify-regularity");

    std::vector<RegularityPoint> curve;
    for (double area : o.areas)
        curve.push_back({area, wilson_exact(irrep, {area, 1.0}, {o.g2})});
    RegularityReport rrep = verify_regularity(curve, irrep, SizeGauge::Area);

    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < curve.size(); ++i)
        rows.push_back({curve[i].sigma, curve[i].value, rrep.ratios[i]});
    write_csv((dir / "curve.csv").string(), {"area", "value", "ratio"}, rows);

    json rep = base_report("verify-regularity", json{{"group", o.group},
                                                     {"g2", o.g2},
                                                     {"irrep", irrep.name()},
                                                     {"areas", o.areas},
                                                     {"out", dir.string()}});
    rep["ratios"] = rrep.ratios;
    rep["bound"] = rrep.bound;
    rep["limit_slope"] = rrep.limit_slope;
    return finish(dir, rep, rrep.pass);
}

// ---- compare-actions: the Wilson action fails the universality relation

struct CompareActionsOpts {
    std::string group = "u1";
    double beta_w = 1.0;
    std::vector<std::string> irreps;
    double tolerance = 1e-10;
    std::string out;
};

int run_compare_actions(const CompareActionsOpts& o) {
    GroupId g = parse_group(o.group);
    auto irreps = parse_irreps(g, o.irreps);
    fs::path dir = resolve_out_dir(o.out, "compare-actions");

    std::vector<DefectEntry> entries = wilson_action_defect(g, o.beta_w, irreps);
    json ents = json::array();
    double max_defect = 0.0;
    bool pass = true;
    for (const auto& e : entries) {
        ents.push_back({{"irrep", e.irrep.name()},
                        {"expectation", e.expectation},
                        {"defect", e.defect},
                        {"inconclusive", e.inconclusive}});
        if (!e.inconclusive) {
            max_defect = std::max(max_defect, e.defect);
            if (e.defect > o.tolerance) pass = false;
        }
    }

    json rep = base_report("compare-actions", json{{"group", o.group},
                                                   {"beta_w", o.beta_w},
                                                   {"irreps", irrep_names(irreps)},
                                                   {"tolerance", o.tolerance},
                                                   {"out", dir.string()}});
    rep["entries"] = ents;
    rep["max_defect"] = max_defect;
    rep["verdict"] = pass ? "PASS" : "FAIL";
    return finish(dir, rep, pass);
}

// ---- singularity-scan: N ln H(T/N) along lattice refinements

struct ScanOpts {
    std::string group = "u1";
    double g2 = 1.0;
    double area = 1.0;
    std::vector<int> Ns{4, 16, 64, 256};
    std::string out;
};

int run_scan(const ScanOpts& o) {
    GroupId g = parse_group(o.group);
    fs::path dir = resolve_out_dir(o.out, "singularity-scan");

    SingularityScanReport srep = refinement_scan(g, o.area, o.g2, o.Ns);

    std::vector<std::vector<double>> rows;
    json jrows = json::array();
    for (const auto& r : srep.rows) {
        rows.push_back({static_cast<double>(r.n_plaquettes), r.t, r.affinity, r.log_product,
                        r.evaluated ? 1.0 : 0.0});
        jrows.push_back({{"n_plaquettes", r.n_plaquettes},
                         {"t", r.t},
                         {"affinity", r.affinity},
                         {"log_product", r.log_product},
                         {"evaluated", r.evaluated},
                         {"reason", r.reason}});
    }
    write_csv((dir / "scan.csv").string(),
              {"n_plaquettes", "t", "affinity", "log_product", "evaluated"}, rows);

    json rep = base_report("singularity-scan", json{{"group", o.group},
                                                    {"g2", o.g2},
                                                    {"area", o.area},
                                                    {"Ns", o.Ns},
                                                    {"out", dir.string()}});
    rep["rows"] = jrows;
    rep["total_time"] = srep.total_time;
    rep["diverging"] = srep.diverging;
    rep["rationale"] = srep.rationale;
    return finish(dir, rep, srep.diverging);
}

// ---- potential: V(r) from the time falloff of MC rectangle loops

struct PotentialOpts {
    std::string group = "u1";
    double g2 = 0.5;
    double a = 1.0;
    int nx = 6, nt = 6;
    std::string irrep = "1";
    std::vector<int> rs{1, 2};
    std::vector<int> dts{1, 2, 3, 4};
    ChainCfg chain;
    std::string out;
};

int run_potential(const PotentialOpts& o) {
    GroupId g = parse_group(o.group);
    Irrep irrep = parse_irrep(g, o.irrep);
    Lattice2D lat{o.nx, o.nt, o.a};
    if (o.rs.empty() || o.dts.empty()) throw std::domain_error("need at least one r and dt");

    std::vector<LoopObservable> obs;
    for (int r : o.rs)
        for (int dt : o.dts) {
            RectRegion region{0, 0, r, dt};
            check_region_fits(region, lat);
            obs.push_back({region, irrep, region_name(region) + ":" + irrep.name()});
        }

    ActionSpec action{ActionKind::HeatKernel, o.g2 * o.a, 0.0};
    ChainOutput mc = run_chain(lat, g, action, obs, chain_params(o.chain));
    fs::path dir = resolve_out_dir(o.out, "potential");

    // plaquettes are squares of area a, so lattice extents scale by sqrt(a)
    const double side = std::sqrt(o.a);
    std::size_t bs = bin_size_for(mc.series[0].size(), o.chain.bins);
    std::vector<WilsonDatum> data;
    std::size_t ix = 0;
    for (int r : o.rs)
        for (int dt : o.dts) {
            McEstimate est = jackknife(mc.series[ix++], bs);
            data.push_back({static_cast<double>(r) * side, static_cast<double>(dt) * side,
                            est.mean / irrep.dim, est.stderr_ / irrep.dim});
        }

    json per_r = json::array();
    std::vector<std::vector<double>> rows;
    bool all_plateau = true;
    for (int r : o.rs) {
        PotentialExtraction ext = extract_potential(data, static_cast<double>(r) * side);
        json pts = json::array();
        for (const auto& p : ext.points) {
            pts.push_back({{"dt", p.dt}, {"v", p.v}, {"stderr", p.stderr_}});
            rows.push_back({static_cast<double>(r) * side, p.dt, p.v, p.stderr_});
        }
        per_r.push_back({{"r", static_cast<double>(r) * side},
                         {"points", pts},
                         {"v", ext.v},
                         {"stderr", ext.stderr_},
                         {"plateau", ext.plateau}});
        all_plateau = all_plateau && ext.plateau;
    }
    write_csv((dir / "potential.csv").string(), {"r", "dt", "v", "stderr"}, rows);

    json rep = base_report("potential", json{{"group", o.group},
                                             {"g2", o.g2},
                                             {"a", o.a},
                                             {"nx", o.nx},
                                             {"nt", o.nt},
                                             {"irrep", irrep.name()},
                                             {"rs", o.rs},
                                             {"dts", o.dts},
                                             {"chain", chain_cfg_json(o.chain)},
                                             {"out", dir.string()}});
    rep["acceptance"] = mc.acceptance;
    rep["step"] = mc.step;
    rep["potentials"] = per_r;
    return finish(dir, rep, all_plateau);
}

// ---- casimir-scaling: string-tension ratios vs Casimir ratios from MC fits

struct ScalingOpts {
    std::string group = "su2";
    double g2 = 0.2;
    double a = 1.0;
    int nx = 6, nt = 6;
    std::vector<std::string> irreps{"1", "2"};
    std::string ref;
    std::vector<int> rs{1, 2, 3};
    std::vector<int> dts{1, 2, 3};
    double tolerance = 0.02;
    ChainCfg chain;
    std::string out;
};

const char* law_name(LoopLaw law) {
    switch (law) {
    case LoopLaw::Area: return "area";
    case LoopLaw::Perimeter: return "perimeter";
    case LoopLaw::Ambiguous: return "ambiguous";
    }
    return "ambiguous";
}

int run_scaling(const ScalingOpts& o) {
    GroupId g = parse_group(o.group);
    auto irreps = parse_irreps(g, o.irreps);
    if (irreps.size() < 2) throw std::domain_error("need at least two irreps to compare");
    Irrep ref = o.ref.empty() ? irreps.front() : parse_irrep(g, o.ref);
    Lattice2D lat{o.nx, o.nt, o.a};

    std::vector<LoopObservable> obs;
    for (const auto& irrep : irreps)
        for (int r : o.rs)
            for (int dt : o.dts) {
                RectRegion region{0, 0, r, dt};
                check_region_fits(region, lat);
                obs.push_back({region, irrep, region_name(region) + ":" + irrep.name()});
            }

    ActionSpec action{ActionKind::HeatKernel, o.g2 * o.a, 0.0};
    ChainOutput mc = run_chain(lat, g, action, obs, chain_params(o.chain));
    fs::path dir = resolve_out_dir(o.out, "casimir-scaling");

    std::size_t bs = bin_size_for(mc.series[0].size(), o.chain.bins);
    std::vector<std::pair<Irrep, PotentialFit>> fits;
    json jfits = json::array();
    std::vector<std::vector<double>> fit_rows;
    std::size_t ix = 0;
    for (const auto& irrep : irreps) {
        std::vector<AreaPerimeterDatum> data;
        for (int r : o.rs)
            for (int dt : o.dts) {
                McEstimate est = jackknife(mc.series[ix++], bs);
                data.push_back({static_cast<double>(r) * dt * o.a,
                                2.0 * (r + dt) * std::sqrt(o.a), est.mean / irrep.dim,
                                est.stderr_ / irrep.dim});
            }
        PotentialFit fit = fit_area_perimeter(data);
        fits.emplace_back(irrep, fit);
        jfits.push_back({{"irrep", irrep.name()},
                         {"sigma", fit.sigma},
                         {"sigma_stderr", std::sqrt(fit.cov[0][0])},
                         {"mu", fit.mu},
                         {"c0", fit.c0},
                         {"residual_norm", fit.residual_norm},
                         {"law", law_name(fit.law)}});
        fit_rows.push_back({irrep.casimir, fit.sigma, std::sqrt(fit.cov[0][0]), fit.mu, fit.c0});
    }
    write_csv((dir / "fits.csv").string(), {"casimir", "sigma", "sigma_stderr", "mu", "c0"},
              fit_rows);

    CasimirScalingReport srep = casimir_scaling_report(fits, ref, o.tolerance);
    json jrows = json::array();
    for (const auto& row : srep.rows)
        jrows.push_back({{"irrep", row.irrep.name()},
                         {"measured_ratio", row.measured_ratio},
                         {"predicted_ratio", row.predicted_ratio},
                         {"pass", row.pass}});

    json rep = base_report("casimir-scaling", json{{"group", o.group},
                                                   {"g2", o.g2},
                                                   {"a", o.a},
                                                   {"nx", o.nx},
                                                   {"nt", o.nt},
                                                   {"irreps", irrep_names(irreps)},
                                                   {"ref", ref.name()},
                                                   {"rs", o.rs},
                                                   {"dts", o.dts},
                                                   {"tolerance", o.tolerance},
                                                   {"chain", chain_cfg_json(o.chain)},
                                                   {"out", dir.string()}});
    rep["acceptance"] = mc.acceptance;
    rep["step"] = mc.step;
    rep["fits"] = jfits;
    rep["ratios"] = jrows;
    return finish(dir, rep, srep.pass);
}

// ---- mc-run: plain chain with loop observables, series to CSV

struct McRunOpts {
    std::string group = "u1";
    std::string action = "heat-kernel";
    double g2 = 1.0;
    double beta_w = 1.0;
    double a = 1.0;
    int nx = 4, nt = 4;
    std::vector<std::string> irreps{"1"};
    std::vector<std::string> loops;
    ChainCfg chain;
    std::string out;
};

int run_mc(const McRunOpts& o) {
    GroupId g = parse_group(o.group);
    auto irreps = parse_irreps(g, o.irreps);
    Lattice2D lat{o.nx, o.nt, o.a};

    ActionSpec action;
    if (o.action == "heat-kernel") {
        action = {ActionKind::HeatKernel, o.g2 * o.a, 0.0};
    } else if (o.action == "wilson") {
        action = {ActionKind::Wilson, 0.0, o.beta_w};
    } else {
        throw std::domain_error("unknown action '" + o.action + "' (heat-kernel, wilson)");
    }

    std::vector<std::string> loop_strs = o.loops;
    if (loop_strs.empty()) loop_strs = {"0,0,1,1"};
    std::vector<LoopObservable> obs;
    for (const auto& s : loop_strs) {
        RectRegion r = parse_region(s);
        check_region_fits(r, lat);
        for (const auto& irrep : irreps)
            obs.push_back({r, irrep, region_name(r) + ":" + irrep.name()});
    }

    ChainOutput mc = run_chain(lat, g, action, obs, chain_params(o.chain));
    fs::path dir = resolve_out_dir(o.out, "mc-run");

    std::vector<std::vector<double>> rows(mc.series[0].size(),
                                          std::vector<double>(mc.series.size()));
    for (std::size_t c = 0; c < mc.series.size(); ++c)
        for (std::size_t i = 0; i < mc.series[c].size(); ++i) rows[i][c] = mc.series[c][i];
    write_csv((dir / "series.csv").string(), mc.names, rows);

    std::size_t bs = bin_size_for(mc.series[0].size(), o.chain.bins);
    json ests = json::array();
    for (std::size_t c = 0; c < mc.series.size(); ++c) {
        McEstimate est = jackknife(mc.series[c], bs);
        ests.push_back({{"name", mc.names[c]},
                        {"mean", est.mean},
                        {"stderr", est.stderr_},
                        {"tau", est.tau},
                        {"samples", est.n}});
    }

    json rep = base_report("mc-run", json{{"group", o.group},
                                          {"action", o.action},
                                          {"g2", o.g2},
                                          {"beta_w", o.beta_w},
                                          {"a", o.a},
                                          {"nx", o.nx},
                                          {"nt", o.nt},
                                          {"irreps", irrep_names(irreps)},
                                          {"loops", loop_strs},
                                          {"chain", chain_cfg_json(o.chain)},
                                          {"out", dir.string()}});
    rep["acceptance"] = mc.acceptance;
    rep["step"] = mc.step;
    rep["frozen"] = mc.frozen;
    rep["estimates"] = ests;
    return finish(dir, rep, true);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact and Monte Carlo Wilson-loop toolkit for 2D gauge theory"};
    app.set_version_flag("--version", ym2::kToolVersion);
    app.require_subcommand(1);

    // one config-file path slot per subcommand, applied after parsing
    std::map<CLI::App*, std::string> config_paths;

    WilsonExactOpts we;
    CLI::App* c_we = app.add_subcommand("wilson-exact", "closed-form Wilson loop expectations");
    c_we->add_option("--config", config_paths[c_we], "flat key=value config; command-line flags win");
    c_we->add_option("--group", we.group, "u1, su2, su3");
    c_we->add_option("--g2", we.g2, "coupling g^2");
    c_we->add_option("--irreps", we.irreps, "irrep labels (su3: p:q), required")
        ->delimiter(',');
    c_we->add_option("--areas", we.areas, "loop areas")->delimiter(',');
    c_we->add_option("--out", we.out, "output directory");

    UniversalityOpts uo;
    CLI::App* c_u = app.add_subcommand("verify-universality",
                                       "normalized values as Casimir-ratio powers of a reference");
    c_u->add_option("--config", config_paths[c_u], "flat key=value config; command-line flags win");
    c_u->add_option("--group", uo.group, "u1, su2, su3");
    c_u->add_option("--g2", uo.g2, "coupling g^2");
    c_u->add_option("--areas", uo.areas, "loop areas")->delimiter(',');
    c_u->add_option("--irreps", uo.irreps, "irrep labels (required)")->delimiter(',');
    c_u->add_option("--ref", uo.ref, "reference irrep label (required)");
    c_u->add_option("--out", uo.out, "output directory");

    IndependenceOpts io;
    CLI::App* c_i = app.add_subcommand("verify-independence",
                                       "disjoint-loop factorization on an MC chain");
    c_i->add_option("--config", config_paths[c_i], "flat key=value config; command-line flags win");
    c_i->add_option("--group", io.group, "u1, su2, su3");
    c_i->add_option("--g2", io.g2, "coupling g^2");
    c_i->add_option("--a", io.a, "physical area per plaquette");
    c_i->add_option("--nx", io.nx, "plaquettes in x");
    c_i->add_option("--nt", io.nt, "plaquettes in t");
    c_i->add_option("--irrep", io.irrep, "irrep label");
    c_i->add_option("--loop", io.loops, "loop as x0,y0,w,h (repeatable)");
    c_i->add_option("--replicas", io.replicas, "independent chains to pool");
    c_i->add_flag("--allow-overlap", io.allow_overlap,
                  "permit loops that share plaquettes (counterexample mode)");
    add_chain_opts(c_i, io.chain);
    c_i->add_option("--out", io.out, "output directory");

    RegularityOpts ro;
    CLI::App* c_r = app.add_subcommand("verify-regularity",
                                       "(dim - <W>)/area bounded along shrinking loops");
    c_r->add_option("--config", config_paths[c_r], "flat key=value config; command-line flags win");
    c_r->add_option("--group", ro.group, "u1, su2, su3");
    c_r->add_option("--g2", ro.g2, "coupling g^2");
    c_r->add_option("--irrep", ro.irrep, "irrep label");
    c_r->add_option("--areas", ro.areas, "areas, strictly decreasing")->delimiter(',');
    c_r->add_option("--out", ro.out, "output directory");

    CompareActionsOpts co;
    CLI::App* c_c = app.add_subcommand("compare-actions",
                                       "universality defect of the single-plaquette Wilson action");
    c_c->add_option("--config", config_paths[c_c], "flat key=value config; command-line flags win");
    c_c->add_option("--group", co.group, "u1, su2, su3");
    c_c->add_option("--beta-w", co.beta_w, "Wilson action coupling");
    c_c->add_option("--irreps", co.irreps, "irrep labels (required)")->delimiter(',');
    c_c->add_option("--tolerance", co.tolerance, "defect tolerance");
    c_c->add_option("--out", co.out, "output directory");

    ScanOpts so;
    CLI::App* c_s = app.add_subcommand("singularity-scan",
                                       "Hellinger log-products along lattice refinements");
    c_s->add_option("--config", config_paths[c_s], "flat key=value config; command-line flags win");
    c_s->add_option("--group", so.group, "u1, su2, su3");
    c_s->add_option("--g2", so.g2, "coupling g^2");
    c_s->add_option("--area", so.area, "total physical area");
    c_s->add_option("--Ns", so.Ns, "plaquette counts")->delimiter(',');
    c_s->add_option("--out", so.out, "output directory");

    PotentialOpts po;
    CLI::App* c_p = app.add_subcommand("potential",
                                       "static potential from rectangle-loop time falloff");
    c_p->add_option("--config", config_paths[c_p], "flat key=value config; command-line flags win");
    c_p->add_option("--group", po.group, "u1, su2, su3");
    c_p->add_option("--g2", po.g2, "coupling g^2");
    c_p->add_option("--a", po.a, "physical area per plaquette");
    c_p->add_option("--nx", po.nx, "plaquettes in x");
    c_p->add_option("--nt", po.nt, "plaquettes in t");
    c_p->add_option("--irrep", po.irrep, "irrep label");
    c_p->add_option("--rs", po.rs, "spatial extents")->delimiter(',');
    c_p->add_option("--dts", po.dts, "time extents")->delimiter(',');
    add_chain_opts(c_p, po.chain);
    c_p->add_option("--out", po.out, "output directory");

    ScalingOpts go;
    CLI::App* c_g = app.add_subcommand("casimir-scaling",
                                       "string-tension ratios vs Casimir ratios");
    c_g->add_option("--config", config_paths[c_g], "flat key=value config; command-line flags win");
    c_g->add_option("--group", go.group, "u1, su2, su3");
    c_g->add_option("--g2", go.g2, "coupling g^2");
    c_g->add_option("--a", go.a, "physical area per plaquette");
    c_g->add_option("--nx", go.nx, "plaquettes in x");
    c_g->add_option("--nt", go.nt, "plaquettes in t");
    c_g->add_option("--irreps", go.irreps, "irrep labels")->delimiter(',');
    c_g->add_option("--ref", go.ref, "reference irrep (default: first)");
    c_g->add_option("--rs", go.rs, "spatial extents")->delimiter(',');
    c_g->add_option("--dts", go.dts, "time extents")->delimiter(',');
    c_g->add_option("--tolerance", go.tolerance, "relative ratio tolerance");
    add_chain_opts(c_g, go.chain);
    c_g->add_option("--out", go.out, "output directory");

    McRunOpts mo;
    CLI::App* c_m = app.add_subcommand("mc-run", "Metropolis chain with loop observables");
    c_m->add_option("--config", config_paths[c_m], "flat key=value config; command-line flags win");
    c_m->add_option("--group", mo.group, "u1, su2, su3");
    c_m->add_option("--action", mo.action, "heat-kernel or wilson");
    c_m->add_option("--g2", mo.g2, "coupling g^2 (heat-kernel action)");
    c_m->add_option("--beta-w", mo.beta_w, "Wilson action coupling");
    c_m->add_option("--a", mo.a, "physical area per plaquette");
    c_m->add_option("--nx", mo.nx, "plaquettes in x");
    c_m->add_option("--nt", mo.nt, "plaquettes in t");
    c_m->add_option("--irreps", mo.irreps, "irrep labels")->delimiter(',');
    c_m->add_option("--loop", mo.loops, "loop as x0,y0,w,h (repeatable)");
    add_chain_opts(c_m, mo.chain);
    c_m->add_option("--out", mo.out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        CLI::App* active = app.get_subcommands().front();
        if (auto it = config_paths.find(active); it != config_paths.end() && !it->second.empty())
            apply_flat_config(active, it->second);

        if (c_we->parsed()) {
            require_present(c_we, {"--irreps"});
            return run_wilson_exact(we);
        }
        if (c_u->parsed()) {
            require_present(c_u, {"--irreps", "--ref"});
            return run_universality(uo);
        }
        if (c_i->parsed()) {
            require_present(c_i, {"--seed"});
            return run_independence(io);
        }
        if (c_r->parsed()) return run_regularity(ro);
        if (c_c->parsed()) {
            require_present(c_c, {"--irreps"});
            return run_compare_actions(co);
        }
        if (c_s->parsed()) return run_scan(so);
        if (c_p->parsed()) {
            require_present(c_p, {"--seed"});
            return run_potential(po);
        }
        if (c_g->parsed()) {
            require_present(c_g, {"--seed"});
            return run_scaling(go);
        }
        if (c_m->parsed()) {
            require_present(c_m, {"--seed"});
            return run_mc(mo);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    std::fprintf(stderr, "error: no command\n");
    return 2;
}
