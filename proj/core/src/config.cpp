#include "slipstream/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "slipstream/errors.hpp"

namespace slipstream {

namespace {

const std::vector<std::string> kKnownChecks = {
    "all",        "none",           "max_principle", "lp_budget",
    "gronwall",   "weak_form",      "time_lipschitz", "q_sweep",
    "trace",      "slip_residual",
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double parse_double(const std::string& v, const std::string& key, std::size_t line) {
    if (v == "inf" || v == "infinity") return std::numeric_limits<double>::infinity();
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line) + ": key '" + key +
                         "' expects a number, got '" + v + "'");
    }
}

std::size_t parse_size(const std::string& v, const std::string& key, std::size_t line) {
    const double x = parse_double(v, key, line);
    if (x < 0 || x != std::floor(x))
        throw ParseError("line " + std::to_string(line) + ": key '" + key +
                         "' expects a non-negative integer");
    return static_cast<std::size_t>(x);
}

bool parse_bool(const std::string& v, const std::string& key, std::size_t line) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ParseError("line " + std::to_string(line) + ": key '" + key + "' expects true/false");
}

std::pair<std::size_t, std::size_t> parse_grid(const std::string& v, std::size_t line) {
    const auto x = v.find('x');
    if (x == std::string::npos)
        throw ParseError("line " + std::to_string(line) + ": grid entry '" + v +
                         "' must look like 128x256");
    return {parse_size(trim(v.substr(0, x)), "grid", line),
            parse_size(trim(v.substr(x + 1)), "grid", line)};
}

} // namespace

bool RunConfig::check_enabled(const std::string& name) const {
    const auto& cs = output.checks;
    if (std::find(cs.begin(), cs.end(), "none") != cs.end()) return false;
    if (std::find(cs.begin(), cs.end(), "all") != cs.end()) return true;
    return std::find(cs.begin(), cs.end(), name) != cs.end();
}

RunConfig parse_config(const std::filesystem::path& path, bool strict) {
    std::ifstream is(path);
    if (!is) throw ParseError("cannot open config file " + path.string());
    std::stringstream buf;
    buf << is.rdbuf();
    return parse_config_text(buf.str(), strict);
}

RunConfig parse_config_text(const std::string& text, bool strict) {
    RunConfig cfg;
    std::istringstream is(text);
    std::string line, section;
    std::size_t lineno = 0;
    bool saw_geometry = false;

    auto unknown = [&](const std::string& what) {
        if (strict)
            throw ParseError("line " + std::to_string(lineno) + ": unknown " + what +
                             " in section [" + section + "]");
        std::cerr << "config warning: line " << lineno << ": unknown " << what << "\n";
    };

    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ParseError("line " + std::to_string(lineno) + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "geometry" && section != "scenario" && section != "solver" &&
                section != "sweep" && section != "output")
                throw ParseError("line " + std::to_string(lineno) + ": unknown section [" +
                                 section + "]");
            if (section == "geometry") saw_geometry = true;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (section.empty())
            throw ParseError("line " + std::to_string(lineno) + ": key outside any section");

        if (section == "geometry") {
            if (key == "kind") {
                if (val == "annulus") cfg.geometry.kind = DomainKind::annulus;
                else if (val == "disk") cfg.geometry.kind = DomainKind::disk;
                else throw ParseError("line " + std::to_string(lineno) + ": kind must be annulus or disk");
            } else if (key == "r_inner") cfg.geometry.r_inner = parse_double(val, key, lineno);
            else if (key == "r_outer") cfg.geometry.r_outer = parse_double(val, key, lineno);
            else if (key == "core_radius") cfg.geometry.core_radius = parse_double(val, key, lineno);
            else if (key == "n_r") cfg.geometry.n_r = parse_size(val, key, lineno);
            else if (key == "n_s") cfg.geometry.n_s = parse_size(val, key, lineno);
            else unknown("key '" + key + "'");
        } else if (section == "scenario") {
            if (key == "name") cfg.scenario_name = val;
            else if (key == "table") cfg.scenario_params.table = val;
            else cfg.scenario_params.values[key] = parse_double(val, key, lineno);
        } else if (section == "solver") {
            if (key == "nu") cfg.solver.nu = parse_double(val, key, lineno);
            else if (key == "theta") cfg.solver.theta = parse_double(val, key, lineno);
            else if (key == "R") {
                if (val == "auto") cfg.r_auto = true;
                else { cfg.r_auto = false; cfg.solver.R = parse_double(val, key, lineno); }
            } else if (key == "dt") cfg.solver.dt = parse_double(val, key, lineno);
            else if (key == "T") cfg.solver.T = parse_double(val, key, lineno);
            else if (key == "cfl") cfg.solver.cfl = parse_double(val, key, lineno);
            else if (key == "p") cfg.solver.p = parse_double(val, key, lineno);
            else if (key == "advection") {
                if (val == "upwind") cfg.solver.advection = AdvectionScheme::upwind;
                else if (val == "minmod") cfg.solver.advection = AdvectionScheme::minmod;
                else throw ParseError("line " + std::to_string(lineno) + ": advection must be upwind or minmod");
            } else if (key == "mode") {
                if (val == "march") cfg.mode = RunMode::march;
                else if (val == "picard") cfg.mode = RunMode::picard;
                else throw ParseError("line " + std::to_string(lineno) + ": mode must be march or picard");
            } else if (key == "picard_max_iters") cfg.picard_max_iters = parse_size(val, key, lineno);
            else if (key == "picard_tol") cfg.picard_tol = parse_double(val, key, lineno);
            else if (key == "stream_solver") {
                if (val == "direct") cfg.stream_method = StreamSolver::Method::direct;
                else if (val == "cg") cfg.stream_method = StreamSolver::Method::cg;
                else throw ParseError("line " + std::to_string(lineno) + ": stream_solver must be direct or cg");
            } else if (key == "snapshot_every") cfg.solver.snapshot_every = parse_size(val, key, lineno);
            else if (key == "delta") cfg.solver.delta = parse_double(val, key, lineno);
            else if (key == "seed") cfg.seed = static_cast<unsigned>(parse_size(val, key, lineno));
            else unknown("key '" + key + "'");
        } else if (section == "sweep") {
            if (key == "nu_list")
                for (const auto& v : split_list(val))
                    cfg.sweep.nu_list.push_back(parse_double(v, key, lineno));
            else if (key == "theta_list")
                for (const auto& v : split_list(val))
                    cfg.sweep.theta_list.push_back(parse_double(v, key, lineno));
            else if (key == "grid_list")
                for (const auto& v : split_list(val)) cfg.sweep.grid_list.push_back(parse_grid(v, lineno));
            else unknown("key '" + key + "'");
        } else if (section == "output") {
            if (key == "dir") cfg.output.dir = val;
            else if (key == "checks") cfg.output.checks = split_list(val);
            else if (key == "write_snapshots") cfg.output.write_snapshots = parse_bool(val, key, lineno);
            else unknown("key '" + key + "'");
        }
    }
    if (!saw_geometry) throw ParseError("missing [geometry] section");
    validate_config(cfg);
    return cfg;
}

void validate_config(RunConfig& cfg) {
    std::vector<std::string> bad;
    const auto& g = cfg.geometry;

    if (g.kind == DomainKind::annulus) {
        if (!(g.r_inner > 0.0 && g.r_inner < g.r_outer))
            bad.push_back("geometry: need 0 < r_inner < r_outer");
    } else {
        if (!(g.core_radius > 0.0 && g.core_radius < g.r_outer))
            bad.push_back("geometry: disk core_radius must lie in (0, r_outer)");
    }
    if (g.n_r < 2 || g.n_r > 512) bad.push_back("geometry: n_r must be in [2, 512]");
    if (g.n_s < 4 || g.n_s > 1024) bad.push_back("geometry: n_s must be in [4, 1024]");

    if (!find_scenario(cfg.scenario_name))
        bad.push_back("scenario: '" + cfg.scenario_name + "' is not in the registry");
    if (cfg.scenario_name == "custom_table" && cfg.scenario_params.table.empty())
        bad.push_back("scenario: custom_table requires a table path");

    auto& s = cfg.solver;
    if (!(s.T > 0.0)) bad.push_back("solver: T must be positive");
    if (!(s.nu >= 0.0 && s.nu < 1.0)) bad.push_back("solver: nu must lie in [0, 1)");
    const double r_in = g.kind == DomainKind::annulus ? g.r_inner : g.core_radius;
    const double sigma0 = 0.5 * (g.r_outer - r_in);
    const double theta_max = std::min(sigma0, s.T / 4.0);
    if (s.theta != 0.0 && !(s.theta > 0.0 && s.theta < theta_max))
        bad.push_back("solver: theta = " + std::to_string(s.theta) +
                      " must be 0 or inside (0, min(sigma0, T/4)) = (0, " +
                      std::to_string(theta_max) + ")");
    if (s.dt < 0.0) bad.push_back("solver: dt must be >= 0");
    if (!(s.cfl > 0.0 && s.cfl <= 1.0)) bad.push_back("solver: cfl must lie in (0, 1]");
    if (!(s.p > 2.0)) bad.push_back("solver: p must lie in (2, inf]");
    if (cfg.mode == RunMode::picard) {
        if (!(s.nu > 0.0)) bad.push_back("solver: picard mode requires nu > 0");
        if (!(s.theta > 0.0)) bad.push_back("solver: picard mode requires theta > 0");
    }
    if (!cfg.r_auto && !(s.R > 0.0)) bad.push_back("solver: R must be positive or auto");
    if (cfg.r_auto)
        s.R = s.theta > 0.0 ? 1.0 / s.theta : std::numeric_limits<double>::infinity();
    if (s.snapshot_every == 0) s.snapshot_every = 1;

    for (const auto& nu : cfg.sweep.nu_list)
        if (!(nu >= 0.0 && nu < 1.0)) bad.push_back("sweep: nu_list entries must lie in [0, 1)");
    for (const auto& th : cfg.sweep.theta_list)
        if (!(th > 0.0 && th < theta_max)) bad.push_back("sweep: theta_list entries must lie in (0, min(sigma0, T/4))");
    for (const auto& gr : cfg.sweep.grid_list)
        if (gr.first < 2 || gr.first > 512 || gr.second < 4 || gr.second > 1024)
            bad.push_back("sweep: grid_list entries must be within 512x1024");

    if (cfg.output.dir.empty()) bad.push_back("output: dir must not be empty");
    for (const auto& c : cfg.output.checks)
        if (std::find(kKnownChecks.begin(), kKnownChecks.end(), c) == kKnownChecks.end())
            bad.push_back("output: unknown check '" + c + "'");

    cfg.scenario_params.seed = cfg.seed;

    if (!bad.empty()) {
        std::string msg;
        for (const auto& b : bad) msg += (msg.empty() ? "" : "; ") + b;
        throw ValidationError(msg);
    }
}

std::string resolved_config_text(const RunConfig& cfg) {
    std::ostringstream os;
    os.precision(17);
    os << "[geometry]\n";
    os << "kind = " << (cfg.geometry.kind == DomainKind::annulus ? "annulus" : "disk") << "\n";
    os << "r_inner = " << cfg.geometry.r_inner << "\n";
    os << "r_outer = " << cfg.geometry.r_outer << "\n";
    if (cfg.geometry.kind == DomainKind::disk)
        os << "core_radius = " << cfg.geometry.core_radius << "\n";
    os << "n_r = " << cfg.geometry.n_r << "\n";
    os << "n_s = " << cfg.geometry.n_s << "\n";
    os << "\n[scenario]\n";
    os << "name = " << cfg.scenario_name << "\n";
    if (!cfg.scenario_params.table.empty()) os << "table = " << cfg.scenario_params.table.string() << "\n";
    for (const auto& [k, v] : cfg.scenario_params.values) os << k << " = " << v << "\n";
    os << "\n[solver]\n";
    os << "nu = " << cfg.solver.nu << "\n";
    os << "theta = " << cfg.solver.theta << "\n";
    os << "R = ";
    if (cfg.r_auto) os << "auto";
    else if (std::isinf(cfg.solver.R)) os << "inf";
    else os << cfg.solver.R;
    os << "\n";
    os << "dt = " << cfg.solver.dt << "\n";
    os << "T = " << cfg.solver.T << "\n";
    os << "cfl = " << cfg.solver.cfl << "\n";
    os << "p = ";
    if (std::isinf(cfg.solver.p)) os << "inf";
    else os << cfg.solver.p;
    os << "\n";
    os << "advection = " << (cfg.solver.advection == AdvectionScheme::upwind ? "upwind" : "minmod")
       << "\n";
    os << "mode = " << (cfg.mode == RunMode::march ? "march" : "picard") << "\n";
    os << "picard_max_iters = " << cfg.picard_max_iters << "\n";
    os << "picard_tol = " << cfg.picard_tol << "\n";
    os << "stream_solver = "
       << (cfg.stream_method == StreamSolver::Method::direct ? "direct" : "cg") << "\n";
    os << "snapshot_every = " << cfg.solver.snapshot_every << "\n";
    os << "delta = " << cfg.solver.delta << "\n";
    os << "seed = " << cfg.seed << "\n";
    os << "\n[sweep]\n";
    auto write_list = [&os](const char* key, const std::vector<double>& v) {
        if (v.empty()) return;
        os << key << " = ";
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
        os << "\n";
    };
    write_list("nu_list", cfg.sweep.nu_list);
    write_list("theta_list", cfg.sweep.theta_list);
    if (!cfg.sweep.grid_list.empty()) {
        os << "grid_list = ";
        for (std::size_t i = 0; i < cfg.sweep.grid_list.size(); ++i)
            os << (i ? ", " : "") << cfg.sweep.grid_list[i].first << "x"
               << cfg.sweep.grid_list[i].second;
        os << "\n";
    }
    os << "\n[output]\n";
    os << "dir = " << cfg.output.dir.string() << "\n";
    os << "checks = ";
    for (std::size_t i = 0; i < cfg.output.checks.size(); ++i)
        os << (i ? ", " : "") << cfg.output.checks[i];
    os << "\n";
    os << "write_snapshots = " << (cfg.output.write_snapshots ? "true" : "false") << "\n";
    return os.str();
}

} // namespace slipstream
