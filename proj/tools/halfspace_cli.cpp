// halfspace: batch CLI over the exact combinatorial core and the spectral
// half-space solver. JSON on stdout for machine consumption, CSV opt-in for
// the sequence tables. Exit codes: 0 ok, 1 failed verification, 2 usage.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "halfspace/acceptance.hpp"
#include "halfspace/hankel.hpp"
#include "halfspace/lgv.hpp"
#include "halfspace/potential.hpp"
#include "halfspace/sequences.hpp"
#include "halfspace/solver.hpp"
#include "halfspace/symbol.hpp"

using namespace halfspace;

namespace {

struct RunConfig {
    std::size_t grid_n = 1024;
    double grid_extent = 16.0;
    int solver_m = 2;
    int solver_d = 2;
    unsigned long seed = 12345;
    int threads = 1;

    void load_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw CLI::ValidationError("config", "cannot open " + path);
        std::string line;
        while (std::getline(in, line)) {
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            auto trim = [](std::string s) {
                s.erase(0, s.find_first_not_of(" \t"));
                auto last = s.find_last_not_of(" \t\r");
                s.erase(last == std::string::npos ? 0 : last + 1);
                return s;
            };
            std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
            if (key == "grid.n")
                grid_n = std::stoul(val);
            else if (key == "grid.extent")
                grid_extent = std::stod(val);
            else if (key == "solver.m")
                solver_m = std::stoi(val);
            else if (key == "solver.d")
                solver_d = std::stoi(val);
            else if (key == "seed")
                seed = std::stoul(val);
        }
    }

    void finalize() {
        if (const char* env = std::getenv("HALFSPACE_THREADS")) {
            int cap = std::atoi(env);
            if (cap >= 1) threads = std::min(threads, cap);
        }
        if (solver_m * 2 <= solver_d)
            throw CLI::ValidationError("config", "solver requires m > d/2");
        if (grid_n == 0 || (grid_n & (grid_n - 1)) != 0)
            throw CLI::ValidationError("config", "grid.n must be a power of two");
    }
};

std::string sidecar_path(const std::string& data_path) {
    auto dot = data_path.rfind(".f64");
    if (dot != std::string::npos && dot + 4 == data_path.size())
        return data_path.substr(0, dot) + ".json";
    return data_path + ".json";
}

GridField load_field(const std::string& path) {
    return GridField::read(path, sidecar_path(path));
}

void store_field(const GridField& f, const std::string& path) {
    f.write(path, sidecar_path(path));
}

GridField random_band_limited(const RunConfig& cfg, int dim, unsigned long salt) {
    std::mt19937_64 rng(cfg.seed + salt);
    std::uniform_real_distribution<double> amp(-1.0, 1.0), phase(0.0, 2.0 * M_PI);
    GridField f(dim, cfg.grid_extent, cfg.grid_n);
    const std::size_t klo = std::max<std::size_t>(1, cfg.grid_n / 32);
    const std::size_t khi = std::max<std::size_t>(klo + 1, cfg.grid_n / 8);
    if (dim == 1) {
        for (std::size_t k = klo; k <= khi; ++k) {
            double a = amp(rng), p = phase(rng);
            for (std::size_t i = 0; i < f.n(); ++i)
                f.at(i) += a * std::cos(M_PI * k * f.coord(i) / f.extent() + p);
        }
        return f;
    }
    for (std::size_t kx = 0; kx <= khi; ++kx)
        for (std::size_t ky = (kx >= klo ? std::size_t{1} : klo); ky <= khi; ++ky) {
            double a = amp(rng), p = phase(rng);
            for (std::size_t iy = 0; iy < f.n(); ++iy)
                for (std::size_t ix = 0; ix < f.n(); ++ix)
                    f.at(ix, iy) += a * std::cos(M_PI * (kx * f.coord(ix) + ky * f.coord(iy)) /
                                                     f.extent() +
                                                 p);
        }
    return f;
}

nlohmann::json matrix_json(const ExactMatrix& m) {
    return nlohmann::json::parse(m.to_json());
}

int cmd_tables(const std::string& kind_name, long n, bool csv) {
    SequenceKind kind;
    if (kind_name == "middle-binomial")
        kind = SequenceKind::MiddleBinomial;
    else if (kind_name == "catalan")
        kind = SequenceKind::Catalan;
    else if (kind_name == "semi-catalan")
        kind = SequenceKind::SemiCatalan;
    else if (kind_name == "shifted-semi-catalan")
        kind = SequenceKind::ShiftedSemiCatalan;
    else if (kind_name == "semi-binomial")
        kind = SequenceKind::SemiBinomial;
    else if (kind_name == "shifted-semi-binomial")
        kind = SequenceKind::ShiftedSemiBinomial;
    else {
        std::cerr << "unknown table kind '" << kind_name << "'\n";
        return 2;
    }
    const bool triangle = kind != SequenceKind::MiddleBinomial && kind != SequenceKind::Catalan;
    if (csv) {
        for (long r = 0; r <= n; ++r) {
            if (!triangle) {
                std::cout << sequence_value(kind, r, 0).to_string()
                          << (r == n ? "\n" : ",");
                continue;
            }
            for (long k = 0; k <= r; ++k)
                std::cout << sequence_value(kind, r, k).to_string() << (k == r ? "\n" : ",");
        }
        return 0;
    }
    nlohmann::json j;
    j["kind"] = to_string(kind);
    auto rows = nlohmann::json::array();
    for (long r = 0; r <= n; ++r) {
        auto row = nlohmann::json::array();
        for (long k = 0; k <= (triangle ? r : 0); ++k)
            row.push_back(sequence_value(kind, r, k).to_string());
        rows.push_back(row);
    }
    j["rows"] = rows;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_hankel(const std::string& kind_name, std::size_t n, bool inverse, bool factor,
               bool det) {
    HankelKind kind = hankel_kind_from_string(kind_name);
    nlohmann::json j;
    j["kind"] = to_string(kind);
    j["n"] = n;
    j["matrix"] = matrix_json(hankel_build(kind, n));
    if (inverse) {
        j["inverse"] = matrix_json(hankel_closed_inverse(kind, n));
        j["factor_inverse"] = matrix_json(hankel_closed_inverse_factor(kind, n));
    }
    if (factor) {
        FactorBundle f = hankel_factor(kind, n);
        j["L"] = matrix_json(f.L);
        j["D"] = matrix_json(f.D);
    }
    if (det) {
        auto [claimed, computed] = hankel_determinant_identity(kind, n);
        j["det"] = {{"claimed", claimed.to_string()}, {"computed", computed.to_string()}};
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

WeightedDag lgv_input(const std::string& preset, const std::string& graph_path,
                      std::size_t n) {
    if (!graph_path.empty()) {
        std::ifstream in(graph_path);
        if (!in) throw std::runtime_error("cannot open graph file " + graph_path);
        std::stringstream ss;
        ss << in.rdbuf();
        return WeightedDag::from_json(ss.str());
    }
    if (preset == "two-taxis") return two_taxis_preset();
    if (preset == "catalan-minor") return catalan_minor_preset();
    if (preset == "binomial") return grid_binomial(n, false);
    if (preset == "binomial-shifted") return grid_binomial(n, true);
    if (preset == "catalan") return grid_catalan(n, false);
    if (preset == "catalan-shifted") return grid_catalan(n, true);
    throw std::runtime_error("unknown preset '" + preset + "'");
}

int cmd_lgv(const std::string& action, const std::string& preset,
            const std::string& graph_path, std::size_t n, const std::string& matrix_path) {
    nlohmann::json j;
    if (action == "network") {
        std::ifstream in(matrix_path);
        if (!in) throw std::runtime_error("cannot open matrix file " + matrix_path);
        std::stringstream ss;
        ss << in.rdbuf();
        PlanarNetwork net = planar_network_weights(ExactMatrix::from_json(ss.str()));
        j["graph"] = nlohmann::json::parse(net.dag.to_json());
        auto rat_list = [](const std::vector<Rational>& v) {
            auto a = nlohmann::json::array();
            for (const auto& r : v) a.push_back(r.to_string());
            return a;
        };
        j["central"] = rat_list(net.central);
        auto groups = nlohmann::json::array();
        for (std::size_t g = 0; g < net.left.size(); ++g)
            groups.push_back({{"left", rat_list(net.left[g])},
                              {"right", rat_list(net.right[g])}});
        j["staircases"] = groups;
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    WeightedDag g = lgv_input(preset, graph_path, n);
    if (action == "count") {
        j["count"] = count_paths(g, g.origins().at(0), g.destinations().at(0)).to_string();
    } else if (action == "matrix") {
        j["matrix"] = matrix_json(path_matrix(g));
    } else if (action == "enumerate" || action == "verify") {
        LgvResult r = lgv_check(g);
        j["det"] = r.determinant.to_string();
        j["enumerated"] = r.enumerated.to_string();
        j["non_permutable"] = r.non_permutable;
        if (action == "verify" && r.determinant != r.enumerated) {
            std::cout << j.dump(2) << "\n";
            return 1;
        }
    } else {
        std::cerr << "unknown lgv action '" << action << "'\n";
        return 2;
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_symbol(int m, bool det, bool inverse, bool tilde, const std::vector<int>& profile_kj,
               bool alt_bc, const std::string& product_r) {
    nlohmann::json j;
    j["m"] = m;
    SymbolTable t = build_M(m);
    j["M"] = matrix_json(t.M);
    if (det) {
        DetM dm = det_M(m);
        j["det"] = {{"computed", dm.computed.to_string()},
                    {"claimed_paper", dm.claimed_paper.to_string()},
                    {"derived", dm.derived.to_string()}};
    }
    if (inverse) j["inverse"] = matrix_json(t.Minv);
    if (tilde) {
        j["tilde"] = matrix_json(t.tildeM);
        j["D1"] = matrix_json(t.D1);
        j["D2"] = matrix_json(t.D2);
        j["perm"] = t.perm;
    }
    if (profile_kj.size() == 2) {
        ExpPolyProfile p = poisson_profile(profile_kj[0], profile_kj[1], m);
        auto coeffs = nlohmann::json::array();
        for (const auto& c : p.coeffs) coeffs.push_back(c.to_string());
        j["profile"] = {{"k", profile_kj[0]},
                        {"j", profile_kj[1]},
                        {"prefactor_times_pi", p.prefactor.to_string()},
                        {"coeffs", coeffs}};
    }
    if (alt_bc) {
        AltBcSymbol s = alt_bc_symbol(m);
        j["alt_bc"] = {{"H1_over_pi", matrix_json(s.H1)},
                       {"H2_over_pi", matrix_json(s.H2)}};
    }
    if (!product_r.empty()) {
        std::vector<double> r;
        std::stringstream ss(product_r);
        std::string tok;
        while (std::getline(ss, tok, ',')) r.push_back(std::stod(tok));
        auto vals = nlohmann::json::array();
        for (int jj = 0; jj < m; ++jj) {
            auto row = nlohmann::json::array();
            for (int k = 0; k < m; ++k)
                row.push_back(product_operator_symbol(jj, k, 1.0, r));
            vals.push_back(row);
        }
        j["product_symbol_at_t1"] = vals;
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_solve(const RunConfig& cfg, const std::vector<std::string>& inputs,
              const std::string& outdir) {
    DirichletData h;
    for (const auto& p : inputs) h.h.push_back(load_field(p));
    DensityData g = solve_g(h, cfg.solver_d);
    nlohmann::json j;
    j["m"] = g.order();
    j["d"] = cfg.solver_d;
    auto outs = nlohmann::json::array();
    for (int i = 0; i < g.order(); ++i) {
        std::string path = outdir + "/g" + std::to_string(i) + ".f64";
        store_field(g.g[i], path);
        outs.push_back(path);
    }
    j["outputs"] = outs;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_roundtrip(const RunConfig& cfg) {
    const int m = cfg.solver_m, d = cfg.solver_d;
    DensityData g;
    for (int jj = 0; jj < m; ++jj)
        g.g.push_back(random_band_limited(cfg, d - 1, 1000 + 100 * jj));
    DirichletData h = forward_h(g, d);
    DensityData g2 = solve_g(h, d);
    nlohmann::json j;
    j["m"] = m;
    j["d"] = d;
    j["n"] = cfg.grid_n;
    j["seed"] = cfg.seed;
    auto errs = nlohmann::json::array();
    double worst = 0.0;
    for (int jj = 0; jj < m; ++jj) {
        GridField diff = g2.g[jj];
        diff -= g.g[jj];
        double rel = diff.l2_norm() / g.g[jj].l2_norm();
        errs.push_back(rel);
        worst = std::max(worst, rel);
    }
    j["relative_l2_errors"] = errs;
    j["passed"] = worst <= 1e-8;
    std::cout << j.dump(2) << "\n";
    return worst <= 1e-8 ? 0 : 1;
}

int cmd_extend(const RunConfig& cfg, const std::vector<std::string>& inputs, double xd,
               int trace, const std::string& output) {
    DensityData g;
    for (const auto& p : inputs) g.g.push_back(load_field(p));
    GridField u = extend(g, xd, cfg.solver_d, trace);
    store_field(u, output);
    nlohmann::json j;
    j["xd"] = xd;
    j["trace"] = trace;
    j["output"] = output;
    j["max_abs"] = u.max_abs();
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_potential(const RunConfig& cfg, const std::string& action, int m, int d,
                  const std::vector<std::string>& inputs, double radius, int degree) {
    nlohmann::json j;
    if (action == "calibrate") {
        Calibration c = calibrate(m, d);
        j["m"] = m;
        j["d"] = d;
        j["C"] = c.C;
        j["error_estimate"] = c.error_estimate;
    } else if (action == "kernel") {
        auto ker = nlohmann::json::array();
        Calibration c = calibrate(m, d);
        for (int jj = 0; jj < 2 * m - 1 && jj < m; ++jj)
            ker.push_back(kernel_k(jj, m, d, {0.3, 0.7, 0.9}, {0.0, 0.0, 0.0}, c.C));
        j["kernel_at_probe"] = ker;
    } else if (action == "quad") {
        DensityData g;
        for (const auto& p : inputs) g.g.push_back(load_field(p));
        Calibration c = calibrate(m, d);
        QuadratureValue q = quadrature_Tg(g, {0.25, 0.5, 0.5}, m, d, c.C);
        j["value"] = q.value;
        j["error_estimate"] = q.error_estimate;
    } else if (action == "truncate") {
        if (inputs.empty()) throw std::runtime_error("truncate needs --input");
        GridField f = load_field(inputs[0]);
        TruncationResult t = moment_truncation(f, radius, degree);
        j["R"] = radius;
        j["L"] = degree;
        j["moment_residuals"] = t.moment_residuals;
        store_field(t.compact, inputs[0] + ".compact.f64");
        store_field(t.remainder, inputs[0] + ".remainder.f64");
    } else if (action == "riesz-decay") {
        GridField f = inputs.empty()
                          ? random_band_limited(cfg, 1, 77)
                          : load_field(inputs[0]);
        DecayFit fit = riesz_decay_study(f, 0, 8.0, f.extent() / 4.0);
        j["slope"] = fit.slope;
        j["annuli"] = fit.annuli;
        j["sup_norms"] = fit.sup_norms;
    } else {
        std::cerr << "unknown potential action '" << action << "'\n";
        return 2;
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_verify_all(unsigned long seed, const std::string& json_out) {
    Scorecard card = run_acceptance(static_cast<unsigned>(seed));
    for (const auto& r : card.results)
        std::cout << (r.passed ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.name << " — "
                  << r.detail << "\n";
    if (!json_out.empty()) {
        std::ofstream out(json_out);
        out << card.to_json() << "\n";
    } else {
        std::cout << card.to_json() << "\n";
    }
    return card.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"half-space polyharmonic layer-potential toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand name

    RunConfig cfg;
    std::string config_path;
    unsigned long flag_seed = 0;
    std::size_t flag_n = 0;
    double flag_extent = 0;
    int flag_m = 0, flag_d = 0;
    app.add_option("--config", config_path, "key = value config file");
    auto* o_seed = app.add_option("--seed", flag_seed, "PRNG seed for randomized commands");
    auto* o_n = app.add_option("--n", flag_n, "grid points per axis (power of two)");
    auto* o_extent = app.add_option("--extent", flag_extent, "grid half-width");
    auto* o_m = app.add_option("--m", flag_m, "polyharmonic order");
    auto* o_d = app.add_option("--d", flag_d, "space dimension (2 or 3)");

    auto* tables = app.add_subcommand("tables", "dump a combinatorial triangle");
    std::string table_kind = "semi-catalan";
    long table_n = 8;
    bool table_csv = false;
    tables->add_option("--kind", table_kind,
                       "middle-binomial|catalan|semi-catalan|shifted-semi-catalan|"
                       "semi-binomial|shifted-semi-binomial");
    tables->add_option("--rows,--n", table_n, "rows to emit");
    tables->add_flag("--csv", table_csv, "CSV instead of JSON");

    auto* hankel = app.add_subcommand("hankel", "Hankel family matrices");
    std::string hankel_kind = "C";
    std::size_t hankel_n = 3;
    bool hankel_inv = false, hankel_fac = false, hankel_det = false;
    hankel->add_option("--kind", hankel_kind, "B | B' | C | C'");
    hankel->add_option("--order,--n", hankel_n, "matrix size n");
    hankel->add_flag("--inverse", hankel_inv, "closed-form inverse and factor inverse");
    hankel->add_flag("--factor", hankel_fac, "triangular factor bundle");
    hankel->add_flag("--det", hankel_det, "determinant identity");

    auto* lgv = app.add_subcommand("lgv", "path counting and planar networks");
    std::string lgv_action = "verify", lgv_preset = "two-taxis", lgv_graph, lgv_matrix;
    std::size_t lgv_n = 3;
    lgv->add_option("action", lgv_action, "count|matrix|enumerate|verify|network");
    lgv->add_option("--preset", lgv_preset,
                    "two-taxis|binomial|binomial-shifted|catalan|catalan-shifted|catalan-minor");
    lgv->add_option("--graph", lgv_graph, "graph JSON file");
    lgv->add_option("--order,--n", lgv_n, "grid size for family presets");
    lgv->add_option("--matrix", lgv_matrix, "matrix JSON file (network action)");

    auto* symbol = app.add_subcommand("symbol", "boundary-operator symbol matrix");
    bool sym_det = false, sym_inv = false, sym_tilde = false, sym_alt = false;
    std::vector<int> sym_profile;
    std::string sym_product;
    symbol->add_flag("--det", sym_det, "determinant, claimed vs computed");
    symbol->add_flag("--inverse", sym_inv, "exact inverse");
    symbol->add_flag("--tilde", sym_tilde, "block form and diagonal factors");
    symbol->add_option("--profile", sym_profile, "trace k and layer j")->expected(2);
    symbol->add_flag("--alt-bc", sym_alt, "alternative boundary-condition Hankel blocks");
    symbol->add_option("--product", sym_product, "comma-separated r values");

    auto* solve = app.add_subcommand("solve", "Dirichlet data to densities");
    std::vector<std::string> solve_inputs;
    std::string solve_outdir = ".";
    solve->add_option("--input", solve_inputs, "h_k field files (.f64 with .json sidecars)")
        ->required()
        ->delimiter(',');
    solve->add_option("--output", solve_outdir, "output directory");

    auto* roundtrip = app.add_subcommand("roundtrip", "forward then inverse on random data");

    auto* extend_cmd = app.add_subcommand("extend", "evaluate the extension on a slice");
    std::vector<std::string> extend_inputs;
    double extend_xd = 1.0;
    int extend_trace = 0;
    std::string extend_out = "slice.f64";
    extend_cmd->add_option("--input", extend_inputs, "g_j field files")
        ->required()
        ->delimiter(',');
    extend_cmd->add_option("--xd", extend_xd, "height above the boundary");
    extend_cmd->add_option("--trace", extend_trace, "trace order (0 = solution)");
    extend_cmd->add_option("--output", extend_out, "output field file");

    auto* potential = app.add_subcommand("potential", "direct-space tools");
    std::string pot_action = "calibrate";
    std::vector<std::string> pot_inputs;
    double pot_radius = 8.0;
    int pot_degree = 1;
    potential->add_option("action", pot_action, "calibrate|kernel|quad|truncate|riesz-decay");
    potential->add_option("--input", pot_inputs, "field files");
    potential->add_option("--radius", pot_radius, "truncation radius");
    potential->add_option("--degree", pot_degree, "moment degree L");

    auto* verify = app.add_subcommand("verify-all", "run the acceptance suite");
    std::string verify_json;
    verify->add_option("--json", verify_json, "write the scorecard to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage errors exit 2; --help exits 0
    }

    try {
        if (!config_path.empty()) cfg.load_file(config_path);
        // flags override the config file
        if (o_seed->count()) cfg.seed = flag_seed;
        if (o_n->count()) cfg.grid_n = flag_n;
        if (o_extent->count()) cfg.grid_extent = flag_extent;
        if (o_m->count()) cfg.solver_m = flag_m;
        if (o_d->count()) cfg.solver_d = flag_d;
        cfg.finalize();
        if (tables->parsed()) return cmd_tables(table_kind, table_n, table_csv);
        if (hankel->parsed())
            return cmd_hankel(hankel_kind, hankel_n, hankel_inv, hankel_fac, hankel_det);
        if (lgv->parsed()) return cmd_lgv(lgv_action, lgv_preset, lgv_graph, lgv_n, lgv_matrix);
        if (symbol->parsed())
            return cmd_symbol(cfg.solver_m, sym_det, sym_inv, sym_tilde, sym_profile, sym_alt,
                              sym_product);
        if (solve->parsed()) return cmd_solve(cfg, solve_inputs, solve_outdir);
        if (roundtrip->parsed()) return cmd_roundtrip(cfg);
        if (extend_cmd->parsed())
            return cmd_extend(cfg, extend_inputs, extend_xd, extend_trace, extend_out);
        if (potential->parsed())
            return cmd_potential(cfg, pot_action, cfg.solver_m, cfg.solver_d, pot_inputs,
                                 pot_radius, pot_degree);
        if (verify->parsed()) return cmd_verify_all(cfg.seed, verify_json);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
