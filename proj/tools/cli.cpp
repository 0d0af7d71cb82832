#include "cli.hpp"

#include "CLI11.hpp"
#include "sskdv/bifurcation.hpp"
#include "sskdv/errors.hpp"
#include "sskdv/greens.hpp"
#include "sskdv/io.hpp"
#include "sskdv/profile.hpp"
#include "sskdv/soliton.hpp"
#include "sskdv/specfun.hpp"
#include "sskdv/svg.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "json.hpp"

namespace sskdv::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw UsageError("cannot open output file " + out_path);
    os << text;
}

std::string method_name(specfun::Method m) {
    switch (m) {
        case specfun::Method::quadrature: return "quadrature";
        case specfun::Method::asymptotic_series: return "asymptotic_series";
        case specfun::Method::zero_formula: return "zero_formula";
    }
    return "?";
}

json profile_header_json(const profile::Profile& prof, double energy) {
    json j;
    j["a"] = prof.a;
    j["gamma"] = prof.gamma;
    j["p"] = prof.p;
    j["eta"] = prof.eta;
    j["energy"] = energy;
    j["residual_sup"] = prof.residual_sup;
    j["c0"] = prof.tails.c0;
    j["c1"] = prof.tails.c1;
    j["d0"] = prof.tails.d0;
    j["d1"] = prof.tails.d1;
    return j;
}

// Flags may also arrive through an optional JSON config file; explicit
// command-line values win.
struct ConfigFile {
    json data;

    void load(const std::string& path) {
        std::ifstream is(path);
        if (!is) throw UsageError("cannot read config file " + path);
        try {
            data = json::parse(is);
        } catch (const json::parse_error& e) {
            throw UsageError(std::string("config file is not valid JSON: ") + e.what());
        }
        static const std::set<std::string> known = {
            "a", "p", "gamma", "auto_p", "auto_gamma", "a_max",
            "grid_n", "tol", "out", "format", "family", "x"};
        for (const auto& [key, _] : data.items()) {
            if (!known.count(key)) throw UsageError("unknown config key: " + key);
        }
    }

    template <class T>
    void apply(const CLI::Option* opt, const char* key, T& value) const {
        if (opt && opt->count() > 0) return; // explicit flag wins
        if (data.contains(key)) value = data.at(key).get<T>();
    }
};

profile::SolverConfig solver_config(int grid_n, double tol) {
    profile::SolverConfig cfg;
    if (grid_n > 0) cfg.grid_n = grid_n;
    if (tol > 0.0) cfg.newton_tol = tol;
    return cfg;
}

struct SolveResult {
    profile::Profile prof;
    double energy = 0.0;
};

SolveResult run_solve(double a, std::optional<double> p, std::optional<double> gamma,
                      bool auto_p, bool auto_gamma, const profile::SolverConfig& cfg) {
    SolveResult out;
    if (auto_p) {
        bifurcation::solve_p(a, cfg, nullptr, &out.prof);
    } else {
        if (!p) throw UsageError("solve needs --p, or --auto-p");
        double g;
        if (auto_gamma)
            g = bifurcation::solve_gamma(a, *p, cfg);
        else
            g = gamma ? *gamma : 2.0 / *p - 1.0;
        out.prof = profile::solve_profile(a, g, *p, cfg);
    }
    out.energy = profile::energy(out.prof);
    return out;
}

std::string profile_as_csv(const profile::Profile& prof, double energy) {
    std::ostringstream os;
    io::save_profile(prof, energy, os);
    return os.str();
}

std::string profile_as_json(const profile::Profile& prof, double energy) {
    json j = profile_header_json(prof, energy);
    j["x"] = prof.grid.x;
    j["u"] = prof.u;
    j["u_x"] = prof.u_x;
    return j.dump(2) + "\n";
}

std::string sidecar_path(const std::string& csv_path) {
    const auto dot = csv_path.find_last_of('.');
    const std::string stem = dot == std::string::npos ? csv_path : csv_path.substr(0, dot);
    return stem + ".json";
}

int dispatch(const std::vector<std::string>& argv) {
    CLI::App app{"self-similar blow-up profiles of the slightly supercritical gKdV equation"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "JSON file with default flag values");

    // specfun
    auto* sc_specfun = app.add_subcommand("specfun", "evaluate Ai_g / Gi_g / Hi_g");
    std::string family = "ai";
    double sf_gamma = 0.0, sf_x = 0.0;
    std::string sf_out, sf_format = "json";
    auto* o_family = sc_specfun->add_option("--family", family, "ai | gi | hi")
                         ->check(CLI::IsMember({"ai", "gi", "hi"}));
    auto* o_sfg = sc_specfun->add_option("--gamma", sf_gamma, "family parameter");
    auto* o_sfx = sc_specfun->add_option("--x", sf_x, "evaluation point");
    sc_specfun->add_option("--out", sf_out, "output path (default stdout)");
    sc_specfun->add_option("--format", sf_format)->check(CLI::IsMember({"json"}));

    // soliton
    auto* sc_soliton = app.add_subcommand("soliton", "soliton norms and energy");
    double sol_p = 4.0;
    std::string sol_out;
    auto* o_solp = sc_soliton->add_option("--p", sol_p, "nonlinearity exponent");
    sc_soliton->add_option("--out", sol_out, "output path (default stdout)");

    // kernel
    auto* sc_kernel = app.add_subcommand("kernel", "dump the transformed kernel K^a as CSV");
    double k_a = 0.1, k_gamma = -0.5;
    int k_n = 41;
    std::string k_out;
    auto* o_ka = sc_kernel->add_option("--a", k_a, "bifurcation parameter");
    auto* o_kg = sc_kernel->add_option("--gamma", k_gamma, "exponent");
    auto* o_kn = sc_kernel->add_option("--grid-n", k_n, "points per axis on [-5,5]")
                     ->check(CLI::Range(2, 201));
    sc_kernel->add_option("--out", k_out, "output path (default stdout)");

    // solve
    auto* sc_solve = app.add_subcommand("solve", "solve one profile");
    double s_a = 0.0, s_p = 0.0, s_gamma = 0.0, s_tol = 0.0;
    int s_n = 0;
    bool s_auto_p = false, s_auto_gamma = false;
    std::string s_out, s_format = "csv";
    auto* o_sa = sc_solve->add_option("--a", s_a, "bifurcation parameter")
                     ->check(CLI::Range(0.0, 0.6));
    auto* o_sp = sc_solve->add_option("--p", s_p, "nonlinearity exponent")
                     ->check(CLI::Range(2.0, 200.0));
    auto* o_sg = sc_solve->add_option("--gamma", s_gamma, "exponent (default 2/p - 1)")
                     ->check(CLI::Range(-0.9999, 0.0));
    auto* o_sap = sc_solve->add_flag("--auto-p", s_auto_p, "root eta in p (branch point)");
    auto* o_sag =
        sc_solve->add_flag("--auto-gamma", s_auto_gamma, "root eta in gamma at fixed p");
    auto* o_sn = sc_solve->add_option("--grid-n", s_n, "collocation intervals")
                     ->check(CLI::Range(16, 100000));
    auto* o_st = sc_solve->add_option("--tol", s_tol, "Newton residual tolerance");
    sc_solve->add_option("--out", s_out, "output path (default stdout)");
    sc_solve->add_option("--format", s_format)->check(CLI::IsMember({"csv", "json"}));
    o_sap->excludes(o_sp);
    o_sap->excludes(o_sg);
    o_sap->excludes(o_sag);
    o_sag->excludes(o_sg);

    // trace
    auto* sc_trace = app.add_subcommand("trace", "trace the branch p(a)");
    double t_amax = 0.0, t_tol = 0.0;
    int t_n = 0;
    std::string t_out, t_format = "csv";
    auto* o_tm = sc_trace->add_option("--a-max", t_amax, "end of the sweep")
                     ->check(CLI::Range(0.0, 0.55));
    auto* o_tn = sc_trace->add_option("--grid-n", t_n, "collocation intervals");
    auto* o_tt = sc_trace->add_option("--tol", t_tol, "Newton residual tolerance");
    sc_trace->add_option("--out", t_out, "branch CSV path; sidecar JSON lands next to it");
    sc_trace->add_option("--format", t_format)->check(CLI::IsMember({"csv", "json"}));

    // plot
    auto* sc_plot = app.add_subcommand("plot", "render a profile or branch as SVG");
    double pl_a = -1.0, pl_amax = -1.0, pl_p = 0.0, pl_tol = 0.0;
    int pl_n = 0;
    bool pl_auto_p = false;
    std::string pl_out, pl_format = "svg";
    auto* o_pa = sc_plot->add_option("--a", pl_a, "profile plot at this a");
    auto* o_pm = sc_plot->add_option("--a-max", pl_amax, "branch plot up to this a");
    auto* o_pp = sc_plot->add_option("--p", pl_p, "nonlinearity exponent");
    auto* o_pap = sc_plot->add_flag("--auto-p", pl_auto_p, "root eta in p");
    auto* o_pn = sc_plot->add_option("--grid-n", pl_n, "collocation intervals");
    auto* o_pt = sc_plot->add_option("--tol", pl_tol, "Newton residual tolerance");
    sc_plot->add_option("--out", pl_out, "output path (default stdout)");
    sc_plot->add_option("--format", pl_format)->check(CLI::IsMember({"svg"}));
    o_pa->excludes(o_pm);

    std::vector<std::string> reversed(argv.rbegin(), argv.rend());
    app.parse(reversed);

    ConfigFile config;
    if (!config_path.empty()) config.load(config_path);

    if (*sc_specfun) {
        config.apply(o_family, "family", family);
        config.apply(o_sfg, "gamma", sf_gamma);
        config.apply(o_sfx, "x", sf_x);
        if (o_sfg->count() == 0 && !config.data.contains("gamma"))
            throw UsageError("specfun needs --gamma");
        if (o_sfx->count() == 0 && !config.data.contains("x"))
            throw UsageError("specfun needs --x");
        const specfun::FamilyTag tag = family == "ai"   ? specfun::FamilyTag::AiGamma
                                       : family == "gi" ? specfun::FamilyTag::GiGamma
                                                        : specfun::FamilyTag::HiGamma;
        const auto rep = specfun::eval(tag, sf_gamma, sf_x);
        json j;
        j["family"] = family;
        j["gamma"] = sf_gamma;
        j["x"] = sf_x;
        const double v = rep.value.to_real();
        if (std::isfinite(v))
            j["value"] = v;
        else
            j["value"] = nullptr; // representable only in log form
        j["sign"] = rep.value.sign;
        j["log_mag"] = rep.value.log_mag;
        j["method"] = method_name(rep.method);
        j["est_abs_err"] = rep.est_abs_err;
        write_output(j.dump(2) + "\n", sf_out);
        return 0;
    }

    if (*sc_soliton) {
        config.apply(o_solp, "p", sol_p);
        config.apply(nullptr, "out", sol_out);
        const auto rep = soliton::soliton_report(sol_p);
        json j;
        j["p"] = rep.p;
        j["l1"] = rep.l1;
        j["l2_sq"] = rep.l2_sq;
        j["lx2_sq"] = rep.lx2_sq;
        j["lp2"] = rep.lp2;
        j["energy"] = rep.energy;
        j["ratio"] = rep.ratio;
        write_output(j.dump(2) + "\n", sol_out);
        return 0;
    }

    if (*sc_kernel) {
        config.apply(o_ka, "a", k_a);
        config.apply(o_kg, "gamma", k_gamma);
        config.apply(o_kn, "grid_n", k_n);
        std::ostringstream os;
        os << "x,y,K\n";
        for (int i = 0; i < k_n; ++i) {
            const double x = -5.0 + 10.0 * i / (k_n - 1);
            for (int j = 0; j < k_n; ++j) {
                const double y = -5.0 + 10.0 * j / (k_n - 1);
                const double K = k_a == 0.0 ? greens::kernel_K0(x, y)
                                            : greens::kernel_K({k_a, k_gamma}, x, y);
                os << io::format_number(x) << ',' << io::format_number(y) << ','
                   << io::format_number(K) << '\n';
            }
        }
        write_output(os.str(), k_out);
        return 0;
    }

    if (*sc_solve) {
        config.apply(o_sa, "a", s_a);
        config.apply(o_sp, "p", s_p);
        config.apply(o_sg, "gamma", s_gamma);
        config.apply(o_sap, "auto_p", s_auto_p);
        config.apply(o_sag, "auto_gamma", s_auto_gamma);
        config.apply(o_sn, "grid_n", s_n);
        config.apply(o_st, "tol", s_tol);
        config.apply(nullptr, "out", s_out);
        config.apply(nullptr, "format", s_format);
        const bool have_p = o_sp->count() > 0 || config.data.contains("p");
        const bool have_g = o_sg->count() > 0 || config.data.contains("gamma");
        const auto res = run_solve(
            s_a, have_p ? std::optional<double>(s_p) : std::nullopt,
            have_g ? std::optional<double>(s_gamma) : std::nullopt, s_auto_p, s_auto_gamma,
            solver_config(s_n, s_tol));
        write_output(s_format == "csv" ? profile_as_csv(res.prof, res.energy)
                                       : profile_as_json(res.prof, res.energy),
                     s_out);
        return 0;
    }

    if (*sc_trace) {
        if (o_tm->count() == 0 && !config.data.contains("a_max"))
            throw UsageError("trace needs --a-max");
        config.apply(o_tm, "a_max", t_amax);
        config.apply(o_tn, "grid_n", t_n);
        config.apply(o_tt, "tol", t_tol);
        config.apply(nullptr, "out", t_out);
        config.apply(nullptr, "format", t_format);
        const auto branch =
            bifurcation::trace_branch(t_amax, {}, solver_config(t_n, t_tol));
        if (t_format == "json") {
            json j;
            j["slope_at_zero"] = branch.slope_at_zero;
            j["complete"] = branch.complete;
            json pts = json::array();
            for (const auto& bp : branch.points) {
                pts.push_back({{"a", bp.a},
                               {"p", bp.p},
                               {"gamma", bp.gamma},
                               {"eta", bp.eta},
                               {"energy", bp.energy},
                               {"u0", bp.u0},
                               {"newton_iters", bp.newton_iters}});
            }
            j["points"] = pts;
            write_output(j.dump(2) + "\n", t_out);
        } else {
            std::ostringstream os;
            io::save_branch(branch, os);
            write_output(os.str(), t_out);
            if (!t_out.empty())
                write_output(io::branch_sidecar_json(branch), sidecar_path(t_out));
        }
        return 0;
    }

    if (*sc_plot) {
        config.apply(o_pa, "a", pl_a);
        config.apply(o_pm, "a_max", pl_amax);
        config.apply(o_pp, "p", pl_p);
        config.apply(o_pap, "auto_p", pl_auto_p);
        config.apply(o_pn, "grid_n", pl_n);
        config.apply(o_pt, "tol", pl_tol);
        config.apply(nullptr, "out", pl_out);
        const bool have_a = o_pa->count() > 0 || config.data.contains("a");
        const bool have_amax = o_pm->count() > 0 || config.data.contains("a_max");
        if (have_amax) {
            const auto branch =
                bifurcation::trace_branch(pl_amax, {}, solver_config(pl_n, pl_tol));
            write_output(svg::plot_branch(branch), pl_out);
            return 0;
        }
        if (!have_a) throw UsageError("plot needs --a (profile) or --a-max (branch)");
        const bool have_p = o_pp->count() > 0 || config.data.contains("p");
        const auto res = run_solve(pl_a, have_p ? std::optional<double>(pl_p) : std::nullopt,
                                   std::nullopt, pl_auto_p, false,
                                   solver_config(pl_n, pl_tol));
        write_output(svg::plot_profile(res.prof.grid.x, res.prof.u), pl_out);
        return 0;
    }

    throw UsageError("no subcommand given");
}

json error_json(const char* kind, const std::string& message) {
    json j;
    j["error"] = kind;
    j["message"] = message;
    return j;
}

} // namespace

int run(const std::vector<std::string>& argv) {
    try {
        return dispatch(argv);
    } catch (const CLI::CallForHelp&) {
        std::vector<std::string> reversed(argv.rbegin(), argv.rend());
        CLI::App help{"sskdv"};
        std::cout << "run with a subcommand: specfun | soliton | kernel | solve | trace | plot\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << error_json("usage", e.what()).dump() << "\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << error_json("usage", e.what()).dump() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << error_json("domain", e.what()).dump() << "\n";
        return 2;
    } catch (const GridError& e) {
        std::cerr << error_json("grid", e.what()).dump() << "\n";
        return 2;
    } catch (const NewtonDivergence& e) {
        std::cerr << error_json("newton_divergence", e.what()).dump() << "\n";
        return 1;
    } catch (const RootBracketError& e) {
        std::cerr << error_json("root_bracket", e.what()).dump() << "\n";
        return 1;
    } catch (const ConvergenceError& e) {
        std::cerr << error_json("convergence", e.what()).dump() << "\n";
        return 1;
    } catch (const OverflowError& e) {
        std::cerr << error_json("overflow", e.what()).dump() << "\n";
        return 1;
    } catch (const BCError& e) {
        std::cerr << error_json("boundary", e.what()).dump() << "\n";
        return 1;
    } catch (const RangeError& e) {
        std::cerr << error_json("range", e.what()).dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << error_json("internal", e.what()).dump() << "\n";
        return 1;
    }
}

} // namespace sskdv::cli
