#include "dsq/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "dsq/boundstates.hpp"
#include "dsq/couplings.hpp"
#include "dsq/dynamics.hpp"
#include "dsq/entanglement.hpp"
#include "dsq/error.hpp"
#include "dsq/gpe.hpp"
#include "dsq/parallel.hpp"

namespace dsq {

namespace {

namespace fs = std::filesystem;

const std::set<std::string> kModelKeys = {"nu",           "mass_ratio",    "wannier_convention", "n0_xi",
                                          "physical_xi_m", "physical_mu_hz", "physical_gamma_hz"};

const std::set<std::string>& command_keys(const std::string& command) {
    static const std::map<std::string, std::set<std::string>> keys = {
        {"rates", {"d_min", "d_max", "points"}},
        {"decay", {"d_list", "t_max", "points", "initial", "Gamma_over_gamma", "eta_over_gamma"}},
        {"driven", {"d", "omega_list", "t_max", "points", "initial", "detuning", "Gamma_over_gamma", "eta_over_gamma"}},
        {"steady", {"sweep", "d", "d_min", "d_max", "omega_list", "omega_min", "omega_max", "points"}},
        {"gpe-boundstates", {"grid_points", "grid_length", "box_length", "depth"}},
        {"gpe-multisoliton",
         {"count", "spacing", "box_length", "box_length_um", "t_final", "t_final_ms", "samples", "max_spacing", "n0"}},
    };
    auto it = keys.find(command);
    if (it == keys.end()) throw ParameterError("unknown command '" + command + "'");
    return it->second;
}

double setting(const Config& c, const std::string& key, double fallback) {
    return c.get_double(key).value_or(fallback);
}

std::vector<double> setting_list(const Config& c, const std::string& key, std::vector<double> fallback) {
    auto v = c.get(key);
    if (!v) return fallback;
    std::vector<double> out;
    std::stringstream ss(*v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(item, &pos));
        } catch (const std::exception&) {
            throw ParameterError("setting '" + key + "' is not a list of numbers");
        }
    }
    if (out.empty()) throw ParameterError("setting '" + key + "' is empty");
    return out;
}

std::size_t point_count(const Config& c, const RunOptions& opt, long fallback) {
    const long n = opt.points > 0 ? opt.points : c.get_int("points").value_or(fallback);
    if (n < 2) throw ParameterError("points must be at least 2");
    return static_cast<std::size_t>(n);
}

std::vector<double> linspace(double a, double b, std::size_t n) {
    if (!(b > a)) throw ParameterError("range must be non-empty (max > min)");
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

std::string tag(double v) {
    std::string s = format_number(v);
    std::replace(s.begin(), s.end(), '-', 'm');
    return s;
}

MetaList base_meta(const Scenario& s, const RunOptions& opt) {
    const ModelParams& p = s.params;
    MetaList m = {{"tool", "dsq"},
                  {"version", DSQ_VERSION},
                  {"scenario", s.name},
                  {"command", s.command},
                  {"nu", format_number(p.nu)},
                  {"mass_ratio", format_number(p.mass_ratio)},
                  {"wannier_convention", std::string(to_string(p.wannier))},
                  {"alpha", format_number(p.alpha())},
                  {"n0_xi", format_number(p.n0_xi)},
                  {"seed", std::to_string(opt.seed)}};
    if (p.physical_xi_m) m.emplace_back("physical_xi_m", format_number(*p.physical_xi_m));
    if (p.physical_mu_hz) m.emplace_back("physical_mu_hz", format_number(*p.physical_mu_hz));
    if (p.physical_gamma_hz) m.emplace_back("physical_gamma_hz", format_number(*p.physical_gamma_hz));
    for (const auto& [k, v] : s.settings.values())
        if (!kModelKeys.count(k)) m.emplace_back("setting." + k, v);
    if (opt.points > 0) m.emplace_back("points_override", std::to_string(opt.points));
    return m;
}

void emit(RunSummary& out, const fs::path& path, const CsvTable& t, MetaList meta) {
    write_csv(path, t);
    write_meta(path, meta);
    out.files.push_back(path);
}

DensityMatrix4 initial_state(const std::string& name) {
    if (name == "ee") return DensityMatrix4::projector(0);
    if (name == "eg") return DensityMatrix4::projector(1);
    if (name == "ge") return DensityMatrix4::projector(2);
    if (name == "gg") return DensityMatrix4::projector(3);
    if (name == "s") return dicke_transform(DensityMatrix4::projector(1, Basis::Dicke), Basis::Computational);
    if (name == "a") return dicke_transform(DensityMatrix4::projector(2, Basis::Dicke), Basis::Computational);
    throw ParameterError("unknown initial state '" + name + "' (ee, eg, ge, gg, s, a)");
}

Rates rates_for(double d, const Scenario& s) {
    const auto G = s.settings.get_double("Gamma_over_gamma");
    const auto e = s.settings.get_double("eta_over_gamma");
    if (G || e) {
        if (!(G && e)) throw ParameterError("Gamma_over_gamma and eta_over_gamma must be given together");
        return {1.0, *G, *e};
    }
    return rates_from(rate_set(d, s.params));
}

CsvTable trajectory_table(const std::vector<DensityMatrix4>& states, const std::vector<double>& t) {
    CsvTable tab;
    tab.columns = {"t_gamma", "rho_ee", "rho_ss", "rho_aa", "re_rho_sa", "im_rho_sa", "concurrence"};
    for (std::size_t i = 0; i < states.size(); ++i) {
        const DensityMatrix4 d = dicke_transform(states[i], Basis::Dicke);
        tab.add_row({t[i], d.m(0, 0).real(), d.m(1, 1).real(), d.m(2, 2).real(), d.m(1, 2).real(), d.m(1, 2).imag(),
                     concurrence(states[i]).value});
    }
    return tab;
}

RunSummary run_rates(const Scenario& s, const RunOptions& opt) {
    const auto n = point_count(s.settings, opt, 200);
    const auto ds = linspace(setting(s.settings, "d_min", 0.0), setting(s.settings, "d_max", 10.0), n);
    const auto sets = parallel_map<RateSet>(n, opt.threads, [&](std::size_t i) { return rate_set(ds[i], s.params); });

    CsvTable tab;
    tab.columns = {"d_over_xi", "Gamma_over_gamma", "eta_over_gamma"};
    double tail = 0.0;
    for (const auto& r : sets) {
        tab.add_row({r.d, r.Gamma_over_gamma, r.eta_over_gamma});
        tail = std::max(tail, r.eta_tail_estimate);
    }
    RunSummary out;
    auto meta = base_meta(s, opt);
    meta.emplace_back("omega0", format_number(sets.front().omega0));
    meta.emplace_back("k0", format_number(sets.front().k0));
    meta.emplace_back("gamma_over_omega0", format_number(sets.front().gamma_over_omega0));
    meta.emplace_back("max_eta_tail_estimate", format_number(tail));
    emit(out, opt.out_dir / (s.name + ".csv"), tab, meta);
    out.summary = {{"points", std::to_string(n)},
                   {"Gamma_over_gamma_first", format_number(sets.front().Gamma_over_gamma)},
                   {"Gamma_over_gamma_last", format_number(sets.back().Gamma_over_gamma)}};
    return out;
}

RunSummary run_trajectories(const Scenario& s, const RunOptions& opt, bool driven) {
    const auto n = point_count(s.settings, opt, 401);
    const auto t = linspace(0.0, setting(s.settings, "t_max", driven ? 40.0 : 20.0), n);
    const auto rho0 = initial_state(s.settings.get("initial").value_or(driven ? "gg" : "eg"));

    struct Job {
        double d;
        double omega;
    };
    std::vector<Job> jobs;
    if (driven) {
        const double d = setting(s.settings, "d", 2.5);
        for (double w : setting_list(s.settings, "omega_list", {0.25, 0.35})) jobs.push_back({d, w});
    } else {
        for (double d : setting_list(s.settings, "d_list", {1.0, 2.5})) jobs.push_back({d, 0.0});
    }
    const double detuning = setting(s.settings, "detuning", 0.0);

    struct Result {
        Rates rates;
        CsvTable table;
    };
    const auto results = parallel_map<Result>(jobs.size(), opt.threads, [&](std::size_t i) {
        const Rates r = rates_for(jobs[i].d, s);
        DriveParams drive;
        drive.omega_rabi = jobs[i].omega;
        drive.detuning = detuning;
        return Result{r, trajectory_table(evolve(rho0, r, drive, t), t)};
    });

    RunSummary out;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        auto meta = base_meta(s, opt);
        meta.emplace_back("d", format_number(jobs[i].d));
        meta.emplace_back("Gamma_over_gamma", format_number(results[i].rates.Gamma));
        meta.emplace_back("eta_over_gamma", format_number(results[i].rates.eta));
        if (driven) meta.emplace_back("omega_rabi", format_number(jobs[i].omega));
        const std::string suffix = driven ? "_omega" + tag(jobs[i].omega) : "_d" + tag(jobs[i].d);
        emit(out, opt.out_dir / (s.name + suffix + ".csv"), results[i].table, meta);
        double peak = 0.0;
        for (const auto& row : results[i].table.rows) peak = std::max(peak, row.back());
        out.summary.emplace_back("max_concurrence" + suffix, format_number(peak));
    }
    return out;
}

struct SteadyPoint {
    double concurrence;
    double formula;
    bool unique;
};

SteadyPoint steady_point(const Rates& r, double omega) {
    DriveParams drive;
    drive.omega_rabi = omega;
    const SteadyState ss = steady_state(r, drive);
    const double c = ss.unique ? concurrence(ss.rho).value : std::nan("");
    return {c, steady_concurrence_formula(r, omega), ss.unique};
}

RunSummary run_steady(const Scenario& s, const RunOptions& opt) {
    const std::string sweep = s.settings.get("sweep").value_or("omega");
    RunSummary out;
    auto write = [&](const std::string& file, const std::vector<double>& xs, const std::vector<SteadyPoint>& pts,
                     MetaList meta) {
        CsvTable tab;
        tab.columns = {"sweep_var", "concurrence", "concurrence_formula", "unique"};
        std::size_t best = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            tab.add_row({xs[i], pts[i].concurrence, pts[i].formula, pts[i].unique ? 1.0 : 0.0});
            if (pts[i].formula > pts[best].formula) best = i;
        }
        emit(out, opt.out_dir / file, tab, std::move(meta));
        return std::pair{xs[best], pts[best].formula};
    };

    if (sweep == "omega") {
        const auto n = point_count(s.settings, opt, 200);
        const double d = setting(s.settings, "d", 2.5);
        const auto ws = linspace(setting(s.settings, "omega_min", 0.0), setting(s.settings, "omega_max", 2.0), n);
        const Rates r = rates_from(rate_set(d, s.params));
        const auto pts = parallel_map<SteadyPoint>(n, opt.threads, [&](std::size_t i) { return steady_point(r, ws[i]); });
        auto meta = base_meta(s, opt);
        meta.emplace_back("sweep_var", "omega_over_gamma");
        meta.emplace_back("d", format_number(d));
        meta.emplace_back("Gamma_over_gamma", format_number(r.Gamma));
        meta.emplace_back("eta_over_gamma", format_number(r.eta));
        const auto [arg, peak] = write(s.name + ".csv", ws, pts, meta);
        out.summary = {{"peak_omega_over_gamma", format_number(arg)}, {"peak_concurrence", format_number(peak)}};
    } else if (sweep == "d") {
        const auto n = point_count(s.settings, opt, 100);
        const auto ds = linspace(setting(s.settings, "d_min", 0.0), setting(s.settings, "d_max", 10.0), n);
        const auto rates = parallel_map<Rates>(n, opt.threads, [&](std::size_t i) { return rates_from(rate_set(ds[i], s.params)); });
        for (double w : setting_list(s.settings, "omega_list", {0.25, 0.35})) {
            std::vector<SteadyPoint> pts(n);
            for (std::size_t i = 0; i < n; ++i) pts[i] = steady_point(rates[i], w);
            auto meta = base_meta(s, opt);
            meta.emplace_back("sweep_var", "d_over_xi");
            meta.emplace_back("omega_rabi", format_number(w));
            const auto [arg, peak] = write(s.name + "_omega" + tag(w) + ".csv", ds, pts, meta);
            out.summary.emplace_back("peak_d_omega" + tag(w), format_number(arg));
            out.summary.emplace_back("peak_concurrence_omega" + tag(w), format_number(peak));
        }
    } else {
        throw ParameterError("sweep must be 'omega' or 'd'");
    }
    return out;
}

RunSummary run_boundstates(const Scenario& s, const RunOptions& opt) {
    const auto points = static_cast<std::size_t>(s.settings.get_int("grid_points").value_or(2048));
    const double length = setting(s.settings, "grid_length", 64.0);
    const double box = setting(s.settings, "box_length", length - 8.0);
    const Grid1D g{length, points, Boundary::BoxWalls, box};
    const double origin[] = {0.0};
    const LatticeField sol = imprint_solitons(g, origin, 1.0);

    RelaxOptions ro;
    const std::string depth = s.settings.get("depth").value_or("exact_pt");
    if (depth == "exact_pt") ro.depth = ImpurityDepth::ExactPT;
    else if (depth == "from_coupling") ro.depth = ImpurityDepth::FromCoupling;
    else throw ParameterError("depth must be 'exact_pt' or 'from_coupling'");
    const ImpurityStates st = relax_impurity(sol, s.params, ro);
    const WannierPair ansatz = wannier_pair(s.params.alpha(), 0.0);

    CsvTable tab;
    tab.columns = {"x_over_xi", "soliton_density", "phi0", "phi1", "phi0_ansatz", "phi1_ansatz"};
    const auto dens = sol.density();
    for (std::size_t n = 0; n < g.points; ++n) {
        const double x = g.x(n);
        tab.add_row({x, dens[n], st.phi0.values[n].real(), st.phi1.values[n].real(), ansatz.phi0(x), ansatz.phi1(x)});
    }
    const PtSpectrum pt = pt_spectrum(s.params.nu, s.params.mass_ratio);
    auto meta = base_meta(s, opt);
    MetaList summary;
    for (int b = 0; b < 2; ++b) {
        const std::string k = std::to_string(b);
        summary.emplace_back("E" + k, format_number(st.energies[b]));
        summary.emplace_back("E" + k + "_bound", st.bound[b] ? "true" : "false");
        summary.emplace_back("E" + k + "_converged", st.converged[b] ? "true" : "false");
        if (static_cast<std::size_t>(b) < pt.energies.size())
            summary.emplace_back("E" + k + "_analytic", format_number(pt.energies[static_cast<std::size_t>(b)]));
    }
    summary.emplace_back("depth", format_number(st.depth));
    meta.insert(meta.end(), summary.begin(), summary.end());
    RunSummary out;
    emit(out, opt.out_dir / (s.name + ".csv"), tab, meta);
    out.summary = summary;
    return out;
}

RunSummary run_multisoliton(const Scenario& s, const RunOptions& opt) {
    const auto count = s.settings.get_int("count").value_or(24);
    if (count < 1) throw ParameterError("count must be positive");
    const double spacing = setting(s.settings, "spacing", 2.5);
    double box = setting(s.settings, "box_length", 100.0);
    if (auto um = s.settings.get_double("box_length_um"))
        box = to_dimensionless(s.params, *um * 1e-6, QuantityKind::Length);
    double t_final = setting(s.settings, "t_final", 100.0);
    if (auto ms = s.settings.get_double("t_final_ms"))
        t_final = to_dimensionless(s.params, *ms * 1e-3, QuantityKind::Time);

    MultiSolitonOptions mo;
    mo.samples = static_cast<std::size_t>(s.settings.get_int("samples").value_or(101));
    mo.max_spacing = setting(s.settings, "max_spacing", mo.max_spacing);
    mo.n0 = setting(s.settings, "n0", 1.0);
    const CentroidTracks tr = multi_soliton_experiment(static_cast<std::size_t>(count), spacing, box, t_final, mo);

    CsvTable tab;
    tab.columns.push_back("t");
    for (long j = 1; j <= count; ++j) tab.columns.push_back("x_" + std::to_string(j));
    for (std::size_t i = 0; i < tr.t.size(); ++i) {
        std::vector<double> row{tr.t[i]};
        row.insert(row.end(), tr.x[i].begin(), tr.x[i].end());
        tab.add_row(std::move(row));
    }
    const auto disp = tr.max_displacement();
    double outer = 0.0;
    double inner = 0.0;
    for (std::size_t j = 0; j < disp.size(); ++j) {
        const bool is_outer = j < 2 || j + 2 >= disp.size();
        (is_outer ? outer : inner) = std::max(is_outer ? outer : inner, disp[j]);
    }
    MetaList summary = {{"box_length_xi", format_number(box)},
                        {"t_final", format_number(t_final)},
                        {"grid_points", std::to_string(tr.grid.points)},
                        {"dt", format_number(tr.dt)},
                        {"max_displacement_outer", format_number(outer)},
                        {"max_displacement_inner", format_number(inner)},
                        {"soliton_lost", tr.lost ? "true" : "false"}};
    if (tr.loss_time) summary.emplace_back("loss_time", format_number(*tr.loss_time));
    auto meta = base_meta(s, opt);
    meta.insert(meta.end(), summary.begin(), summary.end());
    RunSummary out;
    emit(out, opt.out_dir / (s.name + ".csv"), tab, meta);
    out.summary = summary;
    return out;
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"fig2", "fig3a", "fig3b", "fig4", "fig5a", "fig5b", "figS1", "figS3"};
}

Scenario preset(std::string_view name) {
    Scenario s;
    s.name = std::string(name);
    auto& c = s.settings;
    if (name == "fig2") {
        s.command = "rates";
        c.set("d_min", "0");
        c.set("d_max", "10");
        c.set("points", "200");
    } else if (name == "fig3a") {
        s.command = "decay";
        c.set("d_list", "1,2.5");
        c.set("initial", "eg");
        c.set("t_max", "20");
    } else if (name == "fig3b") {
        s.command = "decay";
        c.set("d_list", "2.5");
        c.set("initial", "eg");
        c.set("t_max", "20");
    } else if (name == "fig4") {
        s.command = "driven";
        c.set("d", "2.5");
        c.set("omega_list", "0.25,0.35");
        c.set("initial", "gg");
        c.set("t_max", "40");
    } else if (name == "fig5a") {
        s.command = "steady";
        c.set("sweep", "d");
        c.set("omega_list", "0.25,0.35");
        c.set("d_min", "0");
        c.set("d_max", "10");
        c.set("points", "100");
    } else if (name == "fig5b") {
        s.command = "steady";
        c.set("sweep", "omega");
        c.set("d", "2.5");
        c.set("omega_min", "0");
        c.set("omega_max", "2");
        c.set("points", "200");
    } else if (name == "figS1") {
        s.command = "gpe-boundstates";
        c.set("grid_points", "2048");
        c.set("grid_length", "64");
    } else if (name == "figS3") {
        s.command = "gpe-multisoliton";
        s.params.physical_xi_m = 1e-6;
        s.params.physical_mu_hz = 1000.0;
        c.set("count", "24");
        c.set("spacing", "2.5");
        c.set("box_length_um", "100");
        c.set("t_final_ms", "100");
    } else {
        throw ParameterError("unknown scenario '" + std::string(name) + "'");
    }
    return s;
}

Scenario with_overrides(Scenario s, const Config& cfg) {
    s.params = model_params_from(cfg, s.params);
    const auto& allowed = command_keys(s.command);
    for (const auto& [k, v] : cfg.values()) {
        if (kModelKeys.count(k)) continue;
        if (!allowed.count(k)) throw ParameterError("unknown setting '" + k + "' for command " + s.command);
        s.settings.set(k, v);
    }
    return s;
}

Scenario make_scenario(std::string_view command, const Config& cfg, std::string name) {
    Scenario s;
    s.command = std::string(command);
    command_keys(s.command);
    s.name = name.empty() ? s.command : std::move(name);
    return with_overrides(std::move(s), cfg);
}

RunSummary run_scenario(const Scenario& s, const RunOptions& opt) {
    s.params.validate();
    std::error_code ec;
    fs::create_directories(opt.out_dir, ec);
    if (ec || !fs::is_directory(opt.out_dir))
        throw ParameterError("output directory not writable: " + opt.out_dir.string());
    if (s.command == "rates") return run_rates(s, opt);
    if (s.command == "decay") return run_trajectories(s, opt, false);
    if (s.command == "driven") return run_trajectories(s, opt, true);
    if (s.command == "steady") return run_steady(s, opt);
    if (s.command == "gpe-boundstates") return run_boundstates(s, opt);
    if (s.command == "gpe-multisoliton") return run_multisoliton(s, opt);
    throw ParameterError("unknown command '" + s.command + "'");
}

std::string ValidationReport::text() const {
    std::string s;
    for (const auto& [k, v] : entries) s += k + "=" + v + "\n";
    return s;
}

ValidationReport validate_params(const ModelParams& p) {
    p.validate();
    ValidationReport r;
    auto& e = r.entries;
    const PtSpectrum pt = pt_spectrum(p.nu, p.mass_ratio);
    r.qubit_window_ok = pt.qubit_ok;
    e.emplace_back("nu", format_number(p.nu));
    e.emplace_back("mass_ratio", format_number(p.mass_ratio));
    e.emplace_back("wannier_convention", std::string(to_string(p.wannier)));
    e.emplace_back("alpha", format_number(p.alpha()));
    e.emplace_back("bound_state_count", std::to_string(pt.count));
    e.emplace_back("qubit_window", pt.qubit_ok ? "pass" : "fail");
    const GapResult gap = qubit_gap(p.nu, p.mass_ratio);
    e.emplace_back("omega0", format_number(gap.omega0));
    e.emplace_back("gap_positive", gap.positive ? "true" : "false");

    const RwaReport rwa = rwa_report(p);
    e.emplace_back("k0", format_number(rwa.k0));
    e.emplace_back("g00_over_g01", format_number(rwa.g00_over_g01));
    e.emplace_back("g11_over_g01", format_number(rwa.g11_over_g01));
    e.emplace_back("interband_dominates",
                   rwa.degenerate ? "undefined" : (rwa.g00_over_g01 < 1.0 && rwa.g11_over_g01 < 1.0 ? "pass" : "fail"));
    e.emplace_back("gamma_over_omega0", format_number(rwa.gamma_over_omega0));
    e.emplace_back("rwa_weak_coupling", rwa.gamma_over_omega0 < 1.0 ? "pass" : "fail");

    if (gap.positive) {
        double worst = 0.0;
        for (double d : {0.0, 1.0, 2.5, 5.0, 10.0})
            worst = std::max(worst, std::abs(rate_set(d, p).Gamma_over_gamma));
        e.emplace_back("max_abs_Gamma_over_gamma", format_number(worst));
        e.emplace_back("collective_rate_bound", worst <= 1.0 + 1e-9 ? "pass" : "fail");
    } else {
        e.emplace_back("collective_rate_bound", "undefined");
    }
    return r;
}

}  // namespace dsq
