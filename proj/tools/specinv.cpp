// Command-line front end: symbolic amplitudes, forward eigensolves, trace
// fits, phase-space quadrature, inverse reconstructions, canonical forms.
// All outputs embed the library version and an FNV-1a hash of the effective
// configuration so artifacts are reproducible from their metadata.
//
// Exit codes: 0 success, 2 config error, 3 numerical non-convergence,
// 4 hypothesis violation, 5 internal consistency failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "specinv/abelinv.hpp"
#include "specinv/birkhoff.hpp"
#include "specinv/invariants.hpp"
#include "specinv/phasequad.hpp"
#include "specinv/polycas.hpp"
#include "specinv/potential.hpp"
#include "specinv/schrod1d.hpp"
#include "specinv/testfunction.hpp"
#include "specinv/version.hpp"

using nlohmann::json;
using namespace specinv;

namespace {

struct Config {
    json j;  // effective configuration, accumulated per subcommand

    void set(const std::string& key, json v) { j[key] = std::move(v); }
    std::string hash_hex() const {
        char buf[32];
        snprintf(buf, sizeof buf, "%016llx",
                 (unsigned long long)fnv1a(j.dump()));
        return buf;
    }
    json stamp() const {
        json out;
        out["version"] = kVersion;
        out["config_hash"] = hash_hex();
        out["config"] = j;
        return out;
    }
};

std::ostream& open_out(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw std::invalid_argument("cannot open output file " + path);
    return file;
}

void write_curve_csv(const std::string& path, const SampledCurve& c,
                     const Config& cfg, const char* xname, const char* yname) {
    std::ofstream file;
    std::ostream& os = open_out(file, path);
    os << "# specinv " << kVersion << " config " << cfg.hash_hex() << "\n";
    os << xname << "," << yname << "\n";
    os.precision(17);
    for (size_t i = 0; i < c.size(); ++i) os << c.x[i] << "," << c.y[i] << "\n";
}

SampledCurve read_curve_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open input file " + path);
    std::vector<double> x, y;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        size_t comma = line.find(',');
        if (comma == std::string::npos) continue;
        try {
            double a = std::stod(line.substr(0, comma));
            double b = std::stod(line.substr(comma + 1));
            x.push_back(a);
            y.push_back(b);
        } catch (const std::exception&) {
            continue;  // header row
        }
    }
    return SampledCurve(std::move(x), std::move(y), path);
}

std::vector<double> parse_grid(const std::string& spec) {
    // "lo:hi:n" -> n+1 equally spaced points
    double lo, hi;
    int n;
    char c1, c2;
    std::istringstream ss(spec);
    if (!(ss >> lo >> c1 >> hi >> c2 >> n) || c1 != ':' || c2 != ':' || n < 1)
        throw std::invalid_argument("grid must be lo:hi:n, got " + spec);
    std::vector<double> g(n + 1);
    for (int i = 0; i <= n; ++i) g[i] = lo + (hi - lo) * i / n;
    return g;
}

struct PresetOpts {
    std::string name = "quartic";
    std::vector<double> coeffs;       // polynomial preset
    std::vector<int> bits;            // spliced preset
    double eps = 0.05;                // zoll preset
    double L = 0, cap = 0;            // 0 = preset default
};

void add_preset_options(CLI::App* cmd, PresetOpts& p) {
    cmd->add_option("--preset", p.name,
                    "potential preset: harmonic, quartic, asym-cubic, "
                    "double-well, spliced, zoll, polynomial")
        ->default_val(p.name);
    cmd->add_option("--coeffs", p.coeffs, "polynomial coefficients c0 c1 ...");
    cmd->add_option("--bits", p.bits, "spliced preset swap bits");
    cmd->add_option("--eps", p.eps, "zoll preset branch asymmetry");
    cmd->add_option("--domain", p.L, "domain halfwidth override");
    cmd->add_option("--cap", p.cap, "energy cap override");
}

PotentialSpec make_preset(const PresetOpts& p, Config& cfg) {
    cfg.set("preset", p.name);
    PotentialSpec V;
    if (p.name == "harmonic") V = PotentialSpec::harmonic();
    else if (p.name == "quartic") V = PotentialSpec::quartic();
    else if (p.name == "asym-cubic") V = PotentialSpec::asym_cubic();
    else if (p.name == "double-well") V = PotentialSpec::double_well();
    else if (p.name == "spliced") {
        std::vector<int> bits = p.bits.empty() ? std::vector<int>{0, 0} : p.bits;
        V = PotentialSpec::spliced(bits, 2.0 * bits.size() + 4.0, 3.0);
        cfg.set("bits", bits);
    } else if (p.name == "zoll") {
        V = PotentialSpec::zoll_asym(p.eps);
        cfg.set("eps", p.eps);
    } else if (p.name == "polynomial") {
        if (p.coeffs.empty())
            throw std::invalid_argument("polynomial preset needs --coeffs");
        if (p.L <= 0 || p.cap <= 0)
            throw std::invalid_argument("polynomial preset needs --domain and --cap");
        V = PotentialSpec::polynomial(p.coeffs, p.L, p.cap);
        cfg.set("coeffs", p.coeffs);
    } else {
        throw std::invalid_argument("unknown preset " + p.name);
    }
    if (p.L > 0) V.L = p.L;
    if (p.cap > 0) V.cap = p.cap;
    cfg.set("domain", V.L);
    cfg.set("cap", V.cap);
    V.validate();
    return V;
}

struct TestFnOpts {
    double plateau_end = 0.2, support_end = 0.4;
};

void add_testfn_options(CLI::App* cmd, TestFnOpts& f) {
    cmd->add_option("--plateau-end", f.plateau_end, "test function is 1 below this")
        ->default_val(f.plateau_end);
    cmd->add_option("--support-end", f.support_end, "test function is 0 above this")
        ->default_val(f.support_end);
}

TestFunction make_testfn(const TestFnOpts& o, Config& cfg) {
    cfg.set("plateau_end", o.plateau_end);
    cfg.set("support_end", o.support_end);
    return TestFunction(o.plateau_end, o.support_end);
}

std::string integrand_text(const IntegrandForm& g) { return g.str(); }

std::string integrand_latex(const IntegrandForm& g) {
    if (g.by_order.empty()) return "0";
    std::string s;
    for (const auto& [l, p] : g.by_order) {
        if (!s.empty()) s += " \\\\\n";
        s += "f^{(" + std::to_string(l) + ")}: \\quad " + p.latex();
    }
    return s;
}

json integrand_json(const IntegrandForm& g) {
    json out = json::object();
    for (const auto& [l, p] : g.by_order)
        out[std::to_string(l)] = json::parse(p.json());
    return out;
}

/// nu_k quadrature density: k = 0 is the constant, k >= 1 the canonical
/// density of b_{2k} lowered to its minimal f-order presentation.
IntegrandForm nu_density(const ModelSymbol& model, int k) {
    if (k == 0) {
        IntegrandForm g(model.dims());
        g.add(0, SymPoly::one(model.dims()));
        return g;
    }
    IntegrandForm g = ibp_normalize(to_integrand(model.compute_b(2 * k)), model);
    // lower the f-order floor to k+1 so double-precision quadrature holds
    return lower_while(g, [k](int l) { return l > k + 1; });
}

// ---- subcommands ----

int run_symbolic(const std::string& model_name, int dims, int order,
                 const std::string& emit, bool normalize, const std::string& out) {
    Config cfg;
    cfg.set("subcommand", "symbolic");
    cfg.set("model", model_name);
    cfg.set("dims", dims);
    cfg.set("order", order);
    cfg.set("emit", emit);
    cfg.set("normalize", normalize);
    ModelSymbol::Kind kind;
    if (model_name == "scalar") kind = ModelSymbol::Kind::scalar;
    else if (model_name == "magnetic") kind = ModelSymbol::Kind::magnetic;
    else throw std::invalid_argument("model must be scalar or magnetic");
    ModelSymbol model(kind, dims);
    const SymPoly& b = model.compute_b(order);
    if (kind == ModelSymbol::Kind::scalar) structure_check(b, order);

    std::ofstream file;
    std::ostream& os = open_out(file, out);
    if (normalize) {
        IntegrandForm g = ibp_normalize(to_integrand(b), model);
        if (emit == "text") {
            os << "# specinv " << kVersion << " config " << cfg.hash_hex() << "\n";
            os << integrand_text(g) << "\n";
        } else if (emit == "latex") {
            os << "% specinv " << kVersion << " config " << cfg.hash_hex() << "\n";
            os << integrand_latex(g) << "\n";
        } else if (emit == "json") {
            json j = cfg.stamp();
            j["density"] = integrand_json(g);
            os << j.dump(2) << "\n";
        } else {
            throw std::invalid_argument("emit must be text, json, or latex");
        }
    } else {
        if (emit == "text") {
            os << "# specinv " << kVersion << " config " << cfg.hash_hex() << "\n";
            os << b.str() << "\n";
        } else if (emit == "latex") {
            os << "% specinv " << kVersion << " config " << cfg.hash_hex() << "\n";
            os << b.latex() << "\n";
        } else if (emit == "json") {
            json j = cfg.stamp();
            j["amplitude"] = json::parse(b.json());
            os << j.dump(2) << "\n";
        } else {
            throw std::invalid_argument("emit must be text, json, or latex");
        }
    }
    return 0;
}

int run_forward(const PresetOpts& po, std::vector<double> hbars, double emax,
                int basis, const std::string& out) {
    Config cfg;
    cfg.set("subcommand", "forward");
    PotentialSpec V = make_preset(po, cfg);
    if (emax <= 0) emax = V.cap;
    cfg.set("hbar", hbars);
    cfg.set("emax", emax);
    cfg.set("basis", basis);
    std::ofstream file;
    std::ostream& os = open_out(file, out);
    os << "# specinv " << kVersion << " config " << cfg.hash_hex() << "\n";
    os << "hbar,index,eigenvalue,converged\n";
    os.precision(17);
    for (double h : hbars) {
        Spectrum s = eigen_spectrum(V, h, emax, basis);
        if (!s.converged)
            throw std::runtime_error("forward: eigensolve did not converge at hbar=" +
                                     std::to_string(h));
        for (size_t i = 0; i < s.eigenvalues.size(); ++i)
            os << h << "," << i << "," << s.eigenvalues[i] << ",1\n";
    }
    return 0;
}

int run_fit(const PresetOpts& po, const TestFnOpts& fo, std::vector<double> hbars,
            const std::string& out) {
    Config cfg;
    cfg.set("subcommand", "fit");
    PotentialSpec V = make_preset(po, cfg);
    TestFunction f = make_testfn(fo, cfg);
    cfg.set("hbar", hbars);
    if (f.support_end() > V.cap)
        throw std::invalid_argument("test function support exceeds the energy cap");
    std::vector<double> traces;
    for (double h : hbars) {
        Spectrum s = eigen_spectrum(V, h, f.support_end());
        if (!s.converged)
            throw std::runtime_error("fit: eigensolve did not converge at hbar=" +
                                     std::to_string(h));
        traces.push_back(trace_f(s, f));
    }
    auto [nu0, nu1, nu2] = fit_expansion(hbars, traces);
    ModelSymbol model(ModelSymbol::Kind::scalar, 1);
    double nu0_quad = nu_quad(nu_density(model, 0), V, f);
    double nu1_quad = nu_quad(nu_density(model, 1), V, f);
    json j = cfg.stamp();
    j["traces"] = traces;
    j["nu0_hat"] = nu0;
    j["nu1_hat"] = nu1;
    j["nu2_hat"] = nu2;
    j["nu0_quad"] = nu0_quad;
    j["nu1_quad"] = nu1_quad;
    std::vector<double> resid;
    for (size_t i = 0; i < hbars.size(); ++i) {
        double h2 = hbars[i] * hbars[i];
        resid.push_back(traces[i] - (nu0 + nu1 * h2 + nu2 * h2 * h2));
    }
    j["residuals"] = resid;
    std::ofstream file;
    std::ostream& os = open_out(file, out);
    os << j.dump(2) << "\n";
    return 0;
}

int run_quad(const PresetOpts& po, const TestFnOpts& fo, int invariant,
             const std::string& curve, const std::string& grid_spec,
             const std::vector<double>& wcoeffs, const std::vector<double>& bcoeffs,
             const std::string& out) {
    Config cfg;
    cfg.set("subcommand", "quad");
    if (!curve.empty()) {
        cfg.set("curve", curve);
        cfg.set("grid", grid_spec);
        std::vector<double> grid = parse_grid(grid_spec);
        SampledCurve c;
        if (curve == "area" || curve == "gradientsq") {
            PotentialSpec V = make_preset(po, cfg);
            c = invariant_curve(V, grid,
                                curve == "area" ? CurveKind::area_sec4
                                                : CurveKind::gradientsq_sec4);
        } else if (curve == "period") {
            PotentialSpec V = make_preset(po, cfg);
            c = period_curve(V, grid);
        } else if (curve == "I" || curve == "II") {
            if (wcoeffs.empty())
                throw std::invalid_argument("radial curves need --wcoeffs");
            RadialPoly W{wcoeffs}, B{bcoeffs.empty() ? std::vector<double>{0.0} : bcoeffs};
            cfg.set("wcoeffs", wcoeffs);
            cfg.set("bcoeffs", B.c);
            c = radial_curve(W, B, grid,
                             curve == "I" ? CurveKind::magnetic_I_sec9
                                          : CurveKind::magnetic_II_sec9);
        } else {
            throw std::invalid_argument(
                "curve must be area, gradientsq, period, I, or II");
        }
        write_curve_csv(out, c, cfg, "lambda", curve.c_str());
        return 0;
    }
    cfg.set("invariant", invariant);
    PotentialSpec V = make_preset(po, cfg);
    TestFunction f = make_testfn(fo, cfg);
    if (invariant < 0 || invariant > 2)
        throw std::invalid_argument("invariant order must be 0, 1, or 2");
    ModelSymbol model(ModelSymbol::Kind::scalar, 1);
    double value = nu_quad(nu_density(model, invariant), V, f);
    json j = cfg.stamp();
    j["nu"] = value;
    std::ofstream file;
    std::ostream& os = open_out(file, out);
    os << j.dump(2) << "\n";
    return 0;
}

int run_zoll_check(const PresetOpts& po, const std::string& grid_spec,
                   const std::string& out) {
    Config cfg;
    cfg.set("subcommand", "zoll-check");
    PotentialSpec V = make_preset(po, cfg);
    cfg.set("grid", grid_spec);
    std::vector<double> grid = parse_grid(grid_spec);
    double defect = zoll_defect(V, grid);
    json j = cfg.stamp();
    j["defect"] = defect;
    j["is_zoll"] = defect < 1e-6;
    std::ofstream file;
    std::ostream& os = open_out(file, out);
    os << j.dump(2) << "\n";
    return 0;
}

json profile_report(const WellProfilePair& p, double noise) {
    json j;
    j["noise_estimate"] = noise;
    j["s_range"] = {p.f1_prime.x.front(), p.f1_prime.x.back()};
    j["points"] = p.f1_prime.size();
    return j;
}

int run_invert_well(const std::string& area_path, const std::string& gradsq_path,
                    const std::string& prefix, const std::string& out) {
    Config cfg;
    cfg.set("subcommand", "invert-well");
    cfg.set("area", area_path);
    cfg.set("gradsq", gradsq_path);
    WellRecovery r = recover_well(read_curve_csv(area_path), read_curve_csv(gradsq_path));
    write_curve_csv(prefix + "f1.csv", r.profiles.f1, cfg, "s", "f1");
    write_curve_csv(prefix + "f2.csv", r.profiles.f2, cfg, "s", "f2");
    write_curve_csv(prefix + "v_right.csv", r.V_right, cfg, "x", "V");
    write_curve_csv(prefix + "v_left.csv", r.V_left, cfg, "x", "V");
    json j = cfg.stamp();
    j["report"] = profile_report(r.profiles, r.noise_estimate);
    std::ofstream file;
    std::ostream& os = open_out(file, out);
    os << j.dump(2) << "\n";
    return 0;
}

int run_invert_double(const std::string& area_path, const std::string& gradsq_path,
                      double separation, const std::string& prefix,
                      const std::string& out) {
    Config cfg;
    cfg.set("subcommand", "invert-double");
    cfg.set("area", area_path);
    cfg.set("gradsq", gradsq_path);
    cfg.set("separation", separation);
    DoubleWellRecovery r = recover_double_well(read_curve_csv(area_path),
                                               read_curve_csv(gradsq_path), separation);
    write_curve_csv(prefix + "f1.csv", r.profiles.f1, cfg, "s", "f1");
    write_curve_csv(prefix + "f2.csv", r.profiles.f2, cfg, "s", "f2");
    write_curve_csv(prefix + "v_inner.csv", r.V_inner, cfg, "x", "V");
    write_curve_csv(prefix + "v_outer.csv", r.V_outer, cfg, "x", "V");
    json j = cfg.stamp();
    j["report"] = profile_report(r.profiles, r.noise_estimate);
    std::ofstream file;
    std::ostream& os = open_out(file, out);
    os << j.dump(2) << "\n";
    return 0;
}

int run_invert_magnetic(const std::string& i_path, const std::string& ii_path,
                        const std::string& prefix, const std::string& out) {
    Config cfg;
    cfg.set("subcommand", "invert-magnetic");
    cfg.set("input_i", i_path);
    cfg.set("input_ii", ii_path);
    MagneticRecovery r = recover_magnetic_radial(read_curve_csv(i_path),
                                                 read_curve_csv(ii_path));
    write_curve_csv(prefix + "v.csv", r.V, cfg, "s", "V");
    write_curve_csv(prefix + "b.csv", r.B, cfg, "s", "B");
    json j = cfg.stamp();
    j["s_range"] = {r.V.x.front(), r.V.x.back()};
    std::ofstream file;
    std::ostream& os = open_out(file, out);
    os << j.dump(2) << "\n";
    return 0;
}

int run_birkhoff(const PresetOpts& po, const TestFnOpts& fo, double hbar,
                 const std::string& prefix, const std::string& out) {
    Config cfg;
    cfg.set("subcommand", "birkhoff");
    PotentialSpec V = make_preset(po, cfg);
    TestFunction f = make_testfn(fo, cfg);
    cfg.set("hbar", hbar);
    double smax = area(V, V.cap) / (2 * M_PI);
    std::vector<double> s_grid;
    for (int i = 0; i <= 200; ++i) s_grid.push_back(smax * i / 200.0);
    SampledCurve H0 = hqb0_from_area(V, s_grid);
    Spectrum sp = eigen_spectrum(V, hbar, V.cap);
    if (!sp.converged) throw std::runtime_error("birkhoff: eigensolve did not converge");
    SampledCurve K = k_from_spectrum(sp);
    double resid = verify_measure_identity(sp, f, K);
    double tr = 0;
    for (double lam : sp.eigenvalues) tr += f.value(lam);
    write_curve_csv(prefix + "h0.csv", H0, cfg, "s", "H0");
    write_curve_csv(prefix + "k.csv", K, cfg, "t", "K");
    json j = cfg.stamp();
    j["measure_residual"] = resid;
    j["trace"] = tr;
    j["relative_residual"] = tr != 0 ? resid / std::abs(tr) : resid;
    std::ofstream file;
    std::ostream& os = open_out(file, out);
    os << j.dump(2) << "\n";
    return 0;
}

int run_isospectral(const std::vector<int>& bits_a, const std::vector<int>& bits_b,
                    const TestFnOpts& fo, const std::string& out) {
    Config cfg;
    cfg.set("subcommand", "isospectral-demo");
    cfg.set("bits_a", bits_a);
    cfg.set("bits_b", bits_b);
    size_t ncells = std::max(bits_a.size(), bits_b.size());
    if (ncells == 0) throw std::invalid_argument("need --bits-a and --bits-b");
    PotentialSpec base =
        PotentialSpec::spliced(std::vector<int>(ncells, 0), 2.0 * ncells + 4.0, 3.0);
    PotentialSpec Va = make_isospectral_family(base, bits_a);
    PotentialSpec Vb = make_isospectral_family(base, bits_b);
    TestFunction f = make_testfn(fo, cfg);
    double sup = 0;
    for (int i = 0; i <= 4000; ++i) {
        double x = -base.L + 2 * base.L * i / 4000.0;
        sup = std::max(sup, std::abs(Va.value(x) - Vb.value(x)));
    }
    ModelSymbol model(ModelSymbol::Kind::scalar, 1);
    json j = cfg.stamp();
    j["sup_difference"] = sup;
    for (int k = 0; k <= 2; ++k) {
        IntegrandForm g = nu_density(model, k);
        double na = nu_quad(g, Va, f), nb = nu_quad(g, Vb, f);
        std::string key = "nu" + std::to_string(k);
        j[key + "_a"] = na;
        j[key + "_b"] = nb;
        j[key + "_rel_diff"] =
            std::abs(na - nb) / std::max({std::abs(na), std::abs(nb), 1e-12});
    }
    std::ofstream file;
    std::ostream& os = open_out(file, out);
    os << j.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"semiclassical spectral invariants: symbolic amplitudes, "
                 "eigenvalue traces, phase-space quadrature, and inverse "
                 "reconstructions"};
    app.require_subcommand(1);

    // symbolic
    std::string sym_model = "scalar", sym_emit = "text", sym_out;
    int sym_dims = 1, sym_order = 2;
    bool sym_norm = false;
    auto* sym = app.add_subcommand("symbolic", "amplitude b_m and canonical densities");
    sym->add_option("--model", sym_model, "scalar or magnetic")->default_val("scalar");
    sym->add_option("--dims", sym_dims, "space dimension")->default_val(1);
    sym->add_option("--order", sym_order, "amplitude order m")->required();
    sym->add_option("--emit", sym_emit, "text, json, or latex")->default_val("text");
    sym->add_flag("--normalize", sym_norm, "emit the canonical integrand instead");
    sym->add_option("--output", sym_out, "output path (default stdout)");

    // forward
    PresetOpts fw_po;
    std::vector<double> fw_hbars{0.02};
    double fw_emax = 0;
    int fw_basis = 0;
    std::string fw_out;
    auto* fw = app.add_subcommand("forward", "eigenvalues below the energy cap");
    add_preset_options(fw, fw_po);
    fw->add_option("--hbar", fw_hbars, "semiclassical parameters");
    fw->add_option("--emax", fw_emax, "eigenvalue ceiling (default: cap)");
    fw->add_option("--basis", fw_basis, "basis size (0 = automatic)");
    fw->add_option("--output", fw_out, "output CSV path (default stdout)");

    // fit
    PresetOpts ft_po;
    TestFnOpts ft_fo;
    std::vector<double> ft_hbars{0.04, 0.02, 0.01};
    std::string ft_out;
    auto* ft = app.add_subcommand("fit", "hbar-sweep trace fit vs quadrature");
    add_preset_options(ft, ft_po);
    add_testfn_options(ft, ft_fo);
    ft->add_option("--hbar", ft_hbars, "hbar sweep values");
    ft->add_option("--output", ft_out, "output JSON path (default stdout)");

    // quad
    PresetOpts qd_po;
    TestFnOpts qd_fo;
    int qd_invariant = 0;
    std::string qd_curve, qd_grid = "0.05:0.45:40", qd_out;
    std::vector<double> qd_w, qd_b;
    auto* qd = app.add_subcommand("quad", "phase-space quadrature and invariant curves");
    add_preset_options(qd, qd_po);
    add_testfn_options(qd, qd_fo);
    qd->add_option("--invariant", qd_invariant, "trace invariant order k (0, 1, 2)");
    qd->add_option("--curve", qd_curve, "curve output: area, gradientsq, period, I, II");
    qd->add_option("--grid", qd_grid, "lambda grid lo:hi:n")->default_val(qd_grid);
    qd->add_option("--wcoeffs", qd_w, "radial potential W(s) coefficients");
    qd->add_option("--bcoeffs", qd_b, "radial field B(s) coefficients");
    qd->add_option("--output", qd_out, "output path (default stdout)");

    // zoll-check
    PresetOpts zl_po;
    std::string zl_grid = "0.1:0.9:16", zl_out;
    auto* zl = app.add_subcommand("zoll-check", "max deviation of the period from 2 pi");
    add_preset_options(zl, zl_po);
    zl->add_option("--grid", zl_grid, "lambda grid lo:hi:n")->default_val(zl_grid);
    zl->add_option("--output", zl_out, "output JSON path (default stdout)");

    // invert-well
    std::string iw_area, iw_gradsq, iw_prefix = "well_", iw_out;
    auto* iw = app.add_subcommand("invert-well", "single-well reconstruction");
    iw->add_option("--area", iw_area, "area invariant curve CSV")->required();
    iw->add_option("--gradsq", iw_gradsq, "gradient-square invariant curve CSV")->required();
    iw->add_option("--out-prefix", iw_prefix, "prefix for output CSVs")->default_val(iw_prefix);
    iw->add_option("--output", iw_out, "report JSON path (default stdout)");

    // invert-double
    std::string id_area, id_gradsq, id_prefix = "dwell_", id_out;
    double id_sep = 1.0;
    auto* idc = app.add_subcommand("invert-double", "symmetric double-well reconstruction");
    idc->add_option("--area", id_area, "area invariant curve CSV")->required();
    idc->add_option("--gradsq", id_gradsq, "gradient-square invariant curve CSV")->required();
    idc->add_option("--separation", id_sep, "well minimum position")->required();
    idc->add_option("--out-prefix", id_prefix, "prefix for output CSVs")->default_val(id_prefix);
    idc->add_option("--output", id_out, "report JSON path (default stdout)");

    // invert-magnetic
    std::string im_i, im_ii, im_prefix = "mag_", im_out;
    auto* im = app.add_subcommand("invert-magnetic", "radial electric+magnetic recovery");
    im->add_option("--input-i", im_i, "first radial invariant curve CSV")->required();
    im->add_option("--input-ii", im_ii, "second radial invariant curve CSV")->required();
    im->add_option("--out-prefix", im_prefix, "prefix for output CSVs")->default_val(im_prefix);
    im->add_option("--output", im_out, "report JSON path (default stdout)");

    // birkhoff
    PresetOpts bk_po;
    TestFnOpts bk_fo;
    double bk_hbar = 0.02;
    std::string bk_prefix = "birkhoff_", bk_out;
    auto* bk = app.add_subcommand("birkhoff", "canonical form and measure identity");
    add_preset_options(bk, bk_po);
    add_testfn_options(bk, bk_fo);
    bk->add_option("--hbar", bk_hbar, "semiclassical parameter")->default_val(bk_hbar);
    bk->add_option("--out-prefix", bk_prefix, "prefix for output CSVs")->default_val(bk_prefix);
    bk->add_option("--output", bk_out, "report JSON path (default stdout)");

    // isospectral-demo
    std::vector<int> is_a, is_b;
    TestFnOpts is_fo{0.5, 2.5};
    std::string is_out;
    auto* iso = app.add_subcommand("isospectral-demo",
                                   "distinct wells with matching trace invariants");
    iso->add_option("--bits-a", is_a, "swap bits of the first member")->required();
    iso->add_option("--bits-b", is_b, "swap bits of the second member")->required();
    add_testfn_options(iso, is_fo);
    iso->add_option("--output", is_out, "output JSON path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sym->parsed())
            return run_symbolic(sym_model, sym_dims, sym_order, sym_emit, sym_norm, sym_out);
        if (fw->parsed()) return run_forward(fw_po, fw_hbars, fw_emax, fw_basis, fw_out);
        if (ft->parsed()) return run_fit(ft_po, ft_fo, ft_hbars, ft_out);
        if (qd->parsed())
            return run_quad(qd_po, qd_fo, qd_invariant, qd_curve, qd_grid, qd_w, qd_b, qd_out);
        if (zl->parsed()) return run_zoll_check(zl_po, zl_grid, zl_out);
        if (iw->parsed()) return run_invert_well(iw_area, iw_gradsq, iw_prefix, iw_out);
        if (idc->parsed())
            return run_invert_double(id_area, id_gradsq, id_sep, id_prefix, id_out);
        if (im->parsed()) return run_invert_magnetic(im_i, im_ii, im_prefix, im_out);
        if (bk->parsed()) return run_birkhoff(bk_po, bk_fo, bk_hbar, bk_prefix, bk_out);
        if (iso->parsed()) return run_isospectral(is_a, is_b, is_fo, is_out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "hypothesis violation: " << e.what() << "\n";
        return 4;
    } catch (const std::logic_error& e) {
        std::cerr << "internal consistency failure: " << e.what() << "\n";
        return 5;
    } catch (const std::runtime_error& e) {
        std::string msg = e.what();
        if (msg.rfind("ibp_equivalent:", 0) == 0 || msg.rfind("structure:", 0) == 0) {
            std::cerr << "internal consistency failure: " << msg << "\n";
            return 5;
        }
        std::cerr << "numerical non-convergence: " << msg << "\n";
        return 3;
    }
    return 2;
}
