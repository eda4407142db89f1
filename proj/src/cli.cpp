#include "fricke/cli.hpp"

#include "fricke/error.hpp"
#include "fricke/forms.hpp"
#include "fricke/parallel.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace fricke::cli {

namespace {

int parse_int_env(const char* name, const char* value) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(value, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || value[used] != '\0') {
        throw std::invalid_argument(std::string(name) + " must be an integer, got '" + value + "'");
    }
    return v;
}

// What one subcommand produced.
struct Output {
    nlohmann::json json;
    std::string csv;
    bool pass = true;
};

struct Options {
    std::optional<std::string> format;
    std::optional<std::string> out;
    std::optional<std::string> cache_dir;
    std::optional<int> jobs;
    std::optional<int> bits;
    std::optional<int> grid;
    // Set when FRICKE_PRECISION was present, so that commands with a lower
    // default precision honour it.
    bool precision_from_env = false;
};

Output run_expand(const std::string& name, std::optional<int> k, std::optional<int> r, int order) {
    if (order < 0) throw std::invalid_argument("--order must be non-negative");
    auto need = [](const std::optional<int>& v, const char* flag, const std::string& form) {
        if (!v) throw std::invalid_argument("form '" + form + "' needs " + flag);
        return *v;
    };
    Output o;
    if (name == "eta-quotient" || name == "eta-quotient-inverse") {
        const auto pair = forms::eta_quotient_pair(order);
        const bool inv = name == "eta-quotient-inverse";
        const LaurentSeries& s = inv ? pair.b : pair.a;
        o.json = report::series_json(name, 0, s);
        o.json["q_offset"] = (inv ? pair.b_offset : pair.a_offset).get_str();
        o.csv = report::series_csv(s);
        return o;
    }
    forms::FormLabel label;
    if (name == "eisenstein") {
        label = {forms::FormKind::Eisenstein, need(k, "--k", name)};
    } else if (name == "eisenstein-plus") {
        label = {forms::FormKind::EisensteinPlus, need(k, "--k", name)};
    } else if (name == "delta3plus") {
        label = {forms::FormKind::Delta3Plus, 0};
    } else if (name == "j3plus") {
        label = {forms::FormKind::J3Plus, 0};
    } else if (name == "delta3r") {
        label = {forms::FormKind::Delta3R, need(r, "--r", name)};
    } else {
        throw std::invalid_argument("unknown form '" + name +
                                    "' (eisenstein, eisenstein-plus, delta3plus, j3plus, delta3r, eta-quotient, "
                                    "eta-quotient-inverse)");
    }
    const forms::NamedForm f = forms::make_form(label, order);
    o.json = report::series_json(label.to_string(), f.weight, f.series);
    if (label.kind == forms::FormKind::Delta3R) o.json["normalization_sign"] = f.normalization_sign;
    o.csv = report::series_csv(f.series);
    return o;
}

basis::BasisForm obtain_basis(int k, int m, int order, const RunConfig& cfg) {
    if (cfg.cache_dir.empty()) return basis::build(k, m, order);
    return basis::BasisCache(cfg.cache_dir).get_or_build(k, m, order);
}

int default_order(int k, int m, const RunConfig& cfg) {
    return basis::decompose(k).gap_end() + std::max(m, 0) + cfg.trunc_margin;
}

Output run_basis(int k, int m, std::optional<int> order, bool emit_poly, const RunConfig& cfg) {
    const basis::BasisForm b = obtain_basis(k, m, order.value_or(default_order(k, m, cfg)), cfg);
    return {report::basis_json(b, emit_poly), report::basis_csv(b, emit_poly), true};
}

Output run_zeros(int k, int m, const RunConfig& cfg) {
    const basis::BasisForm b = obtain_basis(k, m, default_order(k, m, cfg), cfg);
    const arc::ArcEvaluator ev(b, cfg.precision_bits);
    const arc::ArcZeroReport rep = arc::scan_zeros(ev, cfg.grid_points);
    std::vector<arc::ArcSample> at;
    {
        PrecisionScope scope(cfg.precision_bits);
        for (const auto& z : rep.zeros) at.push_back(ev.sample(Real(z.theta)));
    }
    Output o{report::zeros_json(rep, at), report::zeros_csv(at), rep.pass};
    o.json["valence_audit"] = arc::valence_audit(b, rep).get_str();
    return o;
}

Output run_verify(const std::string& suite_name, const Options& opt, const RunConfig& cfg) {
    bounds::Suite suite;
    if (suite_name == "lemma4.1") {
        suite = bounds::Suite::Lemma41;
    } else if (suite_name == "lemma5.1") {
        suite = bounds::Suite::Lemma51;
    } else if (suite_name == "prop2.4") {
        suite = bounds::Suite::Prop24;
    } else if (suite_name == "all") {
        suite = bounds::Suite::All;
    } else {
        throw std::invalid_argument("unknown suite '" + suite_name + "' (lemma4.1, lemma5.1, prop2.4, all)");
    }
    bounds::BoundsConfig bc;
    if (opt.bits || opt.precision_from_env) bc.precision_bits = cfg.precision_bits;
    if (opt.grid) bc.grid_points = cfg.grid_points + 1;
    const auto reports = bounds::run_suite(suite, bc);
    return {report::bounds_json(reports), report::bounds_csv(reports), bounds::all_pass(reports)};
}

Output run_contour(int k, int m, double theta, const std::string& regime_name, std::optional<int> nodes,
                   const Options& opt, const RunConfig& cfg) {
    contour::Regime regime;
    if (regime_name == "low") {
        regime = contour::Regime::Low;
    } else if (regime_name == "high") {
        regime = contour::Regime::High;
    } else {
        throw std::invalid_argument("--regime must be low or high");
    }
    contour::ContourConfig cc = contour::default_config(regime);
    if (nodes) cc.quadrature_points = *nodes;
    if (opt.bits || opt.precision_from_env) cc.precision_bits = cfg.precision_bits;
    PrecisionScope scope(std::max(cc.precision_bits, 128));
    const contour::IdentityReport rep = contour::identity_check(Real(theta), k, m, regime, cc);
    const bool pass = rep.residual < Real(1e-10);
    return {report::identity_json(rep), report::identity_csv(rep), pass};
}

void emit(const Output& o, report::Format fmt, const std::optional<std::string>& path, std::ostream& out) {
    const std::string text = fmt == report::Format::Json ? o.json.dump(2) + "\n" : o.csv;
    if (!path) {
        out << text;
        return;
    }
    std::ofstream f(*path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + *path);
    f << text;
    if (!f) throw std::runtime_error("failed writing " + *path);
}

}  // namespace

RunConfig config_from_environment() {
    RunConfig cfg;
    if (const char* dir = std::getenv("FRICKE_CACHE_DIR"); dir && *dir) cfg.cache_dir = dir;
    if (const char* p = std::getenv("FRICKE_PRECISION"); p && *p) {
        cfg.precision_bits = parse_int_env("FRICKE_PRECISION", p);
    }
    validate(cfg);
    return cfg;
}

void validate(const RunConfig& cfg) {
    if (cfg.precision_bits < 128) throw std::invalid_argument("precision must be at least 128 bits");
    if (cfg.grid_points < 16) throw std::invalid_argument("grid must have at least 16 points");
    if (cfg.trunc_margin < 0) throw std::invalid_argument("truncation margin must be non-negative");
}

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Canonical basis, arc zeros and bound verification for the Fricke group of level 3", "fricke"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    app.add_option("--format", opt.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", opt.out, "write the report to this file instead of stdout");
    app.add_option("--cache-dir", opt.cache_dir, "directory for cached basis forms");
    app.add_option("--jobs", opt.jobs, "worker threads")->check(CLI::PositiveNumber);
    std::optional<int> margin;
    app.add_option("--margin", margin, "extra truncation order beyond the basis gap")->check(CLI::NonNegativeNumber);

    std::string form;
    std::optional<int> k_opt, r_opt;
    int order = 20;
    auto* expand = app.add_subcommand("expand", "exact q-expansion of a named form");
    expand->add_option("--form", form, "form name")->required();
    expand->add_option("--k", k_opt, "weight for the Eisenstein forms");
    expand->add_option("--r", r_opt, "r for delta3r");
    expand->add_option("--order", order, "last exponent kept");

    int k = 0, m = 0;
    std::optional<int> basis_order;
    bool emit_poly = false;
    auto* basis_cmd = app.add_subcommand("basis", "build f_{k,m}");
    basis_cmd->add_option("--k", k, "weight")->required();
    basis_cmd->add_option("--m", m, "index")->required();
    basis_cmd->add_option("--order", basis_order, "truncation order");
    basis_cmd->add_flag("--emit-poly", emit_poly, "include the polynomial in j_3^+");

    auto* zeros = app.add_subcommand("zeros", "locate the zeros of f_{k,m} on the arc");
    zeros->add_option("--k", k, "weight")->required();
    zeros->add_option("--m", m, "index")->required();
    zeros->add_option("--grid", opt.grid, "grid intervals over the arc");
    zeros->add_option("--bits", opt.bits, "working precision");

    std::string suite;
    auto* verify = app.add_subcommand("verify", "check the lemma constants and the proposition chains");
    verify->add_option("--suite", suite, "lemma4.1, lemma5.1, prop2.4 or all")->required();
    verify->add_option("--bits", opt.bits, "working precision");
    verify->add_option("--grid", opt.grid, "grid intervals per segment");

    double theta = 0;
    std::string regime;
    std::optional<int> nodes;
    auto* cc = app.add_subcommand("contour-check", "check the contour-integral identity at one point");
    cc->add_option("--k", k, "weight")->required();
    cc->add_option("--m", m, "index")->required();
    cc->add_option("--theta", theta, "angle on the arc")->required();
    cc->add_option("--regime", regime, "low or high")->required();
    cc->add_option("--nodes", nodes, "initial quadrature nodes");
    cc->add_option("--bits", opt.bits, "working precision of the integrand");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        err << app.help();
        return 2;
    }

    try {
        RunConfig cfg = config_from_environment();
        opt.precision_from_env = std::getenv("FRICKE_PRECISION") != nullptr;
        if (opt.cache_dir) cfg.cache_dir = *opt.cache_dir;
        if (opt.bits) cfg.precision_bits = *opt.bits;
        if (opt.grid) cfg.grid_points = *opt.grid;
        if (margin) cfg.trunc_margin = *margin;
        if (opt.format) cfg.output_format = report::parse_format(*opt.format);
        validate(cfg);
        if (opt.jobs) set_default_jobs(*opt.jobs);

        Output o;
        if (*expand) {
            o = run_expand(form, k_opt, r_opt, order);
        } else if (*basis_cmd) {
            o = run_basis(k, m, basis_order, emit_poly, cfg);
        } else if (*zeros) {
            o = run_zeros(k, m, cfg);
        } else if (*verify) {
            o = run_verify(suite, opt, cfg);
        } else {
            o = run_contour(k, m, theta, regime, nodes, opt, cfg);
        }
        emit(o, cfg.output_format, opt.out, out);
        return o.pass ? 0 : 1;
    } catch (const std::invalid_argument& e) {
        err << "fricke: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "fricke: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace fricke::cli
