#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sibuya/integrator.hpp"
#include "sibuya/potential.hpp"
#include "sibuya/stokes.hpp"
#include "sibuya/types.hpp"
#include "sibuya/verify.hpp"
#include "sibuya/zeros.hpp"

namespace {

using sibuya::cplx;

// Accepts "1.5", "-2", "1.5+0.3i", "1.5-0.3i", "2i", "-i".
cplx parse_complex(const std::string& s) {
    std::string t = s;
    if (t.empty()) throw sibuya::input_error("empty numeric literal");
    if (t.back() == 'i' || t.back() == 'I') {
        t.pop_back();
        // split into real part and imaginary coefficient
        std::size_t split = std::string::npos;
        for (std::size_t i = t.size(); i-- > 1;) {
            if ((t[i] == '+' || t[i] == '-') &&
                t[i - 1] != 'e' && t[i - 1] != 'E') {
                split = i;
                break;
            }
        }
        std::string re = "0", im = t;
        if (split != std::string::npos) {
            re = t.substr(0, split);
            im = t.substr(split);
        }
        if (im.empty() || im == "+") im = "1";
        if (im == "-") im = "-1";
        try {
            return {std::stod(re), std::stod(im)};
        } catch (const std::exception&) {
            throw sibuya::input_error("malformed complex literal: " + s);
        }
    }
    try {
        std::size_t used = 0;
        const double v = std::stod(t, &used);
        if (used != t.size())
            throw sibuya::input_error("malformed numeric literal: " + s);
        return {v, 0.0};
    } catch (const sibuya::input_error&) {
        throw;
    } catch (const std::exception&) {
        throw sibuya::input_error("malformed numeric literal: " + s);
    }
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

std::vector<cplx> parse_coeffs(const std::string& s) {
    std::vector<cplx> out;
    for (const auto& tok : split_csv(s)) out.push_back(parse_complex(tok));
    return out;
}

struct Row {
    std::string kind;
    std::optional<double> alpha;
    cplx lambda{0.0};
    double c_abs = 0.0;
    cplx dc{0.0};
    int winding = 0;
    bool is_real = false;
    bool is_simple = false;
    double residual = 0.0;
};

Row row_from_record(const sibuya::ZeroRecord& r,
                    std::optional<double> alpha = std::nullopt) {
    Row row;
    row.kind = r.tangency ? "tangency" : "zero";
    row.alpha = alpha;
    row.lambda = r.lambda;
    row.c_abs = r.residual;  // scale-normalized |C| at the reported zero
    row.dc = r.c_deriv;
    row.winding = r.winding;
    row.is_real = r.is_real;
    row.is_simple = r.is_simple;
    row.residual = r.residual;
    return row;
}

void write_csv(std::ostream& os, const std::vector<Row>& rows) {
    os << "kind,alpha,lambda_re,lambda_im,c_abs,dc_re,dc_im,winding,is_real,"
          "is_simple,residual\n";
    os.precision(15);
    for (const auto& r : rows) {
        os << r.kind << ",";
        if (r.alpha) os << *r.alpha;
        os << "," << r.lambda.real() << "," << r.lambda.imag() << ","
           << r.c_abs << "," << r.dc.real() << "," << r.dc.imag() << ","
           << r.winding << "," << (r.is_real ? "true" : "false") << ","
           << (r.is_simple ? "true" : "false") << "," << r.residual << "\n";
    }
}

void write_json_rows(std::ostream& os, const std::vector<Row>& rows) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json e;
        e["kind"] = r.kind;
        if (r.alpha)
            e["alpha"] = *r.alpha;
        else
            e["alpha"] = nullptr;
        e["lambda_re"] = r.lambda.real();
        e["lambda_im"] = r.lambda.imag();
        e["c_abs"] = r.c_abs;
        e["dc_re"] = r.dc.real();
        e["dc_im"] = r.dc.imag();
        e["winding"] = r.winding;
        e["is_real"] = r.is_real;
        e["is_simple"] = r.is_simple;
        e["residual"] = r.residual;
        j.push_back(e);
    }
    os << j.dump(2) << "\n";
}

void emit(const std::vector<Row>& rows, const std::string& out,
          const std::string& format) {
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out.empty()) {
        file.open(out);
        if (!file)
            throw sibuya::numerics_error("cannot open output file: " + out);
        os = &file;
    }
    if (format == "json")
        write_json_rows(*os, rows);
    else
        write_csv(*os, rows);
    if (!out.empty() && !file)
        throw sibuya::numerics_error("write failure: " + out);
}

// Reads a JSON config file and renders it as leading command-line tokens;
// explicit flags are appended afterwards and win via the take-last policy.
std::string config_as_flags(CLI::App& sub, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw sibuya::input_error("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw sibuya::input_error(std::string("malformed config JSON: ") +
                                  e.what());
    }
    std::string flags;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!sub.get_option_no_throw("--" + it.key()))
            throw sibuya::input_error("unknown config key: " + it.key());
        std::string val;
        if (it.value().is_string())
            val = it.value().get<std::string>();
        else if (it.value().is_boolean())
            val = it.value().get<bool>() ? "true" : "false";
        else
            val = it.value().dump();
        if (val.find(' ') != std::string::npos)
            throw sibuya::input_error("config value may not contain spaces");
        flags += " --" + it.key() + " " + val;
    }
    return flags;
}

struct CommonOpts {
    std::string a_str;
    std::string out;
    std::string format = "csv";
    std::string config;
    double rel_tol = 1e-9;
    double abs_tol = 1e-14;
    double radius = 0.0;
    int m = 3;
};

void add_common(CLI::App* sub, CommonOpts& o, bool with_coeffs = true) {
    sub->add_option("--m", o.m, "polynomial degree m");
    if (with_coeffs)
        sub->add_option("--a", o.a_str, "comma-separated coefficients");
    sub->add_option("--out", o.out, "output file (default: stdout)");
    sub->add_option("--format", o.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--config", o.config, "JSON config file");
    sub->add_option("--rel-tol", o.rel_tol, "relative tolerance");
    sub->add_option("--abs-tol", o.abs_tol, "absolute tolerance");
    sub->add_option("--radius", o.radius, "matching radius (0 = auto)");
}

sibuya::RayConfig make_cfg(const CommonOpts& o) {
    sibuya::RayConfig cfg;
    cfg.rel_tol = o.rel_tol;
    cfg.abs_tol = o.abs_tol;
    cfg.radius = o.radius;
    if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0))
        throw sibuya::input_error("tolerances must be positive");
    return cfg;
}

std::vector<double> require_real(const std::vector<cplx>& v,
                                 const char* what) {
    std::vector<double> out;
    out.reserve(v.size());
    for (cplx z : v) {
        if (z.imag() != 0.0)
            throw sibuya::input_error(std::string(what) +
                                      ": coefficients must be real");
        out.push_back(z.real());
    }
    return out;
}

int run_spectrum(const CommonOpts& o, const sibuya::SearchWindow& w,
                 bool enforce) {
    const auto head = require_real(parse_coeffs(o.a_str), "spectrum");
    if (static_cast<int>(head.size()) != o.m - 1)
        throw sibuya::input_error("spectrum: expected m-1 coefficients");
    auto coeffs = head;
    coeffs.push_back(0.0);
    const sibuya::Potential p = sibuya::Potential::make_real(o.m, coeffs);
    const sibuya::RayConfig cfg = make_cfg(o);

    auto records = sibuya::scan_real_zeros(p, w, cfg);
    const auto hyp = sibuya::check_hypothesis(head, o.m);
    sibuya::classify_zeros(records, p, cfg, w.tol, enforce && hyp.accepted);

    std::vector<Row> rows;
    for (const auto& r : records) {
        rows.push_back(row_from_record(r));
        std::cout << (r.tangency ? "tangency" : "zero")
                  << " lambda=" << r.lambda.real()
                  << " winding=" << r.winding
                  << " simple=" << (r.is_simple ? "true" : "false") << "\n";
    }
    emit(rows, o.out, o.format);
    return 0;
}

int run_eval(const CommonOpts& o) {
    const auto coeffs = parse_coeffs(o.a_str);
    if (static_cast<int>(coeffs.size()) != o.m)
        throw sibuya::input_error("eval: expected m coefficients (last is "
                                  "lambda)");
    const sibuya::Potential p = sibuya::Potential::make(o.m, coeffs);
    const sibuya::RayConfig cfg = make_cfg(o);

    const sibuya::ConnectionData cd = sibuya::stokes_c(p, cfg);
    const cplx dc = sibuya::derivative_c(p, coeffs.back(), cfg);
    const cplx neg_ic = cplx{0.0, -1.0} * cd.c;

    std::cout << "C = " << cd.c.real() << (cd.c.imag() >= 0 ? "+" : "")
              << cd.c.imag() << "i\n";
    std::cout << "-iC = " << neg_ic.real() << (neg_ic.imag() >= 0 ? "+" : "")
              << neg_ic.imag() << "i\n";
    std::cout << "dC/dlambda = " << dc.real() << (dc.imag() >= 0 ? "+" : "")
              << dc.imag() << "i\n";
    std::cout << "unit_coeff_residual = " << cd.unit_coeff_residual << "\n";

    Row row;
    row.kind = "eval";
    row.lambda = coeffs.back();
    row.c_abs = std::abs(cd.c);
    row.dc = dc;
    row.is_real = std::abs(neg_ic.imag()) <=
                  1e-6 * (1.0 + std::abs(neg_ic));
    row.residual = cd.unit_coeff_residual;
    emit({row}, o.out, o.format);
    return 0;
}

int run_sweep(const CommonOpts& o, const sibuya::SearchWindow& w,
              double alpha_hi, double alpha_lo, int steps,
              const std::string& traj_prefix) {
    const auto toks = split_csv(o.a_str);
    if (static_cast<int>(toks.size()) != o.m - 1)
        throw sibuya::input_error("sweep: expected m-1 template entries");
    // template entries: numeric literals, "alpha" or "-alpha"
    auto family = [toks](double alpha) {
        std::vector<double> out;
        for (const auto& t : toks) {
            if (t == "alpha")
                out.push_back(alpha);
            else if (t == "-alpha")
                out.push_back(-alpha);
            else {
                const cplx z = parse_complex(t);
                if (z.imag() != 0.0)
                    throw sibuya::input_error(
                        "sweep: family coefficients must be real");
                out.push_back(z.real());
            }
        }
        return out;
    };
    bool has_alpha = false;
    for (const auto& t : toks)
        if (t == "alpha" || t == "-alpha") has_alpha = true;
    if (!has_alpha)
        std::cerr << "note: no alpha placeholder, constant family\n";

    const sibuya::RayConfig cfg = make_cfg(o);
    const sibuya::SweepResult res =
        sibuya::sweep_family(o.m, family, alpha_hi, alpha_lo, steps, w, cfg);

    std::vector<Row> rows;
    for (std::size_t i = 0; i < res.slices.size(); ++i)
        for (const auto& r : res.slices[i])
            rows.push_back(row_from_record(r, res.alphas[i]));
    for (const auto& ev : res.events) {
        Row row;
        row.kind = "coalescence";
        row.alpha = ev.alpha;
        row.lambda = ev.lambda;
        row.c_abs = ev.c_abs;
        row.dc = ev.dc_abs;
        row.winding = ev.winding;
        row.is_real = true;
        row.residual = ev.c_abs;
        rows.push_back(row);
        std::cout << "coalescence alpha=" << ev.alpha
                  << " lambda=" << ev.lambda << " |C|=" << ev.c_abs
                  << " |dC|=" << ev.dc_abs << " winding=" << ev.winding
                  << "\n";
    }
    std::cout << res.events.size() << " coalescence event(s), "
              << res.slices.size() << " slices\n";
    emit(rows, o.out, o.format);

    if (!traj_prefix.empty()) {
        // one (alpha, lambda) file per tracked zero, gnuplot-ready
        int max_track = -1;
        for (const auto& ids : res.track_ids)
            for (int id : ids) max_track = std::max(max_track, id);
        for (int id = 0; id <= max_track; ++id) {
            std::ofstream f(traj_prefix + std::to_string(id) + ".dat");
            if (!f)
                throw sibuya::numerics_error("cannot open trajectory file");
            f.precision(15);
            for (std::size_t i = 0; i < res.slices.size(); ++i)
                for (std::size_t j = 0; j < res.slices[i].size(); ++j)
                    if (res.track_ids[i][j] == id)
                        f << res.alphas[i] << " "
                          << res.slices[i][j].lambda.real() << "\n";
        }
    }
    return 0;
}

int run_verify(const CommonOpts& o, std::uint64_t seed,
               const std::string& select, double threshold_scale) {
    sibuya::Thresholds th;
    th.symmetry *= threshold_scale;
    th.functional *= threshold_scale;
    th.wronskian *= threshold_scale;
    th.order_slope_margin *= threshold_scale;
    th.green *= threshold_scale;
    th.green_reconstruct *= threshold_scale;

    std::vector<std::string> sel;
    if (!select.empty()) sel = split_csv(select);
    const sibuya::RayConfig cfg = make_cfg(o);
    const sibuya::VerificationReport rep =
        sibuya::run_suite(seed, sel, cfg, th);

    for (const auto& e : rep.entries)
        std::cout << (e.pass ? "pass" : "FAIL") << " " << e.name << " ["
                  << e.params << "] value=" << e.value
                  << " threshold=" << e.threshold << "\n";
    std::cout << (rep.all_pass() ? "all checks passed" : "checks FAILED")
              << "\n";

    if (!o.out.empty()) {
        std::ofstream f(o.out);
        if (!f) throw sibuya::numerics_error("cannot open output file");
        f << rep.to_json() << "\n";
    }
    return rep.all_pass() ? 0 : 1;
}

int run_hypothesis(const CommonOpts& o) {
    const auto head = require_real(parse_coeffs(o.a_str), "hypothesis");
    if (static_cast<int>(head.size()) != o.m - 1)
        throw sibuya::input_error("hypothesis: expected m-1 coefficients");
    const auto res = sibuya::check_hypothesis(head, o.m);
    if (res.accepted)
        std::cout << "accepted j=" << res.j << "\n";
    else
        std::cout << "rejected k=" << res.violating_k << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stokes multipliers and spectra of polynomial oscillators"};
    app.require_subcommand(1);
    for (auto* opt : app.get_options())
        opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    CommonOpts so, eo, wo, vo, ho;
    sibuya::SearchWindow sw, ww;
    sw.lo = 0.0;
    sw.hi = 10.0;
    ww.lo = 0.0;
    ww.hi = 12.0;
    bool enforce = false;
    double alpha_hi = 2.0, alpha_lo = -2.0;
    int steps = 33;
    std::string traj_prefix, select;
    std::uint64_t seed = 1;
    double threshold_scale = 1.0;

    CLI::App* spectrum = app.add_subcommand("spectrum", "real zeros of -iC");
    add_common(spectrum, so);
    spectrum->add_option("--lmin", sw.lo, "window lower bound");
    spectrum->add_option("--lmax", sw.hi, "window upper bound");
    spectrum->add_option("--grid", sw.grid, "initial grid samples");
    spectrum->add_option("--tol", sw.tol, "refinement tolerance");
    spectrum->add_flag("--enforce", enforce,
                       "fail on (H)+(s) certification violations");

    CLI::App* eval = app.add_subcommand("eval", "C at one coefficient set");
    add_common(eval, eo);

    CLI::App* sweep = app.add_subcommand("sweep", "track zeros over a family");
    add_common(sweep, wo);
    sweep->add_option("--alpha-hi", alpha_hi, "family parameter start");
    sweep->add_option("--alpha-lo", alpha_lo, "family parameter end");
    sweep->add_option("--steps", steps, "number of alpha slices");
    sweep->add_option("--lmin", ww.lo, "window lower bound");
    sweep->add_option("--lmax", ww.hi, "window upper bound");
    sweep->add_option("--grid", ww.grid, "initial grid samples");
    sweep->add_option("--tol", ww.tol, "refinement tolerance");
    sweep->add_option("--traj", traj_prefix,
                      "trajectory file prefix (one file per track)");

    CLI::App* verify = app.add_subcommand("verify", "identity check suite");
    add_common(verify, vo, false);
    verify->add_option("--seed", seed, "sampler seed");
    verify->add_option("--select", select,
                       "comma list of checks (default: all)");
    verify->add_option("--threshold-scale", threshold_scale,
                       "multiply all pass thresholds");

    CLI::App* hypothesis =
        app.add_subcommand("hypothesis", "test sign conditions (H)+(s)");
    add_common(hypothesis, ho);

    for (CLI::App* sub : {spectrum, eval, sweep, verify, hypothesis})
        for (auto* opt : sub->get_options())
            opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    try {
        try {
            app.parse(argc, argv);
        } catch (const CLI::CallForHelp& e) {
            return app.exit(e);
        } catch (const CLI::ParseError& e) {
            std::cerr << "input error: " << e.what() << "\n";
            return 2;
        }

        CLI::App* sub = spectrum->parsed()   ? spectrum
                        : eval->parsed()     ? eval
                        : sweep->parsed()    ? sweep
                        : verify->parsed()   ? verify
                                             : hypothesis;
        CommonOpts* active = spectrum->parsed()   ? &so
                             : eval->parsed()     ? &eo
                             : sweep->parsed()    ? &wo
                             : verify->parsed()   ? &vo
                                                  : &ho;
        if (!active->config.empty()) {
            // re-parse with config-derived flags first; explicit ones win
            std::string cmdline =
                sub->get_name() + config_as_flags(*sub, active->config);
            for (int i = 2; i < argc; ++i)
                cmdline += std::string(" ") + argv[i];
            app.clear();
            try {
                app.parse(cmdline, false);
            } catch (const CLI::ParseError& e) {
                std::cerr << "input error: " << e.what() << "\n";
                return 2;
            }
        }

        if (spectrum->parsed()) return run_spectrum(so, sw, enforce);
        if (eval->parsed()) return run_eval(eo);
        if (sweep->parsed())
            return run_sweep(wo, ww, alpha_hi, alpha_lo, steps, traj_prefix);
        if (verify->parsed())
            return run_verify(vo, seed, select, threshold_scale);
        if (hypothesis->parsed()) return run_hypothesis(ho);
        return 2;
    } catch (const sibuya::input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const sibuya::verification_error& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 1;
    } catch (const sibuya::numerics_error& e) {
        std::cerr << "numerics error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
