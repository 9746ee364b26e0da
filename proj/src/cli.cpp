#include "susyline/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "susyline/checks.hpp"
#include "susyline/fdsolver.hpp"
#include "susyline/multiplets.hpp"
#include "susyline/transforms.hpp"

namespace susyline::cli {

using ordered_json = nlohmann::ordered_json;

std::optional<HalfInt> parse_half(const std::string& s) {
    if (s.empty()) return std::nullopt;
    size_t slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            size_t used = 0;
            int v = std::stoi(s, &used);
            if (used != s.size()) return std::nullopt;
            return HalfInt::whole(v);
        }
        if (s.substr(slash + 1) != "2") return std::nullopt;
        size_t used = 0;
        std::string head = s.substr(0, slash);
        int p = std::stoi(head, &used);
        if (used != head.size()) return std::nullopt;
        return HalfInt::halves(p);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

ordered_json rational_json(const Rational& r) {
    return {{"num", r.num().str()}, {"den", r.den().str()}};
}

ordered_json poly_json(const TrigPoly& p) {
    ordered_json arr = ordered_json::array();
    for (const auto& t : p.terms()) {
        ordered_json term = rational_json(t.coeff);
        term["a2"] = t.a.twice;
        term["b2"] = t.b.twice;
        arr.push_back(std::move(term));
    }
    return arr;
}

int require_half_odd(const std::optional<HalfInt>& h, const char* flag, std::ostream& os) {
    if (!h) {
        os << "error: missing required " << flag << "\n";
        return 2;
    }
    if (!h->is_half_odd()) {
        os << "error: " << flag << " must be half-odd (got " << h->str() << ")\n";
        return 2;
    }
    return 0;
}

} // namespace

int cmd_spectrum(const RunConfig& cfg, std::ostream& os) {
    if (int rc = require_half_odd(cfg.jmax, "--jmax", os)) return rc;
    if (!(cfg.g > 0) || !(cfg.length > 0)) {
        os << "error: --G and --L must be positive\n";
        return 2;
    }
    auto rows = spectrum_table(*cfg.jmax, cfg.g, cfg.k, cfg.length);
    if (cfg.format == Format::csv) {
        os << "j,epsilon,E_tilde,E_total,degeneracy\n";
        for (const auto& r : rows)
            os << r.j.str() << ',' << r.epsilon.str() << ',' << fmt17(r.e_tilde) << ','
               << fmt17(r.e_total) << ',' << r.degeneracy << '\n';
    } else {
        ordered_json arr = ordered_json::array();
        for (const auto& r : rows) {
            arr.push_back({{"j", r.j.str()},
                           {"epsilon", r.epsilon.num().convert_to<long long>()},
                           {"E_tilde", r.e_tilde},
                           {"E_total", r.e_total},
                           {"degeneracy", r.degeneracy}});
        }
        os << arr.dump() << '\n';
    }
    return 0;
}

int cmd_multiplet(const RunConfig& cfg, std::ostream& os) {
    if (int rc = require_half_odd(cfg.j, "--j", os)) return rc;
    HalfInt j = *cfg.j;
    if (j.twice < 1) {
        os << "error: --j must be positive\n";
        return 2;
    }

    Multiplet m;
    try {
        m = build_multiplet(j);
    } catch (const std::exception& e) {
        os << "error: " << e.what() << "\n";
        return 1;
    }

    Rational jj1 = Rational::of(j) * (Rational::of(j) + Rational(1));
    bool all_ok = true;
    ordered_json states = ordered_json::array();
    for (const SpinorState& z : m.states) {
        bool h_ok = hamiltonian_apply(z) == z.scaled(m.epsilon);
        bool c_ok = casimir_apply(z) == z.scaled(jj1);
        bool l_ok = (z.jz == j) ? jplus_apply(z).is_zero() : true;
        if (z.jz == -j) l_ok = l_ok && jminus_apply(z).is_zero();
        all_ok = all_ok && h_ok && c_ok && l_ok;
        states.push_back({{"jz", z.jz.str()},
                          {"upper", poly_json(z.upper)},
                          {"lower", poly_json(z.lower)},
                          {"checks",
                           {{"hamiltonian", h_ok ? "pass" : "fail"},
                            {"casimir", c_ok ? "pass" : "fail"},
                            {"ladder", l_ok ? "pass" : "fail"}}}});
    }

    ordered_json doc = {{"j", j.str()},
                        {"epsilon", rational_json(m.epsilon)},
                        {"degeneracy", m.size()},
                        {"states", std::move(states)}};
    os << doc.dump() << '\n';
    return all_ok ? 0 : 1;
}

int cmd_verify(const RunConfig& cfg, std::ostream& os) {
    HalfInt jmax = cfg.jmax.value_or(HalfInt::halves(5));
    if (!jmax.is_half_odd() || jmax.twice < 1) {
        os << "error: --jmax must be half-odd positive\n";
        return 2;
    }

    checks::Report rep;
    auto append = [&rep](checks::Report r) {
        rep.insert(rep.end(), r.begin(), r.end());
    };
    append(checks::multiplet_suite(jmax));
    append(checks::algebra_suite(jmax, HalfInt::halves(5), 10, 20240601));
    append(checks::intertwine_suite(jmax));
    append(checks::ladder_suite(jmax, cfg.tol));
    append(checks::spectrum_suite(jmax, {0.5, 1.0, 2.0}, 1e-15));
    append(checks::uniqueness_suite(jmax, cfg.tol));
    append(checks::broken_susy_suite(jmax, {HalfInt::halves(1), HalfInt::halves(3)}, 512,
                                     cfg.tol));
    append(checks::fd_convergence_suite({128, 256, 512}, 1e-3));
    append(checks::transform_suite(std::min(jmax, HalfInt::halves(5)), cfg.g, cfg.tol, 1e-6));

    bool ok = true;
    for (const auto& c : rep) {
        ok = ok && c.pass;
        os << "CHECK " << c.name << ' ' << (c.pass ? "PASS" : "FAIL");
        if (!c.detail.empty()) os << ' ' << c.detail;
        os << '\n';
    }
    os << (ok ? "ALL PASS" : "FAILURES PRESENT") << '\n';
    return ok ? 0 : 1;
}

int cmd_fd(const RunConfig& cfg, std::ostream& os) {
    if (int rc = require_half_odd(cfg.jz, "--jz", os)) return rc;
    if (cfg.n_list.size() < 3) {
        os << "error: --n needs at least three ascending grid sizes\n";
        return 2;
    }
    for (int n : cfg.n_list)
        if (n < 8) {
            os << "error: grid sizes must be >= 8\n";
            return 2;
        }
    if (cfg.levels < 1) {
        os << "error: --levels must be positive\n";
        return 2;
    }

    ConvergenceStudy study;
    try {
        study = convergence_study(*cfg.jz, cfg.sign, cfg.levels, cfg.n_list, Scheme::envelope);
    } catch (const std::exception& e) {
        os << "error: " << e.what() << "\n";
        return 2;
    }

    os << "n,level,eigenvalue,error,order\n";
    for (size_t i = 0; i < study.ns.size(); ++i)
        for (int lev = 0; lev < cfg.levels; ++lev) {
            double v = study.eigenvalues[i][lev];
            const auto& L = study.levels[lev];
            os << study.ns[i] << ',' << lev << ',' << fmt17(v) << ','
               << fmt17(std::abs(v - L.extrapolated)) << ',' << fmt17(L.observed_order) << '\n';
        }
    // extrapolated limits, one row per level, flagged by n = 0
    for (int lev = 0; lev < cfg.levels; ++lev)
        os << 0 << ',' << lev << ',' << fmt17(study.levels[lev].extrapolated) << ",,"
           << fmt17(study.levels[lev].observed_order) << '\n';

    bool ok = true;
    for (const auto& L : study.levels) ok = ok && L.monotone_error;
    return ok ? 0 : 1;
}

int cmd_transform(const RunConfig& cfg, std::ostream& os) {
    if (int rc = require_half_odd(cfg.j, "--j", os)) return rc;
    if (int rc = require_half_odd(cfg.jz, "--jz", os)) return rc;
    if (!(cfg.g > 0)) {
        os << "error: --G must be positive\n";
        return 2;
    }
    if (cfg.jz->abs() > *cfg.j) {
        os << "error: need |jz| <= j\n";
        return 2;
    }

    Multiplet m;
    try {
        m = build_multiplet(*cfg.j);
    } catch (const std::exception& e) {
        os << "error: " << e.what() << "\n";
        return 1;
    }
    MomentumSpinor spinor = momentum_spinor(m.at(*cfg.jz), *cfg.j, cfg.g);
    auto [r1, r2] = coupled_residual(spinor, cfg.g);

    os << "jz,j,r1,r2\n";
    os << cfg.jz->str() << ',' << cfg.j->str() << ',' << fmt17(r1) << ',' << fmt17(r2) << '\n';
    return (r1 < cfg.tol && r2 < cfg.tol) ? 0 : 1;
}

namespace {

struct HalfOption {
    std::string text;
    std::optional<HalfInt> value;
};

void add_half_option(CLI::App* app, const char* name, HalfOption& slot, bool required = false) {
    auto* opt = app->add_option_function<std::string>(
        name,
        [&slot, name](const std::string& s) {
            slot.text = s;
            slot.value = parse_half(s);
            if (!slot.value)
                throw CLI::ValidationError(std::string(name) +
                                           ": expected a half-integer like 3/2 or -1/2");
        },
        "half-integer, e.g. 3/2 or -1/2");
    if (required) opt->required();
}

} // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"exact SUSY/su(2) spectral toolkit for a neutron bound by a line current"};
    app.require_subcommand(1);

    RunConfig cfg;
    HalfOption j_opt, jz_opt, jmax_opt;
    std::string sign_text = "minus", format_text = "csv", n_text;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--G", cfg.g, "coupling constant");
        sub->add_option("--k", cfg.k, "longitudinal quantum number");
        sub->add_option("--L", cfg.length, "longitudinal box length");
        sub->add_option("--tol", cfg.tol, "tolerance for numeric gates");
        sub->add_option("--format", format_text, "csv|json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", cfg.out, "output path (default stdout)");
    };

    CLI::App* spectrum = app.add_subcommand("spectrum", "bound-state table");
    add_half_option(spectrum, "--jmax", jmax_opt, true);
    add_common(spectrum);

    CLI::App* multiplet = app.add_subcommand("multiplet", "exact degenerate states at one j");
    add_half_option(multiplet, "--j", j_opt, true);
    add_common(multiplet);

    CLI::App* verify = app.add_subcommand("verify", "run the exact and numeric suites");
    add_half_option(verify, "--jmax", jmax_opt);
    add_common(verify);

    CLI::App* fd = app.add_subcommand("fd", "finite-difference convergence study");
    add_half_option(fd, "--jz", jz_opt, true);
    fd->add_option("--sign", sign_text, "plus|minus")->check(CLI::IsMember({"plus", "minus"}));
    fd->add_option("--levels", cfg.levels, "number of eigenvalues");
    fd->add_option("--n", n_text, "comma-separated ascending grid sizes")->required();
    add_common(fd);

    CLI::App* transform = app.add_subcommand("transform", "momentum-space residual report");
    add_half_option(transform, "--j", j_opt, true);
    add_half_option(transform, "--jz", jz_opt, true);
    add_common(transform);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    cfg.j = j_opt.value;
    cfg.jz = jz_opt.value;
    cfg.jmax = jmax_opt.value;
    cfg.sign = (sign_text == "plus") ? Sector::plus : Sector::minus;
    cfg.format = (format_text == "json") ? Format::json : Format::csv;
    if (!n_text.empty()) {
        std::stringstream ss(n_text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                cfg.n_list.push_back(std::stoi(item));
            } catch (const std::exception&) {
                std::cerr << "error: bad --n entry '" << item << "'\n";
                return 2;
            }
        }
    }

    std::ostringstream buffer;
    int rc = 2;
    try {
        if (spectrum->parsed()) {
            cfg.command = "spectrum";
            rc = cmd_spectrum(cfg, buffer);
        } else if (multiplet->parsed()) {
            cfg.command = "multiplet";
            rc = cmd_multiplet(cfg, buffer);
        } else if (verify->parsed()) {
            cfg.command = "verify";
            rc = cmd_verify(cfg, buffer);
        } else if (fd->parsed()) {
            cfg.command = "fd";
            rc = cmd_fd(cfg, buffer);
        } else if (transform->parsed()) {
            cfg.command = "transform";
            rc = cmd_transform(cfg, buffer);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    if (cfg.out.empty()) {
        std::cout << buffer.str();
    } else {
        std::ofstream out(cfg.out, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot open " << cfg.out << "\n";
            return 2;
        }
        out << buffer.str();
    }
    return rc;
}

} // namespace susyline::cli
