#include "susyline/checks.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "susyline/fdsolver.hpp"
#include "susyline/transforms.hpp"

namespace susyline::checks {

namespace {

const HalfInt kHalf = HalfInt::halves(1);

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

Rational eps_of(HalfInt j) {
    Rational r(j.twice + 1, 2);
    return r * r;
}

TrigPoly random_poly(std::mt19937& rng) {
    std::uniform_int_distribution<int> nterms(1, 3), expo(-2, 5), num(-4, 4), den(1, 4);
    std::vector<TrigMonomial> terms;
    int k = nterms(rng);
    for (int i = 0; i < k; ++i) {
        int n = num(rng);
        if (n == 0) n = 1;
        terms.push_back({Rational(n, den(rng)), HalfInt::from_twice(expo(rng)),
                         HalfInt::from_twice(expo(rng))});
    }
    return TrigPoly::from_terms(std::move(terms));
}

Rational square(const Rational& r) { return r * r; }

} // namespace

bool all_pass(const Report& r) {
    for (const auto& c : r)
        if (!c.pass) return false;
    return true;
}

Report multiplet_suite(HalfInt jmax) {
    Report rep;
    for (HalfInt j = kHalf; j <= jmax; j = j + 1) {
        std::string name = "multiplet[j=" + j.str() + "]";
        try {
            Multiplet m = build_multiplet(j); // exact internal checks throw on failure
            bool ok = m.size() == j.twice + 1;
            ok = ok && jplus_apply(m.states.back()).is_zero();
            ok = ok && jminus_apply(m.states.front()).is_zero();
            Rational jj1 = Rational::of(j) * (Rational::of(j) + Rational(1));
            for (const SpinorState& z : m.states) {
                ok = ok && jz_apply(z).first == z.jz;
                ok = ok && casimir_apply(z) == z.scaled(jj1);
                ok = ok && hamiltonian_apply(z) == z.scaled(m.epsilon);
            }
            rep.push_back({name, ok, ok ? "2j+1=" + std::to_string(m.size()) : "exact relation failed"});
        } catch (const std::exception& e) {
            rep.push_back({name, false, e.what()});
        }
    }
    return rep;
}

Report algebra_suite(HalfInt jmax, HalfInt factorization_jz_max, int n_random, unsigned seed) {
    Report rep;
    for (HalfInt j = kHalf; j <= jmax; j = j + 1) {
        Multiplet m = build_multiplet(j);
        bool comm = true, prod = true;
        for (const SpinorState& z : m.states) {
            Rational two_jz = Rational::of(z.jz) * Rational(2);
            comm = comm &&
                   (jplus_apply(jminus_apply(z)) - jminus_apply(jplus_apply(z))) == z.scaled(two_jz);
            // [Jz, J+-] = +-J+- through the label bookkeeping
            SpinorState up = jplus_apply(z), dn = jminus_apply(z);
            comm = comm && (up.scaled(Rational::of(up.jz)) - up.scaled(Rational::of(z.jz))) ==
                               up.scaled(Rational(1));
            comm = comm && (dn.scaled(Rational::of(dn.jz)) - dn.scaled(Rational::of(z.jz))) ==
                               dn.scaled(Rational(-1));

            SpinorState hz = hamiltonian_apply(z);
            Rational up_shift = square(Rational::of(z.jz) + Rational(1, 2));
            Rational dn_shift = square(Rational::of(z.jz) - Rational(1, 2));
            prod = prod && jminus_apply(jplus_apply(z)) == (hz - z.scaled(up_shift));
            prod = prod && jplus_apply(jminus_apply(z)) == (hz - z.scaled(dn_shift));
        }
        rep.push_back({"commutators[j=" + j.str() + "]", comm, ""});
        rep.push_back({"products[j=" + j.str() + "]", prod, ""});
    }

    std::mt19937 rng(seed);
    for (int t = -factorization_jz_max.twice; t <= factorization_jz_max.twice; t += 2) {
        HalfInt jz = HalfInt::from_twice(t);
        bool ok = true;
        for (int r = 0; r < n_random && ok; ++r) {
            TrigPoly p = random_poly(rng);
            for (Family fam : {Family::upper, Family::lower}) {
                Sector sec = (fam == Family::upper) ? Sector::plus : Sector::minus;
                TrigPoly hp = hamiltonian_apply({jz, sec}, p);

                // (-d + k(jz))(d + k(jz)) = H_jz - (jz - 1/2)^2
                TrigMultiplier k1 = ladder_k(fam, jz);
                TrigPoly inner = k1.apply(p) + p.differentiate();
                TrigPoly lhs1 = k1.apply(inner) - inner.differentiate();
                ok = ok && lhs1 == (hp - p.scaled(square(Rational::of(jz) - Rational(1, 2))));

                // (d + k(jz+1))(-d + k(jz+1)) = H_jz - (jz + 1/2)^2
                TrigMultiplier k2 = ladder_k(fam, jz + 1);
                TrigPoly inner2 = k2.apply(p) - p.differentiate();
                TrigPoly lhs2 = k2.apply(inner2) + inner2.differentiate();
                ok = ok && lhs2 == (hp - p.scaled(square(Rational::of(jz) + Rational(1, 2))));
            }
        }
        rep.push_back({"factorization[jz=" + jz.str() + "]", ok,
                       ok ? std::to_string(n_random) + " random elements" : "identity failed"});
    }
    return rep;
}

Report intertwine_suite(HalfInt jmax) {
    Report rep;
    for (HalfInt j = kHalf; j <= jmax; j = j + 1) {
        Multiplet m = build_multiplet(j);
        bool ok = true;
        for (const SpinorState& z : m.states) {
            ok = ok && susy_a(z.jz, susy_a_dagger(z.jz, z.upper)) == z.upper.scaled(m.epsilon);
            ok = ok && susy_a_dagger(z.jz, susy_a(z.jz, z.lower)) == z.lower.scaled(m.epsilon);
        }
        rep.push_back({"intertwine[j=" + j.str() + "]", ok, ""});
    }
    return rep;
}

Report ladder_suite(HalfInt jmax, double tol) {
    Report rep;
    for (HalfInt j = kHalf; j <= jmax; j = j + 1) {
        Multiplet m = build_multiplet(j);
        for (const LadderCoefficient& c : ladder_coefficient_check(m)) {
            bool ok = c.deviation < tol;
            rep.push_back({"ladder_coeff[" + j.str() + "," + c.jz.str() + "]", ok,
                           "dev" + std::string(ok ? "<" : ">=") + fmt(tol)});
        }
    }
    return rep;
}

Report spectrum_suite(HalfInt jmax, const std::vector<double>& gs, double rel_tol) {
    Report rep;
    for (double g : gs) {
        auto rows = spectrum_table(jmax, g, 0, 1.0);
        bool ok = true;
        double prev_eps = 0, prev_et = -std::numeric_limits<double>::infinity();
        for (const auto& row : rows) {
            Rational expect_eps = eps_of(row.j);
            ok = ok && row.epsilon == expect_eps;
            double jph = row.j.value() + 0.5;
            double expect_et = -g * g / (2 * jph * jph);
            ok = ok && std::abs(row.e_tilde - expect_et) <= rel_tol * std::abs(expect_et);
            ok = ok && row.degeneracy == row.j.twice + 1;
            ok = ok && row.e_tilde < 0;
            ok = ok && row.epsilon.to_double() > prev_eps && row.e_tilde > prev_et;
            prev_eps = row.epsilon.to_double();
            prev_et = row.e_tilde;
        }
        std::ostringstream gs_name;
        gs_name << "spectrum[G=" << g << "]";
        rep.push_back({gs_name.str(), ok, std::to_string(rows.size()) + " rows"});
    }
    return rep;
}

Report broken_susy_suite(HalfInt jz_max, const std::vector<HalfInt>& fd_jz, int fd_n,
                         double fd_rel_tol) {
    Report rep;
    for (int t = 1; t <= jz_max.twice; t += 2) {
        for (int sgn : {1, -1}) {
            HalfInt jz = HalfInt::from_twice(sgn * t);
            BrokenSusyReport r = broken_susy_report(jz, 2);
            bool ok = !r.candidate_normalizable && r.annihilated_by_a && r.partner_spectra_match;
            rep.push_back({"broken_susy[jz=" + jz.str() + "]", ok,
                           ok ? "zero mode non-normalizable" : "unexpected zero mode"});
        }
    }

    for (HalfInt jz : fd_jz) {
        Grid grid(fd_n);
        TridiagonalSym hm = assemble_h(jz, Sector::minus, grid);
        TridiagonalSym hp = assemble_h(jz, Sector::plus, grid);
        std::vector<double> em = eigen_lowest(hm, hm.dim());
        std::vector<double> ep = eigen_lowest(hp, hp.dim());
        // H+ carries one structural zero mode (the kernel of A^T); drop it
        double worst = 0;
        for (int i = 0; i < hm.dim(); ++i)
            worst = std::max(worst, std::abs(ep[i + 1] - em[i]) / std::abs(em[i]));
        bool zero_ok = std::abs(ep[0]) < 1e-10 * hp.norm_inf();
        bool ok = worst < fd_rel_tol && zero_ok;
        rep.push_back({"fd_isospectral[jz=" + jz.str() + "]", ok,
                       "max rel " + fmt(worst) + " over " + std::to_string(hm.dim()) + " pairs"});
    }
    return rep;
}

Report uniqueness_suite(HalfInt jmax, double ortho_tol) {
    Report rep;
    for (HalfInt j = kHalf; j <= jmax; j = j + 1) {
        bool ok = true;
        int width = j.twice + 4; // 2j + 4
        for (int t = -j.twice; t <= j.twice; t += 2) {
            HalfInt jz = HalfInt::from_twice(t);
            for (Sector s : {Sector::plus, Sector::minus}) {
                int dim = lattice_eigenspace_dimension({jz, s}, eps_of(j), width);
                ok = ok && dim == 1;
            }
        }
        rep.push_back({"kernel_unique[j=" + j.str() + "]", ok,
                       ok ? "dim ker(H-eps) = 1 in every sector" : "unexpected kernel dimension"});
    }

    // states of equal jz from different multiplets are orthogonal
    std::vector<Multiplet> ms;
    for (HalfInt j = kHalf; j <= jmax; j = j + 1) ms.push_back(build_multiplet(j));
    for (size_t i = 0; i < ms.size(); ++i)
        for (size_t k = i + 1; k < ms.size(); ++k) {
            bool ok = true;
            double worst = 0;
            for (const SpinorState& z : ms[i].states) {
                if (z.jz.abs() > ms[k].j) continue;
                const SpinorState& w = ms[k].at(z.jz);
                double ip = z.upper.inner_product(w.upper) + z.lower.inner_product(w.lower);
                double rel = std::abs(ip) / (z.norm() * w.norm());
                worst = std::max(worst, rel);
                ok = ok && rel < ortho_tol;
            }
            rep.push_back({"orthogonality[" + ms[i].j.str() + "," + ms[k].j.str() + "]", ok,
                           "max " + fmt(worst)});
        }
    return rep;
}

Report fd_convergence_suite(const std::vector<int>& ns, double abs_tol) {
    Report rep;

    ConvergenceStudy s1 = convergence_study(kHalf, Sector::minus, 3, ns, Scheme::envelope);
    double targets[3] = {1.0, 4.0, 9.0};
    for (int lev = 0; lev < 3; ++lev) {
        double err = std::abs(s1.levels[lev].extrapolated - targets[lev]);
        bool ok = err < abs_tol && s1.levels[lev].monotone_error;
        rep.push_back({"fd_convergence[jz=1/2,level=" + std::to_string(lev) + "]", ok,
                       "extrap " + fmt(s1.levels[lev].extrapolated) + " err " + fmt(err) +
                           " order " + fmt(s1.levels[lev].observed_order)});
    }

    ConvergenceStudy s3 =
        convergence_study(HalfInt::halves(3), Sector::minus, 3, ns, Scheme::envelope);
    double e0 = std::abs(s3.levels[0].extrapolated - 4.0);
    rep.push_back({"fd_convergence[jz=3/2,level=0]", e0 < abs_tol,
                   "extrap " + fmt(s3.levels[0].extrapolated)});

    // sector minimum: nothing near epsilon = 1 in the jz = 3/2 sector
    Grid g(ns.back());
    std::vector<double> low = eigen_lowest(assemble_h_envelope(HalfInt::halves(3), g), 3);
    bool clear = true;
    for (double v : low) clear = clear && std::abs(v - 1.0) > 0.5;
    rep.push_back({"fd_sector_minimum[jz=3/2]", clear,
                   "lowest " + fmt(low[0])});
    return rep;
}

Report transform_suite(HalfInt jmax, double g_coupling, double residual_tol, double hankel_tol) {
    Report rep;
    for (HalfInt j = kHalf; j <= jmax; j = j + 1) {
        Multiplet m = build_multiplet(j);
        for (const SpinorState& z : m.states) {
            MomentumSpinor ms = momentum_spinor(z, j, g_coupling);
            auto [r1, r2] = coupled_residual(ms, g_coupling);
            bool ok = r1 < residual_tol && r2 < residual_tol;
            rep.push_back({"transform_residual[" + j.str() + "," + z.jz.str() + "]", ok,
                           "r1 " + fmt(r1) + " r2 " + fmt(r2)});
        }
    }

    std::vector<std::pair<std::string, std::function<double(double)>>> suite = {
        {"exp", [](double r) { return std::exp(-r); }},
        {"r_gauss", [](double r) { return r * std::exp(-r * r); }},
        {"gauss", [](double r) { return std::exp(-r * r); }},
        {"r2_exp", [](double r) { return r * r * std::exp(-r); }},
        {"lorentz2", [](double r) { return 1.0 / ((1 + r * r) * (1 + r * r)); }},
    };
    for (double nu : {0.0, 1.0, 2.0}) {
        double worst = 0;
        for (const auto& [label, fn] : suite) {
            RadialFunction f = sample_radial(fn, 1e-4, 1e3, 640);
            worst = std::max(worst, hankel_roundtrip_error(f, nu));
        }
        bool ok = worst < hankel_tol;
        rep.push_back({"hankel_roundtrip[nu=" + std::to_string(int(nu)) + "]", ok,
                       "max rel " + fmt(worst) + " over 5 functions"});
    }

    // closed-form pair: exp(-r) <-> (1+p^2)^{-3/2} at order 0
    RadialFunction f = sample_radial([](double r) { return std::exp(-r); }, 1e-4, 1e3, 640);
    RadialFunction g = hankel(f, 0.0);
    long double num = 0, den = 0;
    for (size_t i = 0; i + 1 < g.x.size(); ++i) {
        double w = g.x[i] * (g.x[i + 1] - g.x[i]);
        double exact = std::pow(1.0 + g.x[i] * g.x[i], -1.5);
        num += w * (g.y[i] - exact) * (g.y[i] - exact);
        den += w * exact * exact;
    }
    double rel = std::sqrt(double(num / den));
    rep.push_back({"hankel_pair[nu=0]", rel < hankel_tol, "rel L2 " + fmt(rel)});
    return rep;
}

} // namespace susyline::checks
