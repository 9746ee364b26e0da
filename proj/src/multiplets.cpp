#include "susyline/multiplets.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "susyline/exactlin.hpp"

namespace susyline {

namespace {

const HalfInt kHalf = HalfInt::halves(1);

Rational epsilon_of(HalfInt j) {
    Rational r(j.twice + 1, 2); // j + 1/2
    return r * r;
}

Rational jj1(HalfInt j) { return Rational::of(j) * (Rational::of(j) + Rational(1)); }

void require(bool ok, const char* what) {
    if (!ok) throw std::runtime_error(std::string("multiplet construction failed: ") + what);
}

} // namespace

const SpinorState& Multiplet::at(HalfInt jz) const {
    int idx = (jz.twice + j.twice) / 2;
    if (jz.twice < -j.twice || jz.twice > j.twice || (jz.twice + j.twice) % 2 != 0)
        throw std::out_of_range("Multiplet::at: jz outside -j..j");
    return states[idx];
}

std::pair<HalfInt, HalfInt> indicial_exponents(SectorParams params) {
    if (!params.jz.is_half_odd())
        throw std::invalid_argument("indicial_exponents: jz must be half-odd");
    HalfInt sz = HalfInt::halves(params.sector == Sector::plus ? 1 : -1);
    return {(params.jz - sz).abs() + kHalf, (params.jz + sz).abs() + kHalf};
}

SpinorState build_highest_weight(HalfInt j) {
    if (!j.is_half_odd() || j.twice < 1)
        throw std::invalid_argument("build_highest_weight: j must be half-odd positive");

    // Solve (-d + k_upper(j+1)) phi = 0 on the degree-preserving lattice
    // s^{gamma+2k} c^{sigma-gamma-2k}; the kernel must be one-dimensional.
    auto [gamma, delta] = indicial_exponents({j, Sector::plus});
    const int width = 3;
    TrigMultiplier k_up = ladder_k(Family::upper, j + 1);
    std::vector<TrigPoly> basis, images;
    for (int k = 0; k < width; ++k) {
        TrigPoly m = TrigPoly::monomial(Rational(1), gamma + 2 * k, delta - 2 * k);
        basis.push_back(m);
        images.push_back(k_up.apply(m) - m.differentiate());
    }
    auto cols = function_coordinates(images);
    RationalMatrix mat(cols[0].size(), std::vector<Rational>(width));
    for (int c = 0; c < width; ++c)
        for (size_t r = 0; r < cols[c].size(); ++r) mat[r][c] = cols[c][r];
    auto kernel = rational_kernel(mat, width);
    require(kernel.size() == 1, "annihilation kernel is not one-dimensional");

    TrigPoly phi_up;
    for (int k = 0; k < width; ++k)
        phi_up = phi_up + basis[k].scaled(kernel[0][k]);
    // fix the overall sign/scale: lowest monomial coefficient +1
    require(!phi_up.is_zero(), "empty annihilation solution");
    phi_up = phi_up.scaled(Rational(1) / phi_up.terms().front().coeff);

    require((k_up.apply(phi_up) - phi_up.differentiate()).is_zero(),
            "upper component not annihilated by J+");

    Rational eps = epsilon_of(j);
    Rational sqrt_eps(j.twice + 1, 2); // j + 1/2
    TrigPoly phi_lo = susy_a_dagger(j, phi_up).scaled(Rational(1) / sqrt_eps);

    TrigMultiplier k_lo = ladder_k(Family::lower, j + 1);
    require((k_lo.apply(phi_lo) - phi_lo.differentiate()).is_zero(),
            "lower component not annihilated by J+");
    require(hamiltonian_apply({j, Sector::plus}, phi_up) == phi_up.scaled(eps),
            "upper H-eigenrelation");
    require(hamiltonian_apply({j, Sector::minus}, phi_lo) == phi_lo.scaled(eps),
            "lower H-eigenrelation");

    return {j, phi_up, phi_lo};
}

Multiplet build_multiplet(HalfInt j) {
    SpinorState top = build_highest_weight(j);
    Rational eps = epsilon_of(j);

    int count = j.twice + 1; // 2j + 1
    std::vector<SpinorState> states(count);
    states[count - 1] = top;
    for (int i = count - 2; i >= 0; --i)
        states[i] = jminus_apply(states[i + 1]);

    require(jminus_apply(states[0]).is_zero(), "bottom state not annihilated by J-");

    for (const SpinorState& z : states) {
        require(hamiltonian_apply(z) == SpinorState{z.jz, z.upper.scaled(eps), z.lower.scaled(eps)},
                "H-eigenrelation on a descended state");
        // Condon-Shortley: raising must reproduce the state above with the
        // positive coefficient j(j+1) - jz(jz+1)
        if (z.jz < j) {
            Rational mu = jj1(j) - Rational::of(z.jz) * (Rational::of(z.jz) + Rational(1));
            require(mu.sign() > 0, "nonpositive raising coefficient");
            int above = (z.jz.twice + j.twice) / 2 + 1;
            require(jplus_apply(z) == states[above].scaled(mu),
                    "raising does not match the stored chain");
        }
    }
    return {j, eps, std::move(states)};
}

std::vector<LadderCoefficient> ladder_coefficient_check(const Multiplet& m) {
    std::vector<LadderCoefficient> out;
    for (const SpinorState& z : m.states) {
        if (z.jz >= m.j) continue;
        double ratio = jplus_apply(z).norm() / z.norm();
        double expected =
            std::sqrt((jj1(m.j) - Rational::of(z.jz) * (Rational::of(z.jz) + Rational(1))).to_double());
        out.push_back({z.jz, ratio, expected, std::abs(ratio - expected)});
    }
    return out;
}

std::vector<SpectrumRow> spectrum_table(HalfInt j_max, double G, long k, double L) {
    if (!(G > 0)) throw std::invalid_argument("spectrum_table: G must be positive");
    if (!(L > 0)) throw std::invalid_argument("spectrum_table: L must be positive");
    if (j_max.twice < 1) throw std::invalid_argument("spectrum_table: j_max must be >= 1/2");

    std::vector<SpectrumRow> rows;
    for (HalfInt j = kHalf; j <= j_max; j = j + 1) {
        Rational eps = epsilon_of(j);
        double e_tilde = -G * G / (2.0 * eps.to_double());
        double e_total = e_tilde + 2.0 * std::numbers::pi * double(k) * double(k) / (L * L);
        rows.push_back({j, eps, e_tilde, e_total, j.twice + 1});
    }
    return rows;
}

BrokenSusyReport broken_susy_report(HalfInt jz, int levels) {
    if (!jz.is_half_odd())
        throw std::invalid_argument("broken_susy_report: jz must be half-odd");

    BrokenSusyReport rep;
    rep.jz = jz;
    rep.candidate = TrigPoly::monomial(Rational(1), -jz, jz);
    rep.candidate_normalizable = rep.candidate.is_normalizable();
    rep.annihilated_by_a = susy_a(jz, rep.candidate).is_zero();

    // levels shared by both partners: eps = (m + 1/2)^2 for m = |jz|, |jz|+1, ...
    rep.partner_spectra_match = true;
    HalfInt m = jz.abs();
    for (int i = 0; i < levels; ++i, m = m + 1) {
        rep.sector_spectrum.push_back(epsilon_of(m));
        Multiplet mult = build_multiplet(m); // throws if the level is not exact
        const SpinorState& z = mult.at(jz);
        // pairing: the level is present in both partner sectors
        if (z.upper.is_zero() || z.lower.is_zero()) rep.partner_spectra_match = false;
    }
    return rep;
}

int lattice_eigenspace_dimension(SectorParams params, const Rational& eps, int width) {
    if (width < 1) throw std::invalid_argument("lattice_eigenspace_dimension: width >= 1");
    auto [gamma, delta] = indicial_exponents(params);

    std::vector<TrigPoly> images;
    for (int k = 0; k < width; ++k) {
        TrigPoly m = TrigPoly::monomial(Rational(1), gamma + 2 * k,
                                        delta + 2 * (width - 1) - 2 * k);
        images.push_back(hamiltonian_apply(params, m) - m.scaled(eps));
    }
    auto cols = function_coordinates(images);
    RationalMatrix mat(cols[0].size(), std::vector<Rational>(width));
    for (int c = 0; c < width; ++c)
        for (size_t r = 0; r < cols[c].size(); ++r) mat[r][c] = cols[c][r];
    return width - rational_rank(std::move(mat));
}

} // namespace susyline
