#pragma once

#include <vector>

#include "susyline/operators.hpp"

namespace susyline {

/// The 2j+1 degenerate states of level epsilon_j = (j+1/2)^2, built by
/// highest-weight annihilation and J- descent. States are stored with the
/// raw rational normalization of the descent chain (Condon-Shortley signs);
/// on that chain J+ Z_{jz} = (j(j+1) - jz(jz+1)) Z_{jz+1} holds exactly.
struct Multiplet {
    HalfInt j;
    Rational epsilon;               // (j+1/2)^2, exact
    std::vector<SpinorState> states; // index 0 <-> jz = -j, ascending

    const SpinorState& at(HalfInt jz) const;
    int size() const { return static_cast<int>(states.size()); }
};

/// Normalizable endpoint exponents (gamma, delta) of sector (jz, s):
/// gamma = |jz - s| + 1/2 at beta = 0, delta = |jz + s| + 1/2 at beta = pi.
std::pair<HalfInt, HalfInt> indicial_exponents(SectorParams params);

/// Z_{j,j}: the upper component solves (-d + k_upper(j+1)) phi = 0 on the
/// exponent lattice (solved exactly; the kernel is one-dimensional), the
/// lower is A^+ phi / (j+1/2). Verifies annihilation and the H-eigenrelation,
/// throws std::runtime_error if either fails.
SpinorState build_highest_weight(HalfInt j);

/// Full ladder-descent construction with built-in exact checks:
/// 2j+1 states, bottom annihilation, H Z = (j+1/2)^2 Z on every component,
/// and J+ Z_{jz} = (j(j+1)-jz(jz+1)) Z_{jz+1} with positive coefficients.
Multiplet build_multiplet(HalfInt j);

struct LadderCoefficient {
    HalfInt jz;
    double ratio;      // ||J+ Z_{j,jz}|| / ||Z_{j,jz}||
    double expected;   // sqrt(j(j+1) - jz(jz+1))
    double deviation;  // |ratio - expected|
};

/// Norm-ratio check of the raising coefficients for every jz < j.
std::vector<LadderCoefficient> ladder_coefficient_check(const Multiplet& m);

struct SpectrumRow {
    HalfInt j;
    Rational epsilon;  // (j+1/2)^2
    double e_tilde;    // -G^2 / (2 (j+1/2)^2)
    double e_total;    // e_tilde + 2 pi k^2 / L^2
    long degeneracy;   // 2j+1
};

/// Bound-state table for j = 1/2, 3/2, ..., j_max.
/// Throws std::invalid_argument for G <= 0, L <= 0 or j_max < 1/2.
std::vector<SpectrumRow> spectrum_table(HalfInt j_max, double G, long k, double L);

struct BrokenSusyReport {
    HalfInt jz;
    TrigPoly candidate;            // (sin(beta/2))^{-jz} (cos(beta/2))^{jz}
    bool candidate_normalizable;   // false for every half-odd jz
    bool annihilated_by_a;         // A(jz) candidate = 0 in the ring
    std::vector<Rational> sector_spectrum; // (n^2 for n = |jz|+1/2, ...), both partners
    bool partner_spectra_match;    // eps^- = eps^+, no unpaired zero mode
};

/// The formal zero mode of H_- and why supersymmetry is broken: the
/// candidate is annihilated by A but is never normalizable, so the partner
/// spectra coincide with no unpaired ground state.
BrokenSusyReport broken_susy_report(HalfInt jz, int levels = 4);

/// Exact dimension of ker(H - eps) restricted to the invariant exponent
/// lattice s^{gamma+2k} c^{sigma-gamma-2k} of the sector, with sigma chosen
/// so the lattice holds `width` monomials. H preserves the lattice as
/// functions and acts tridiagonally on it; the kernel is computed by exact
/// rational elimination. This is the uniqueness oracle for the multiplet
/// construction.
int lattice_eigenspace_dimension(SectorParams params, const Rational& eps, int width);

} // namespace susyline
