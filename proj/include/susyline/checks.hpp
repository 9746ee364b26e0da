#pragma once

#include <string>
#include <vector>

#include "susyline/multiplets.hpp"

namespace susyline::checks {

struct Result {
    std::string name;
    bool pass;
    std::string detail;
};
using Report = std::vector<Result>;

bool all_pass(const Report& r);

/// Exact multiplet construction for j = 1/2 .. jmax: 2j+1 states,
/// H Z = (j+1/2)^2 Z, J^2 Z = j(j+1) Z, Jz Z = jz Z, top/bottom annihilation.
Report multiplet_suite(HalfInt jmax);

/// Commutator and product relations on every constructed state, plus the
/// factorization identities on random ring elements per jz sector.
Report algebra_suite(HalfInt jmax, HalfInt factorization_jz_max, int n_random, unsigned seed);

/// SUSY intertwining on every state: A A^+ Z1 = eps Z1, A^+ A Z2 = eps Z2.
Report intertwine_suite(HalfInt jmax);

/// Raising-coefficient norm ratios against sqrt(j(j+1) - jz(jz+1)).
Report ladder_suite(HalfInt jmax, double tol);

/// Spectrum table values for several couplings.
Report spectrum_suite(HalfInt jmax, const std::vector<double>& gs, double rel_tol);

/// Non-normalizable zero-mode candidates plus discrete partner isospectrality.
Report broken_susy_suite(HalfInt jz_max, const std::vector<HalfInt>& fd_jz, int fd_n,
                         double fd_rel_tol);

/// Eigenvalue-lattice uniqueness (kernel dimension 1) and cross-multiplet
/// orthogonality of equal-jz states.
Report uniqueness_suite(HalfInt jmax, double ortho_tol);

/// Richardson-extrapolated finite-difference eigenvalues against the exact
/// spectrum: jz = 1/2 lowest three near {1, 4, 9}, jz = 3/2 lowest near 4
/// with no spurious level near 1.
Report fd_convergence_suite(const std::vector<int>& ns, double abs_tol);

/// Momentum-space residuals of all multiplet states up to jmax, and the
/// Hankel self-inverse suite for orders 0, 1, 2.
Report transform_suite(HalfInt jmax, double g_coupling, double residual_tol,
                       double hankel_tol);

} // namespace susyline::checks
