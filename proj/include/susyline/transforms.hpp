#pragma once

#include <functional>
#include <vector>

#include "susyline/operators.hpp"

namespace susyline {

/// q = tan(beta/2) followed by p = q sqrt(-2 E~): the angular variable maps
/// the half-line of radial momenta onto (0, pi).
double beta_to_p(double beta, double e_tilde);
double p_to_beta(double p, double e_tilde);

/// Radial momentum-space spinor F_i(p) = Z_i(beta(p)) / (p^{1/2} alpha(p)),
/// alpha = p^2/2 - E~ > 0. The theta phases i^{-(jz -/+ 1/2)} of the Bessel
/// reduction are carried as integer powers of i so all samples stay real.
struct MomentumSpinor {
    HalfInt jz;
    double e_tilde;
    std::vector<double> p, f1, f2;
    int phase_power_upper, phase_power_lower; // exponent of i, mod 4
    SpinorState source;                       // exact state behind the samples
};

/// Sample a multiplet state on a log grid spanning [1e-3, 1e3] sqrt(-2 E~),
/// with E~ = -G^2 / (2 (j+1/2)^2). Throws std::invalid_argument for G <= 0.
MomentumSpinor momentum_spinor(const SpinorState& z, HalfInt j, double G, int samples = 241);

/// Relative L2 residuals of the coupled first-order momentum-space system
///   (d/dp - (jz-1/2)/p)(alpha F1) + G F2 = 0
///   (d/dp + (jz+1/2)/p)(alpha F2) - G F1 = 0
/// with d/dp taken analytically (exact ring derivative composed with
/// dbeta/dp), so the result probes roundoff, not discretization. The
/// undifferentiated coupling terms use the stored samples.
std::pair<double, double> coupled_residual(const MomentumSpinor& m, double G);

/// Convergence scan of int (F1^2 + F2^2) p dp under increasing tail cutoffs.
struct TailScan {
    double value;      // integral over the full grid
    double tail_ratio; // contribution of the last decade, relative
    bool converged;
};
TailScan momentum_norm_scan(const MomentumSpinor& m);

/// Sampled radial function on a strictly increasing positive grid.
struct RadialFunction {
    std::vector<double> x, y;
};

RadialFunction sample_radial(const std::function<double(double)>& f, double x_min,
                             double x_max, int count);

/// J_nu for nu > -1 plus negative integer orders by reflection.
double bessel_j(double nu, double x);

struct HankelOptions {
    double tolerance = 1e-9;  // absolute, relative to the integral scale
    int max_panels = 96;      // oscillation panels before extrapolation must settle
};

/// Hankel transform g(p) = int_0^inf rho f(rho) J_nu(p rho) drho, evaluated
/// on the grid of f. Panels follow the Bessel oscillation; the alternating
/// panel series is accelerated with a Wynn epsilon table. Throws
/// std::runtime_error when the accelerated tail fails to settle.
RadialFunction hankel(const RadialFunction& f, double nu, const HankelOptions& opt = {});

/// Relative L2 distance (weight x dx) of hankel(hankel(f)) from f;
/// the transform is its own inverse.
double hankel_roundtrip_error(const RadialFunction& f, double nu,
                              const HankelOptions& opt = {});

} // namespace susyline
