#pragma once

#include <utility>
#include <vector>

#include "susyline/trigpoly.hpp"

namespace susyline {

enum class Sector { plus, minus }; // s_z = +1/2 acts on the upper component

/// (jz, s_z) label of one scalar radial problem.
struct SectorParams {
    HalfInt jz;
    Sector sector = Sector::plus;
};

/// Finite sum of monomial shifts: p -> sum_k r_k s^{da_k} c^{db_k} p.
/// Realizes the multiplication operators W and the ladder coefficients k,
/// whose tan/cot terms are single shifts in the ring.
struct TrigMultiplier {
    struct Shift {
        HalfInt da, db;
        Rational r;
    };
    std::vector<Shift> shifts;

    TrigPoly apply(const TrigPoly& p) const;
};

/// W = (jz/2)(tan(beta/2) + cot(beta/2)) = jz / sin(beta).
TrigMultiplier superpotential_w(HalfInt jz);

enum class Family { upper, lower };

/// Ladder coefficient functions:
///   k_upper(m) = ((m-1)/2) cot(beta/2) - (m/2) tan(beta/2)
///   k_lower(m) = (m/2) cot(beta/2) - ((m-1)/2) tan(beta/2)
/// These satisfy, per family and exactly in the ring,
///   (-d + k(m))(d + k(m)) = H_m - (m - 1/2)^2
///   (d + k(m+1))(-d + k(m+1)) = H_m - (m + 1/2)^2
TrigMultiplier ladder_k(Family family, HalfInt m);

/// A = d/dbeta + W and its formal adjoint A^+ = -d/dbeta + W.
TrigPoly susy_a(HalfInt jz, const TrigPoly& p);
TrigPoly susy_a_dagger(HalfInt jz, const TrigPoly& p);

/// Partner Hamiltonian H_{jz;+} = A A^+ (upper) or H_{jz;-} = A^+ A (lower).
/// Computed both by operator composition and by the direct potential
///   -d^2/dbeta^2 + (1/4)[ (jz-s+1/2)(jz-s-1/2) csc^2(beta/2)
///                       + (jz+s+1/2)(jz+s-1/2) sec^2(beta/2) ]
/// and the two routes are asserted exactly equal (std::logic_error on
/// mismatch: that would be an implementation bug, not bad input).
TrigPoly hamiltonian_apply(SectorParams params, const TrigPoly& p);

/// Two-component radial state. The theta phases e^{i(jz-1/2)theta} (upper)
/// and e^{i(jz+1/2)theta} (lower) are implicit in the jz label.
struct SpinorState {
    HalfInt jz;
    TrigPoly upper, lower;

    bool is_zero() const { return upper.is_zero() && lower.is_zero(); }
    SpinorState scaled(const Rational& r) const { return {jz, upper.scaled(r), lower.scaled(r)}; }
    /// component-wise sum; jz labels must agree
    SpinorState operator+(const SpinorState& o) const;
    SpinorState operator-(const SpinorState& o) const;
    bool operator==(const SpinorState& o) const;
    /// sqrt(<upper,upper> + <lower,lower>)
    double norm() const;
};

/// J+ : jz -> jz+1, acting as (-d + k_upper(jz+1)) on the upper component
/// and (-d + k_lower(jz+1)) on the lower. Raising evaluates the ladder
/// coefficients at the target jz; that is the unique index convention under
/// which highest-weight annihilation and intertwining hold exactly.
SpinorState jplus_apply(const SpinorState& z);

/// J- : jz -> jz-1, with (+d + k_upper(jz)) / (+d + k_lower(jz)).
SpinorState jminus_apply(const SpinorState& z);

/// Jz eigenrelation: the state is a Jz eigenstate with eigenvalue jz by
/// construction of the phase bookkeeping.
std::pair<HalfInt, SpinorState> jz_apply(const SpinorState& z);

/// J^2 = J- J+ + Jz(Jz + 1).
SpinorState casimir_apply(const SpinorState& z);

/// H acting on a spinor: sector (jz, +) on the upper component and
/// (jz, -) on the lower, dual-route checked.
SpinorState hamiltonian_apply(const SpinorState& z);

} // namespace susyline
