#include "susyline/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace susyline {

namespace {
const HalfInt kOne = HalfInt::whole(1);

Rational half_of(HalfInt h) { return Rational(h.twice, 4); } // h/2 as a rational
} // namespace

TrigPoly TrigMultiplier::apply(const TrigPoly& p) const {
    TrigPoly out;
    for (const auto& s : shifts) out = out + p.mul_monomial(s.da, s.db, s.r);
    return out;
}

TrigMultiplier superpotential_w(HalfInt jz) {
    // tan(beta/2) = s c^{-1}, cot(beta/2) = s^{-1} c
    return {{{kOne, -kOne, half_of(jz)}, {-kOne, kOne, half_of(jz)}}};
}

TrigMultiplier ladder_k(Family family, HalfInt m) {
    Rational cot_coeff, tan_coeff;
    if (family == Family::upper) {
        cot_coeff = half_of(m - 1);
        tan_coeff = -half_of(m);
    } else {
        cot_coeff = half_of(m);
        tan_coeff = -half_of(m - 1);
    }
    return {{{-kOne, kOne, cot_coeff}, {kOne, -kOne, tan_coeff}}};
}

TrigPoly susy_a(HalfInt jz, const TrigPoly& p) {
    return p.differentiate() + superpotential_w(jz).apply(p);
}

TrigPoly susy_a_dagger(HalfInt jz, const TrigPoly& p) {
    return superpotential_w(jz).apply(p) - p.differentiate();
}

TrigPoly hamiltonian_apply(SectorParams params, const TrigPoly& p) {
    if (!params.jz.is_half_odd())
        throw std::invalid_argument("hamiltonian_apply: jz must be half-odd");

    const HalfInt jz = params.jz;
    TrigPoly composed = (params.sector == Sector::plus)
                            ? susy_a(jz, susy_a_dagger(jz, p))
                            : susy_a_dagger(jz, susy_a(jz, p));

    // direct Poschl-Teller form: -d^2 + (P/4) csc^2(beta/2) + (Q/4) sec^2(beta/2)
    Rational sz(params.sector == Sector::plus ? 1 : -1, 2);
    Rational jr = Rational::of(jz);
    Rational half(1, 2);
    Rational P = (jr - sz + half) * (jr - sz - half);
    Rational Q = (jr + sz + half) * (jr + sz - half);
    TrigPoly direct = -p.differentiate().differentiate()
                    + p.mul_monomial(HalfInt::whole(-2), HalfInt{}, P * Rational(1, 4))
                    + p.mul_monomial(HalfInt{}, HalfInt::whole(-2), Q * Rational(1, 4));

    if (!(composed - direct).is_zero())
        throw std::logic_error("hamiltonian_apply: composition and potential routes disagree");
    return composed;
}

SpinorState SpinorState::operator+(const SpinorState& o) const {
    if (jz != o.jz && !is_zero() && !o.is_zero())
        throw std::invalid_argument("SpinorState: adding states with different jz");
    return {is_zero() ? o.jz : jz, upper + o.upper, lower + o.lower};
}

SpinorState SpinorState::operator-(const SpinorState& o) const {
    return *this + o.scaled(Rational(-1));
}

bool SpinorState::operator==(const SpinorState& o) const {
    if (upper == o.upper && lower == o.lower) {
        return is_zero() || jz == o.jz;
    }
    return false;
}

double SpinorState::norm() const {
    return std::sqrt(upper.inner_product(upper) + lower.inner_product(lower));
}

SpinorState jplus_apply(const SpinorState& z) {
    HalfInt target = z.jz + 1;
    TrigPoly up = ladder_k(Family::upper, target).apply(z.upper) - z.upper.differentiate();
    TrigPoly lo = ladder_k(Family::lower, target).apply(z.lower) - z.lower.differentiate();
    return {target, up, lo};
}

SpinorState jminus_apply(const SpinorState& z) {
    TrigPoly up = ladder_k(Family::upper, z.jz).apply(z.upper) + z.upper.differentiate();
    TrigPoly lo = ladder_k(Family::lower, z.jz).apply(z.lower) + z.lower.differentiate();
    return {z.jz - 1, up, lo};
}

std::pair<HalfInt, SpinorState> jz_apply(const SpinorState& z) { return {z.jz, z}; }

SpinorState casimir_apply(const SpinorState& z) {
    SpinorState raised = jminus_apply(jplus_apply(z));
    Rational jzjz1 = Rational::of(z.jz) * (Rational::of(z.jz) + Rational(1));
    return raised + z.scaled(jzjz1);
}

SpinorState hamiltonian_apply(const SpinorState& z) {
    return {z.jz, hamiltonian_apply({z.jz, Sector::plus}, z.upper),
            hamiltonian_apply({z.jz, Sector::minus}, z.lower)};
}

} // namespace susyline
