#pragma once

#include <vector>

#include "susyline/halfint.hpp"
#include "susyline/rational.hpp"

namespace susyline {

/// One term  coeff * sin(beta/2)^a * cos(beta/2)^b.
/// Exponents are half-integers and may be negative or fractional; only
/// evaluation and integration restrict the domain, not the ring.
struct TrigMonomial {
    Rational coeff;
    HalfInt a, b;
};

/// Exact function of beta on (0, pi): a rational-coefficient sum of
/// monomials sin^a(beta/2) cos^b(beta/2).
///
/// Canonical form: terms sorted by (a, b) with nonzero coefficients, and
/// within each fractional-part class the s^2 -> 1 - c^2 reduction applied
/// (see canonicalized()). Equality of functions is decided by is_zero of
/// the difference; this is exact because sin(beta/2), cos(beta/2) > 0 on
/// the open interval.
class TrigPoly {
public:
    TrigPoly() = default;

    static TrigPoly zero() { return {}; }
    static TrigPoly one() { return monomial(Rational(1), HalfInt{}, HalfInt{}); }
    static TrigPoly monomial(Rational c, HalfInt a, HalfInt b);
    static TrigPoly from_terms(std::vector<TrigMonomial> terms);

    const std::vector<TrigMonomial>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    TrigPoly operator+(const TrigPoly& o) const;
    TrigPoly operator-(const TrigPoly& o) const;
    TrigPoly operator-() const;

    /// Multiply by r (exact).
    TrigPoly scaled(const Rational& r) const;
    /// Shift every exponent pair by (da, db) and scale by r; this is
    /// multiplication by r s^da c^db.
    TrigPoly mul_monomial(HalfInt da, HalfInt db, const Rational& r) const;

    /// d/dbeta, termwise: d[s^a c^b] = (a/2) s^{a-1} c^{b+1} - (b/2) s^{a+1} c^{b-1}.
    TrigPoly differentiate() const;

    /// Reduce to the class-wise normal form s^{a_min} c^{b_min} (P(c) + s Q(c))
    /// and re-expand. Idempotent; maps every representation of the zero
    /// function to the empty polynomial.
    TrigPoly canonicalized() const;

    /// Floating evaluation at beta. Outside (0, pi) only nonnegative integer
    /// exponents are meaningful; anything else raises std::domain_error.
    double eval_at(double beta) const;

    /// L2 pairing on (0, pi): integral of p q dbeta, computed termwise from
    /// int_0^pi s^A c^B dbeta = Beta((A+1)/2, (B+1)/2).
    /// Throws std::domain_error when a combined exponent is <= -1.
    double inner_product(const TrigPoly& q) const;

    /// True iff <p, p> converges: every class has minimal exponents
    /// a_min > -1/2 and b_min > -1/2.
    bool is_normalizable() const;

    /// Function equality (difference reduces to zero).
    bool operator==(const TrigPoly& o) const { return (*this - o).is_zero(); }

    std::string str() const;

private:
    // always kept canonical
    std::vector<TrigMonomial> terms_;
};

/// int_0^pi sin^A(beta/2) cos^B(beta/2) dbeta = Beta((A+1)/2, (B+1)/2),
/// via log-gamma. Throws std::domain_error when divergent (A or B <= -1).
double trig_monomial_integral(HalfInt A, HalfInt B);

/// Exact coordinates of a family of polynomials in a common linear basis of
/// the function space (class-wise {c^n, s c^n} after the s^2 reduction).
/// Column k holds the coordinates of polys[k]; linear dependence of the
/// returned columns over Q is exactly linear dependence of the functions.
std::vector<std::vector<Rational>> function_coordinates(const std::vector<TrigPoly>& polys);

} // namespace susyline
