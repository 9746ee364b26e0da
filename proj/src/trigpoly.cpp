#include "susyline/trigpoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>

namespace susyline {

namespace {

// fractional-part class of an exponent pair: (a mod 1, b mod 1) as twice-values
int mod2(int t) { return ((t % 2) + 2) % 2; }
std::pair<int, int> class_key(const TrigMonomial& m) {
    return {mod2(m.a.twice), mod2(m.b.twice)};
}

bool term_less(const TrigMonomial& x, const TrigMonomial& y) {
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
}

BigInt binomial(int n, int k) {
    BigInt r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

// Reduce a class of terms, relative to (a_min, b_min), to P(c) + s Q(c):
// a term s^{a_min+m} c^{b_min+n} contributes (1-c^2)^{m/2} c^n to P for even m
// and (1-c^2)^{(m-1)/2} c^n to Q for odd m. Keys are c-powers.
struct ClassNormal {
    std::map<int, Rational> P, Q;
};

ClassNormal reduce_class(const std::vector<const TrigMonomial*>& terms,
                         HalfInt a_min, HalfInt b_min) {
    ClassNormal out;
    for (const TrigMonomial* t : terms) {
        int m = (t->a.twice - a_min.twice) / 2;
        int n = (t->b.twice - b_min.twice) / 2;
        if (m < 0 || n < 0) throw std::logic_error("reduce_class: offsets must be nonnegative");
        auto& target = (m % 2 == 0) ? out.P : out.Q;
        int u = m / 2;
        for (int k = 0; k <= u; ++k) {
            Rational c = t->coeff * Rational(((k % 2) ? BigInt(-1) : BigInt(1)) * binomial(u, k));
            auto [it, inserted] = target.emplace(n + 2 * k, c);
            if (!inserted) it->second += c;
        }
    }
    std::erase_if(out.P, [](const auto& kv) { return kv.second.is_zero(); });
    std::erase_if(out.Q, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
}

// exact division of P(c) by (1 - c^2); nullopt when not divisible
std::optional<std::map<int, Rational>> divide_one_minus_c2(const std::map<int, Rational>& p) {
    if (p.empty()) return std::map<int, Rational>{};
    int deg = p.rbegin()->first;
    if (deg < 2) return std::nullopt;
    std::vector<Rational> a(deg + 1);
    for (const auto& [k, v] : p) a[k] = v;
    std::map<int, Rational> q;
    for (int k = deg; k >= 2; --k) {
        if (a[k].is_zero()) continue;
        Rational qc = -a[k]; // leading coefficient of (1 - c^2) at degree 2 is -1
        q[k - 2] = qc;
        a[k] = Rational(0);
        a[k - 2] -= qc;
    }
    if (!a[0].is_zero() || !a[1].is_zero()) return std::nullopt;
    return q;
}

// The raw class minima can be polluted by terms that cancel during the
// reduction; pull the base exponents up to the true leading behavior so the
// canonical form is minimal (s-direction: absorb (1-c^2) factors back into
// s^2 and fix the parity; c-direction: strip common powers of c).
void minimize_base(ClassNormal& nf, HalfInt& a_min, HalfInt& b_min) {
    while (!(nf.P.empty() && nf.Q.empty())) {
        if (nf.P.empty()) {
            nf.P = std::move(nf.Q);
            nf.Q.clear();
            a_min = a_min + 1;
            continue;
        }
        auto quotient = divide_one_minus_c2(nf.P);
        if (!quotient) break;
        nf.P = std::move(nf.Q);
        nf.Q = std::move(*quotient);
        a_min = a_min + 1;
    }
    if (nf.P.empty() && nf.Q.empty()) return;
    int vmin = std::numeric_limits<int>::max();
    for (const auto& [k, v] : nf.P) vmin = std::min(vmin, k);
    for (const auto& [k, v] : nf.Q) vmin = std::min(vmin, k);
    if (vmin > 0) {
        std::map<int, Rational> p2, q2;
        for (auto& [k, v] : nf.P) p2.emplace(k - vmin, std::move(v));
        for (auto& [k, v] : nf.Q) q2.emplace(k - vmin, std::move(v));
        nf.P = std::move(p2);
        nf.Q = std::move(q2);
        b_min = b_min + vmin;
    }
}

using ClassMap = std::map<std::pair<int, int>, std::vector<const TrigMonomial*>>;

ClassMap group_classes(const std::vector<TrigMonomial>& terms) {
    ClassMap classes;
    for (const auto& t : terms)
        if (!t.coeff.is_zero()) classes[class_key(t)].push_back(&t);
    return classes;
}

void class_mins(const std::vector<const TrigMonomial*>& terms, HalfInt& a_min, HalfInt& b_min) {
    a_min = terms.front()->a;
    b_min = terms.front()->b;
    for (const TrigMonomial* t : terms) {
        a_min = std::min(a_min, t->a);
        b_min = std::min(b_min, t->b);
    }
}

} // namespace

TrigPoly TrigPoly::monomial(Rational c, HalfInt a, HalfInt b) {
    TrigPoly p;
    if (!c.is_zero()) p.terms_.push_back({std::move(c), a, b});
    return p;
}

TrigPoly TrigPoly::from_terms(std::vector<TrigMonomial> terms) {
    TrigPoly p;
    p.terms_ = std::move(terms);
    return p.canonicalized();
}

TrigPoly TrigPoly::canonicalized() const {
    std::vector<TrigMonomial> out;
    for (const auto& [key, members] : group_classes(terms_)) {
        HalfInt a_min, b_min;
        class_mins(members, a_min, b_min);
        ClassNormal nf = reduce_class(members, a_min, b_min);
        minimize_base(nf, a_min, b_min);
        for (const auto& [n, coeff] : nf.P)
            out.push_back({coeff, a_min, b_min + n});
        for (const auto& [n, coeff] : nf.Q)
            out.push_back({coeff, a_min + 1, b_min + n});
    }
    std::sort(out.begin(), out.end(), term_less);
    TrigPoly p;
    p.terms_ = std::move(out);
    return p;
}

TrigPoly TrigPoly::operator+(const TrigPoly& o) const {
    std::vector<TrigMonomial> all = terms_;
    all.insert(all.end(), o.terms_.begin(), o.terms_.end());
    return from_terms(std::move(all));
}

TrigPoly TrigPoly::operator-(const TrigPoly& o) const { return *this + o.scaled(Rational(-1)); }

TrigPoly TrigPoly::operator-() const { return scaled(Rational(-1)); }

TrigPoly TrigPoly::scaled(const Rational& r) const {
    if (r.is_zero()) return {};
    TrigPoly p;
    p.terms_ = terms_;
    for (auto& t : p.terms_) t.coeff *= r;
    return p;
}

TrigPoly TrigPoly::mul_monomial(HalfInt da, HalfInt db, const Rational& r) const {
    if (r.is_zero()) return {};
    std::vector<TrigMonomial> out = terms_;
    for (auto& t : out) {
        t.coeff *= r;
        t.a = t.a + da;
        t.b = t.b + db;
    }
    return from_terms(std::move(out));
}

TrigPoly TrigPoly::differentiate() const {
    std::vector<TrigMonomial> out;
    out.reserve(2 * terms_.size());
    for (const auto& t : terms_) {
        Rational ca = t.coeff * Rational(t.a.twice, 4); // a/2
        Rational cb = t.coeff * Rational(-t.b.twice, 4); // -b/2
        if (!ca.is_zero()) out.push_back({ca, t.a - 1, t.b + 1});
        if (!cb.is_zero()) out.push_back({cb, t.a + 1, t.b - 1});
    }
    return from_terms(std::move(out));
}

double TrigPoly::eval_at(double beta) const {
    const double pi = std::numbers::pi;
    bool interior = beta > 0.0 && beta < pi;
    if (!interior) {
        for (const auto& t : terms_)
            if (t.a.twice < 0 || t.b.twice < 0 || !t.a.is_integer() || !t.b.is_integer())
                throw std::domain_error("TrigPoly::eval_at: beta outside (0, pi) with "
                                        "negative or fractional exponent");
    }
    double s = std::sin(beta / 2), c = std::cos(beta / 2);
    long double acc = 0;
    for (const auto& t : terms_) {
        double sa = (t.a.twice == 0) ? 1.0 : std::pow(s, t.a.value());
        double cb = (t.b.twice == 0) ? 1.0 : std::pow(c, t.b.value());
        acc += static_cast<long double>(t.coeff.to_double()) * sa * cb;
    }
    return static_cast<double>(acc);
}

double trig_monomial_integral(HalfInt A, HalfInt B) {
    double x = (A.value() + 1) / 2, y = (B.value() + 1) / 2;
    if (x <= 0 || y <= 0)
        throw std::domain_error("trig_monomial_integral: divergent (exponent <= -1)");
    return std::exp(std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y));
}

namespace {

BigInt factorial(int n) {
    BigInt r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

// For nonnegative integer exponents the Beta integral is exactly
//   rational  (some odd exponent)   or   rational * pi  (both even),
// so norms of the exact eigenstates can be accumulated without rounding.
// The chains concentrate huge cancelling coefficients, and summing rounded
// log-gamma values there costs several digits.
void exact_monomial_integral(int A, int B, Rational& unit, Rational& pi_part) {
    unit = Rational(0);
    pi_part = Rational(0);
    if (A % 2 == 1 && B % 2 == 1) {
        int x = (A + 1) / 2, y = (B + 1) / 2;
        unit = Rational(factorial(x - 1) * factorial(y - 1), factorial(x + y - 1));
    } else if (A % 2 == 0 && B % 2 == 0) {
        int a = A / 2, b = B / 2;
        BigInt four_pow = BigInt(1) << (2 * (a + b));
        pi_part = Rational(factorial(2 * a) * factorial(2 * b),
                           four_pow * factorial(a) * factorial(b) * factorial(a + b));
    } else {
        int even = (A % 2 == 0) ? A : B;
        int odd = (A % 2 == 0) ? B : A;
        int a = even / 2, m = (odd + 1) / 2;
        BigInt denom = 1;
        for (int k = 0; k < m; ++k) denom *= (2 * a + 1 + 2 * k);
        unit = Rational(factorial(m - 1) * (BigInt(1) << m), denom);
    }
}

} // namespace

double TrigPoly::inner_product(const TrigPoly& q) const {
    Rational unit_acc(0), pi_acc(0);
    long double general = 0;
    for (const auto& tp : terms_)
        for (const auto& tq : q.terms_) {
            HalfInt A = tp.a + tq.a, B = tp.b + tq.b;
            if (A.is_integer() && B.is_integer() && A.twice >= 0 && B.twice >= 0) {
                Rational u, p;
                exact_monomial_integral(A.twice / 2, B.twice / 2, u, p);
                Rational cc = tp.coeff * tq.coeff;
                unit_acc += cc * u;
                pi_acc += cc * p;
            } else {
                double w = trig_monomial_integral(A, B);
                general +=
                    static_cast<long double>(tp.coeff.to_double()) * tq.coeff.to_double() * w;
            }
        }
    return unit_acc.to_double() + pi_acc.to_double() * std::numbers::pi +
           static_cast<double>(general);
}

bool TrigPoly::is_normalizable() const {
    for (const auto& [key, members] : group_classes(terms_)) {
        HalfInt a_min, b_min;
        class_mins(members, a_min, b_min);
        if (a_min.twice < 0 || b_min.twice < 0) return false;
    }
    return true;
}

std::string TrigPoly::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < terms_.size(); ++i) {
        const auto& t = terms_[i];
        if (i) s += " + ";
        s += t.coeff.str();
        if (t.a.twice != 0) s += " s^{" + t.a.str() + "}";
        if (t.b.twice != 0) s += " c^{" + t.b.str() + "}";
    }
    return s;
}

std::vector<std::vector<Rational>> function_coordinates(const std::vector<TrigPoly>& polys) {
    // global per-class minima across the whole family
    std::map<std::pair<int, int>, std::pair<HalfInt, HalfInt>> mins;
    for (const auto& p : polys)
        for (const auto& t : p.terms()) {
            auto key = class_key(t);
            auto it = mins.find(key);
            if (it == mins.end()) {
                mins.emplace(key, std::make_pair(t.a, t.b));
            } else {
                it->second.first = std::min(it->second.first, t.a);
                it->second.second = std::min(it->second.second, t.b);
            }
        }

    // basis index: (class, parity in {0,1}, c-power)
    std::map<std::tuple<int, int, int, int>, int> index;
    std::vector<ClassNormal> reduced(polys.size());
    std::vector<ClassMap> grouped(polys.size());
    for (size_t k = 0; k < polys.size(); ++k) {
        grouped[k] = group_classes(polys[k].terms());
        for (const auto& [key, members] : grouped[k]) {
            auto [a_min, b_min] = mins.at(key);
            ClassNormal nf = reduce_class(members, a_min, b_min);
            for (const auto& [n, c] : nf.P)
                index.try_emplace({key.first, key.second, 0, n}, 0);
            for (const auto& [n, c] : nf.Q)
                index.try_emplace({key.first, key.second, 1, n}, 0);
        }
    }
    int rows = 0;
    for (auto& [k, v] : index) v = rows++;

    std::vector<std::vector<Rational>> cols(polys.size(), std::vector<Rational>(rows));
    for (size_t k = 0; k < polys.size(); ++k) {
        for (const auto& [key, members] : grouped[k]) {
            auto [a_min, b_min] = mins.at(key);
            ClassNormal nf = reduce_class(members, a_min, b_min);
            for (const auto& [n, c] : nf.P)
                cols[k][index.at({key.first, key.second, 0, n})] = c;
            for (const auto& [n, c] : nf.Q)
                cols[k][index.at({key.first, key.second, 1, n})] = c;
        }
    }
    return cols;
}

} // namespace susyline
