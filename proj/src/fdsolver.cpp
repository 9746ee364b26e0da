#include "susyline/fdsolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace susyline {

namespace {
constexpr double kPi = std::numbers::pi;
}

Grid::Grid(int n_) : n(n_), h(kPi / (n_ + 1)) {
    if (n_ < 1) throw std::invalid_argument("Grid: n must be positive");
}

double TridiagonalSym::norm_inf() const {
    double m = 0;
    for (int i = 0; i < dim(); ++i) {
        double row = std::abs(diag[i]);
        if (i > 0) row += std::abs(off[i - 1]);
        if (i + 1 < dim()) row += std::abs(off[i]);
        m = std::max(m, row);
    }
    return m;
}

std::vector<double> StaggeredA::apply(const std::vector<double>& f) const {
    if (static_cast<int>(f.size()) != n)
        throw std::invalid_argument("StaggeredA::apply: size mismatch");
    std::vector<double> out(n + 1, 0.0);
    for (int i = 0; i <= n; ++i) {
        double v = 0;
        if (i >= 1) v += lo[i] * f[i - 1];
        if (i <= n - 1) v += hi[i] * f[i];
        out[i] = v;
    }
    return out;
}

StaggeredA discretize_a(HalfInt jz, const Grid& grid) {
    if (!jz.is_half_odd()) throw std::invalid_argument("discretize_a: jz must be half-odd");
    StaggeredA a;
    a.n = grid.n;
    a.h = grid.h;
    a.lo.resize(grid.n + 1);
    a.hi.resize(grid.n + 1);
    for (int i = 0; i <= grid.n; ++i) {
        double w = jz.value() / std::sin(grid.dual(i));
        a.lo[i] = -1.0 / grid.h + w / 2.0;
        a.hi[i] = 1.0 / grid.h + w / 2.0;
    }
    return a;
}

TridiagonalSym assemble_h(HalfInt jz, Sector sector, const Grid& grid) {
    StaggeredA a = discretize_a(jz, grid);
    TridiagonalSym t;
    if (sector == Sector::minus) {
        // A^T A on the primal nodes
        t.diag.resize(grid.n);
        t.off.resize(grid.n - 1);
        for (int k = 1; k <= grid.n; ++k)
            t.diag[k - 1] = a.hi[k - 1] * a.hi[k - 1] + a.lo[k] * a.lo[k];
        for (int k = 1; k <= grid.n - 1; ++k)
            t.off[k - 1] = a.lo[k] * a.hi[k];
    } else {
        // A A^T on the dual nodes; boundary columns are Dirichlet-dropped
        t.diag.resize(grid.n + 1);
        t.off.resize(grid.n);
        for (int i = 0; i <= grid.n; ++i) {
            double d = 0;
            if (i >= 1) d += a.lo[i] * a.lo[i];
            if (i <= grid.n - 1) d += a.hi[i] * a.hi[i];
            t.diag[i] = d;
        }
        for (int i = 0; i <= grid.n - 1; ++i) t.off[i] = a.hi[i] * a.lo[i + 1];
    }
    return t;
}

namespace {

// envelope weights for the reduced sector (m, -), m = |jz| > 0:
// mass weight  wm^2 = sin^{2m+2}(x/2) cos^{2m}(x/2)
// image weight wp^2 = sin^{2m}(x/2) cos^{2m+2}(x/2)
struct EnvelopeParts {
    std::vector<double> blo, bhi; // row i over unknowns g_1..g_{n+1}
    std::vector<double> wp;       // h * wp^2 at dual nodes
    std::vector<double> dmass;    // lumped mass per unknown
};

EnvelopeParts envelope_parts(double m, const Grid& grid) {
    int n = grid.n;
    EnvelopeParts e;
    e.blo.resize(n + 1);
    e.bhi.resize(n + 1);
    e.wp.resize(n + 1);
    e.dmass.assign(n + 1, 0.0);
    for (int i = 0; i <= n; ++i) {
        double x = grid.dual(i);
        double s = std::sin(x / 2), c = std::cos(x / 2);
        double tn = std::tan(x / 2);
        e.blo[i] = -tn / grid.h + (m + 0.5) / 2.0;
        e.bhi[i] = tn / grid.h + (m + 0.5) / 2.0;
        e.wp[i] = grid.h * std::pow(s, 2 * m) * std::pow(c, 2 * m + 2);
        double wm2 = std::pow(s, 2 * m + 2) * std::pow(c, 2 * m);
        // half-cell lumping onto the two adjacent unknowns (g_0 is dropped)
        if (i >= 1) e.dmass[i - 1] += grid.h / 2.0 * wm2;
        e.dmass[i] += grid.h / 2.0 * wm2;
    }
    return e;
}

} // namespace

TridiagonalSym assemble_h_envelope(HalfInt jz, const Grid& grid) {
    if (!jz.is_half_odd()) throw std::invalid_argument("assemble_h_envelope: jz must be half-odd");
    double m = jz.abs().value();
    EnvelopeParts e = envelope_parts(m, grid);
    int n = grid.n;

    // K = B^T Wp B over unknowns g_1..g_{n+1}; row i couples g_i, g_{i+1}
    std::vector<double> kd(n + 1, 0.0), ke(n, 0.0);
    for (int i = 0; i <= n; ++i) {
        if (i >= 1) {
            kd[i - 1] += e.wp[i] * e.blo[i] * e.blo[i];
            ke[i - 1] += e.wp[i] * e.blo[i] * e.bhi[i];
        }
        kd[i] += e.wp[i] * e.bhi[i] * e.bhi[i];
    }
    TridiagonalSym t;
    t.diag.resize(n + 1);
    t.off.resize(n);
    for (int k = 0; k <= n; ++k) t.diag[k] = kd[k] / e.dmass[k];
    for (int k = 0; k < n; ++k) t.off[k] = ke[k] / std::sqrt(e.dmass[k] * e.dmass[k + 1]);
    return t;
}

int sturm_count(const TridiagonalSym& t, double x) {
    const int m = t.dim();
    double maxoff2 = 0;
    for (double e : t.off) maxoff2 = std::max(maxoff2, e * e);
    const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, maxoff2);

    int count = 0;
    double d = t.diag[0] - x;
    if (std::abs(d) < pivmin) d = -pivmin;
    if (d < 0) ++count;
    for (int k = 1; k < m; ++k) {
        d = (t.diag[k] - x) - t.off[k - 1] * t.off[k - 1] / d;
        if (std::abs(d) < pivmin) d = -pivmin;
        if (d < 0) ++count;
    }
    return count;
}

std::vector<double> eigen_lowest(const TridiagonalSym& t, int levels) {
    if (levels < 0 || levels > t.dim())
        throw std::invalid_argument("eigen_lowest: levels exceeds matrix dimension");

    // Gershgorin enclosure
    double lo = t.diag[0], hi = t.diag[0];
    for (int i = 0; i < t.dim(); ++i) {
        double r = 0;
        if (i > 0) r += std::abs(t.off[i - 1]);
        if (i + 1 < t.dim()) r += std::abs(t.off[i]);
        lo = std::min(lo, t.diag[i] - r);
        hi = std::max(hi, t.diag[i] + r);
    }
    hi = std::nextafter(hi, std::numeric_limits<double>::infinity());

    std::vector<double> out(levels);
    double floor = lo;
    for (int k = 0; k < levels; ++k) {
        double a = floor, b = hi;
        // invariant: count(a) <= k < count(b)
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b) break;
            if (sturm_count(t, mid) <= k)
                a = mid;
            else
                b = mid;
            if (b - a <= 4 * std::numeric_limits<double>::epsilon() *
                             std::max(std::abs(a), std::abs(b)))
                break;
        }
        out[k] = 0.5 * (a + b);
        floor = a;
    }
    return out;
}

std::vector<double> eigenvector_at(const TridiagonalSym& t, double lambda) {
    const int m = t.dim();
    // shift slightly off the eigenvalue to keep the solve regular
    double shift = lambda * (1 + 64 * std::numeric_limits<double>::epsilon()) +
                   64 * std::numeric_limits<double>::min();

    std::vector<double> v(m, 1.0 / std::sqrt(double(m)));
    for (int pass = 0; pass < 4; ++pass) {
        // tridiagonal LU with partial pivoting of (T - shift I)
        std::vector<double> a(m), b(m - 1 > 0 ? m - 1 : 0), c(m - 1 > 0 ? m - 1 : 0),
            d2(m, 0.0);
        for (int i = 0; i < m; ++i) a[i] = t.diag[i] - shift;
        for (int i = 0; i < m - 1; ++i) b[i] = t.off[i], c[i] = t.off[i];
        // b: superdiag, c: subdiag, d2: second superdiag fill-in
        std::vector<double> x = v;
        std::vector<int> piv(m, 0);
        for (int i = 0; i < m - 1; ++i) {
            if (std::abs(c[i]) > std::abs(a[i])) {
                std::swap(a[i], c[i]);
                double tmp = b[i];
                b[i] = a[i + 1];
                a[i + 1] = tmp;
                d2[i] = (i + 1 < m - 1) ? b[i + 1] : 0.0;
                if (i + 1 < m - 1) b[i + 1] = 0.0;
                std::swap(x[i], x[i + 1]);
            }
            if (a[i] == 0.0) a[i] = std::numeric_limits<double>::min();
            double f = c[i] / a[i];
            a[i + 1] -= f * b[i];
            if (i + 1 < m - 1) b[i + 1] -= f * d2[i];
            x[i + 1] -= f * x[i];
        }
        if (a[m - 1] == 0.0) a[m - 1] = std::numeric_limits<double>::min();
        // back substitution
        x[m - 1] /= a[m - 1];
        if (m >= 2) x[m - 2] = (x[m - 2] - b[m - 2] * x[m - 1]) / a[m - 2];
        for (int i = m - 3; i >= 0; --i)
            x[i] = (x[i] - b[i] * x[i + 1] - d2[i] * x[i + 2]) / a[i];
        double nrm = 0;
        for (double xi : x) nrm += xi * xi;
        nrm = std::sqrt(nrm);
        for (int i = 0; i < m; ++i) v[i] = x[i] / nrm;
    }
    return v;
}

ConvergenceStudy convergence_study(HalfInt jz, Sector sector, int levels,
                                   const std::vector<int>& n_list, Scheme scheme) {
    if (n_list.size() < 3)
        throw std::invalid_argument("convergence_study: need at least three grid sizes");
    if (!std::is_sorted(n_list.begin(), n_list.end()))
        throw std::invalid_argument("convergence_study: n_list must be ascending");

    ConvergenceStudy study;
    study.ns = n_list;
    for (int n : n_list) {
        Grid g(n);
        TridiagonalSym t = (scheme == Scheme::envelope) ? assemble_h_envelope(jz, g)
                                                        : assemble_h(jz, sector, g);
        study.eigenvalues.push_back(eigen_lowest(t, levels));
    }

    const size_t last = n_list.size() - 1;
    for (int lev = 0; lev < levels; ++lev) {
        double l1 = study.eigenvalues[last - 2][lev];
        double l2 = study.eigenvalues[last - 1][lev];
        double l3 = study.eigenvalues[last][lev];
        double r = double(n_list[last] + 1) / double(n_list[last - 1] + 1); // h2/h3
        double p = std::log(std::abs((l1 - l2) / (l2 - l3))) / std::log(r);
        double ext = l3 + (l3 - l2) / (std::pow(r, p) - 1.0);

        bool mono = true;
        for (size_t i = 0; i + 1 < n_list.size(); ++i)
            if (std::abs(study.eigenvalues[i][lev] - ext) <
                std::abs(study.eigenvalues[i + 1][lev] - ext))
                mono = false;
        study.levels.push_back({ext, p, mono});
    }
    return study;
}

ExactComparison compare_with_exact(HalfInt jz, Sector sector, HalfInt j, const Grid& grid) {
    if (j < jz.abs())
        throw std::invalid_argument("compare_with_exact: no exact eigenfunction (j < |jz|)");
    Multiplet mult = build_multiplet(j);
    const SpinorState& z = mult.at(jz);
    const TrigPoly& f = (sector == Sector::plus) ? z.upper : z.lower;

    // envelope-scheme coordinates: sector reduced to (|jz|, -), possibly mirrored
    bool reflected = (sector == Sector::minus) ? (jz.twice < 0) : (jz.twice > 0);
    HalfInt mh = jz.abs();
    EnvelopeParts e = envelope_parts(mh.value(), grid);
    int n = grid.n;

    // mirror beta -> pi - beta swaps the sin and cos exponents; dividing by
    // the envelope leaves a polynomial with nonnegative integer exponents,
    // finite at both endpoints
    TrigPoly fs = f;
    if (reflected) {
        std::vector<TrigMonomial> swapped = f.terms();
        for (auto& t : swapped) std::swap(t.a, t.b);
        fs = TrigPoly::from_terms(std::move(swapped));
    }
    TrigPoly gring = fs.mul_monomial(-(mh + 1), -mh, Rational(1));

    std::vector<double> g(n + 1);
    for (int k = 1; k <= n + 1; ++k) g[k - 1] = gring.eval_at(k * grid.h);
    // T-coordinates v = D^{1/2} g
    std::vector<double> v(n + 1);
    for (int k = 0; k <= n; ++k) v[k] = std::sqrt(e.dmass[k]) * g[k];
    double nrm = 0;
    for (double x : v) nrm += x * x;
    nrm = std::sqrt(nrm);
    for (double& x : v) x /= nrm;

    TridiagonalSym t = assemble_h_envelope(jz, grid);
    double rayleigh = 0;
    for (int k = 0; k <= n; ++k) {
        double tv = t.diag[k] * v[k];
        if (k > 0) tv += t.off[k - 1] * v[k - 1];
        if (k < n) tv += t.off[k] * v[k + 1];
        rayleigh += v[k] * tv;
    }

    int want = (j.twice - jz.abs().twice) / 2 + 3;
    std::vector<double> eigs = eigen_lowest(t, std::min(want, t.dim()));
    double best = eigs[0];
    for (double L : eigs)
        if (std::abs(L - rayleigh) < std::abs(best - rayleigh)) best = L;
    std::vector<double> u = eigenvector_at(t, best);

    double dplus = 0, dminus = 0;
    for (int k = 0; k <= n; ++k) {
        dplus += (v[k] - u[k]) * (v[k] - u[k]);
        dminus += (v[k] + u[k]) * (v[k] + u[k]);
    }
    return {rayleigh, std::sqrt(std::min(dplus, dminus))};
}

} // namespace susyline
