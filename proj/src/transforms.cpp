#include "susyline/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace susyline {

namespace {
constexpr double kPi = std::numbers::pi;

double sqrt_minus_2e(double e_tilde) {
    if (!(e_tilde < 0)) throw std::domain_error("E~ must be negative for bound states");
    return std::sqrt(-2.0 * e_tilde);
}
} // namespace

double beta_to_p(double beta, double e_tilde) {
    if (!(beta > 0.0 && beta < kPi))
        throw std::domain_error("beta_to_p: beta outside (0, pi)");
    return std::tan(beta / 2) * sqrt_minus_2e(e_tilde);
}

double p_to_beta(double p, double e_tilde) {
    if (!(p > 0.0)) throw std::domain_error("p_to_beta: p must be positive");
    return 2.0 * std::atan(p / sqrt_minus_2e(e_tilde));
}

MomentumSpinor momentum_spinor(const SpinorState& z, HalfInt j, double G, int samples) {
    if (!(G > 0)) throw std::invalid_argument("momentum_spinor: G must be positive");
    if (samples < 2) throw std::invalid_argument("momentum_spinor: need at least 2 samples");

    MomentumSpinor m;
    m.jz = z.jz;
    double jph = j.value() + 0.5;
    m.e_tilde = -G * G / (2.0 * jph * jph);
    m.source = z;
    int up = -(z.jz.twice - 1) / 2, lo = -(z.jz.twice + 1) / 2; // -(jz -/+ 1/2)
    m.phase_power_upper = ((up % 4) + 4) % 4;
    m.phase_power_lower = ((lo % 4) + 4) % 4;

    double scale = sqrt_minus_2e(m.e_tilde);
    double lmin = std::log(1e-3 * scale), lmax = std::log(1e3 * scale);
    m.p.resize(samples);
    m.f1.resize(samples);
    m.f2.resize(samples);
    for (int i = 0; i < samples; ++i) {
        double p = std::exp(lmin + (lmax - lmin) * i / (samples - 1));
        double beta = p_to_beta(p, m.e_tilde);
        double alpha = p * p / 2 - m.e_tilde;
        m.p[i] = p;
        m.f1[i] = z.upper.eval_at(beta) / (std::sqrt(p) * alpha);
        m.f2[i] = z.lower.eval_at(beta) / (std::sqrt(p) * alpha);
    }
    return m;
}

std::pair<double, double> coupled_residual(const MomentumSpinor& m, double G) {
    TrigPoly dz1 = m.source.upper.differentiate();
    TrigPoly dz2 = m.source.lower.differentiate();
    double s2e = sqrt_minus_2e(m.e_tilde);
    double nu1 = m.jz.value() - 0.5, nu2 = m.jz.value() + 0.5;

    long double r1n = 0, r1d = 0, r2n = 0, r2d = 0;
    for (size_t i = 0; i < m.p.size(); ++i) {
        double p = m.p[i];
        double beta = p_to_beta(p, m.e_tilde);
        double c = std::cos(beta / 2);
        double dbeta_dp = 2.0 * c * c / s2e;
        double ps = std::sqrt(p);

        // u_i = alpha F_i = Z_i / sqrt(p), differentiated analytically
        double u1 = m.source.upper.eval_at(beta) / ps;
        double du1 = -0.5 * u1 / p + dz1.eval_at(beta) * dbeta_dp / ps;
        double u2 = m.source.lower.eval_at(beta) / ps;
        double du2 = -0.5 * u2 / p + dz2.eval_at(beta) * dbeta_dp / ps;

        double res1 = du1 - nu1 / p * u1 + G * m.f2[i];
        double res2 = du2 + nu2 / p * u2 - G * m.f1[i];
        r1n += res1 * res1;
        r1d += u1 * u1;
        r2n += res2 * res2;
        r2d += u2 * u2;
    }
    return {std::sqrt(double(r1n / r1d)), std::sqrt(double(r2n / r2d))};
}

TailScan momentum_norm_scan(const MomentumSpinor& m) {
    long double total = 0, tail = 0;
    double cut = m.p.back() / 10.0;
    for (size_t i = 0; i + 1 < m.p.size(); ++i) {
        double dp = m.p[i + 1] - m.p[i];
        double f = (m.f1[i] * m.f1[i] + m.f2[i] * m.f2[i]) * m.p[i] +
                   (m.f1[i + 1] * m.f1[i + 1] + m.f2[i + 1] * m.f2[i + 1]) * m.p[i + 1];
        double seg = 0.5 * f * dp;
        total += seg;
        if (m.p[i] >= cut) tail += seg;
    }
    double ratio = total > 0 ? double(tail / total) : 0.0;
    return {double(total), ratio, ratio < 1e-6};
}

RadialFunction sample_radial(const std::function<double(double)>& f, double x_min,
                             double x_max, int count) {
    if (!(x_min > 0 && x_max > x_min) || count < 2)
        throw std::invalid_argument("sample_radial: bad grid request");
    RadialFunction r;
    double lmin = std::log(x_min), lmax = std::log(x_max);
    r.x.resize(count);
    r.y.resize(count);
    for (int i = 0; i < count; ++i) {
        r.x[i] = std::exp(lmin + (lmax - lmin) * i / (count - 1));
        r.y[i] = f(r.x[i]);
    }
    return r;
}

double bessel_j(double nu, double x) {
    if (x < 0) throw std::domain_error("bessel_j: x must be nonnegative");
    if (nu < 0) {
        double nearest = std::round(nu);
        if (std::abs(nu - nearest) > 1e-12 && nu < -1 + 1e-12)
            throw std::invalid_argument("bessel_j: order must be > -1 or a negative integer");
        if (std::abs(nu - nearest) <= 1e-12) {
            int n = static_cast<int>(-nearest);
            double v = bessel_j(-nearest, x);
            return (n % 2 == 0) ? v : -v;
        }
    }
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;

    // half-odd orders: the library series is fine near 0 but its asymptotic
    // branch loses digits; use the closed spherical forms instead
    double twice = 2 * nu;
    if (x >= 1.0 && std::abs(twice - std::round(twice)) < 1e-12 &&
        std::lround(std::round(twice)) % 2 != 0) {
        double pref = std::sqrt(2.0 / (kPi * x));
        double sx = std::sin(x), cx = std::cos(x);
        if (nu == 0.5) return pref * sx;
        if (nu == 1.5) return pref * (sx / x - cx);
        if (nu == 2.5) return pref * ((3.0 / (x * x) - 1.0) * sx - 3.0 / x * cx);
    }
    return std::cyl_bessel_j(nu, x);
}

namespace {

// natural cubic spline in t = log x; constant below the grid, zero above
class LogSpline {
public:
    explicit LogSpline(const RadialFunction& f) : y_(f.y) {
        size_t n = f.x.size();
        t_.resize(n);
        for (size_t i = 0; i < n; ++i) t_[i] = std::log(f.x[i]);
        y2_.assign(n, 0.0);
        std::vector<double> u(n, 0.0);
        for (size_t i = 1; i + 1 < n; ++i) {
            double sig = (t_[i] - t_[i - 1]) / (t_[i + 1] - t_[i - 1]);
            double p = sig * y2_[i - 1] + 2.0;
            y2_[i] = (sig - 1.0) / p;
            double d = (y_[i + 1] - y_[i]) / (t_[i + 1] - t_[i]) -
                       (y_[i] - y_[i - 1]) / (t_[i] - t_[i - 1]);
            u[i] = (6.0 * d / (t_[i + 1] - t_[i - 1]) - sig * u[i - 1]) / p;
        }
        for (size_t i = n - 1; i-- > 1;) y2_[i] = y2_[i] * y2_[i + 1] + u[i];
        y2_.front() = y2_.back() = 0.0;
    }

    double operator()(double x) const {
        if (x <= 0) return y_.front();
        double t = std::log(x);
        if (t <= t_.front()) return y_.front();
        if (t >= t_.back()) return 0.0;
        size_t hi = std::upper_bound(t_.begin(), t_.end(), t) - t_.begin();
        size_t lo = hi - 1;
        double h = t_[hi] - t_[lo];
        double a = (t_[hi] - t) / h, b = (t - t_[lo]) / h;
        return a * y_[lo] + b * y_[hi] +
               ((a * a * a - a) * y2_[lo] + (b * b * b - b) * y2_[hi]) * h * h / 6.0;
    }

private:
    std::vector<double> t_, y_, y2_;
};

// 10-point Gauss-Legendre on [-1, 1]
constexpr double kGx[5] = {0.14887433898163121, 0.43339539412924719, 0.67940956829902441,
                           0.86506336668898451, 0.97390652851717172};
constexpr double kGw[5] = {0.29552422471475287, 0.26926671930999635, 0.21908636251598204,
                           0.14945134915058059, 0.066671344308688138};

template <class F>
double gauss10(const F& f, double a, double b) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0;
    for (int i = 0; i < 5; ++i)
        acc += kGw[i] * (f(mid + half * kGx[i]) + f(mid - half * kGx[i]));
    return acc * half;
}

// segment-wise integration, splitting wide stretches geometrically from the
// inner scale x0 upward so log-scale structure is resolved
template <class F>
double integrate_panel(const F& f, double a, double b, double x0) {
    double acc = 0;
    double x = a;
    while (x < b) {
        double next = (x <= 0) ? std::min(b, x0) : std::min(b, x * 1.75);
        if (next <= x) next = b;
        acc += gauss10(f, x, next);
        x = next;
    }
    return acc;
}

// McMahon approximation of the k-th positive zero of J_nu
double bessel_zero(double nu, int k) {
    double b = (k + nu / 2 - 0.25) * kPi;
    double mu = 4 * nu * nu;
    return b - (mu - 1) / (8 * b);
}

// Power-law continuation C x^{-alpha} fitted to the last samples. Transforms
// of functions finite at the origin decay only algebraically, so a grid that
// ends while the samples are still large is a hard truncation; the fitted
// tail restores the lost mass in a second transform.
// model: sign * exp(b - alpha ln t + d/t), i.e. C t^{-alpha} e^{d/t}; the
// 1/t basis member captures the next-order tail coefficient, which matters
// because the model is extrapolated over several decades
struct PowerTail {
    bool active = false;
    double c = 0, alpha = 0, d = 0, start = 0;

    double operator()(double t) const {
        return c * std::pow(t, -alpha) * std::exp(d / t);
    }
};

PowerTail fit_power_tail(const RadialFunction& f, double x_eff, double ymax) {
    PowerTail t;
    size_t n = f.x.size();
    const int window = 25;
    if (x_eff < f.x.back() || n < window + 8) return t;
    double last = f.y[n - 1];
    if (last == 0.0 || std::abs(last) < 1e-12 * ymax) return t;
    double sign = last > 0 ? 1.0 : -1.0;

    // least squares of ln|y| over the basis {1, ln x, 1/x}
    double a11 = 0, a12 = 0, a13 = 0, a22 = 0, a23 = 0, a33 = 0, b1 = 0, b2 = 0, b3 = 0;
    for (int i = 0; i < window; ++i) {
        double yv = f.y[n - 1 - i];
        if (yv * sign <= 0) return t;
        double u1 = 1.0, u2 = std::log(f.x[n - 1 - i]), u3 = 1.0 / f.x[n - 1 - i];
        double ly = std::log(std::abs(yv));
        a11 += u1 * u1; a12 += u1 * u2; a13 += u1 * u3;
        a22 += u2 * u2; a23 += u2 * u3; a33 += u3 * u3;
        b1 += u1 * ly;  b2 += u2 * ly;  b3 += u3 * ly;
    }
    double det = a11 * (a22 * a33 - a23 * a23) - a12 * (a12 * a33 - a23 * a13) +
                 a13 * (a12 * a23 - a22 * a13);
    if (det == 0) return t;
    double c1 = (b1 * (a22 * a33 - a23 * a23) - a12 * (b2 * a33 - a23 * b3) +
                 a13 * (b2 * a23 - a22 * b3)) / det;
    double c2 = (a11 * (b2 * a33 - b3 * a23) - b1 * (a12 * a33 - a23 * a13) +
                 a13 * (a12 * b3 - b2 * a13)) / det;
    double c3 = (a11 * (a22 * b3 - a23 * b2) - a12 * (a12 * b3 - b2 * a13) +
                 b1 * (a12 * a23 - a22 * a13)) / det;

    double alpha = -c2;
    if (!(alpha > 1.6 && alpha < 8.0)) return t;
    if (std::abs(c3) > 0.5 * f.x[n - window]) return t; // correction must stay a correction
    for (int i = 0; i < window; ++i) {
        double x = f.x[n - 1 - i];
        double pred = c1 + c2 * std::log(x) + c3 / x;
        if (std::abs(pred - std::log(std::abs(f.y[n - 1 - i]))) > 0.02) return t;
    }
    t.active = true;
    t.alpha = alpha;
    t.d = c3;
    t.c = sign * std::exp(c1);
    t.start = f.x.back();
    return t;
}

// streaming Wynn epsilon table over partial sums
class WynnEpsilon {
public:
    void add(double s) {
        std::vector<double> next(prev_.size() + 1);
        next[0] = s;
        for (size_t j = 1; j < next.size(); ++j) {
            double denom = next[j - 1] - prev_[j - 1];
            double lower = (j >= 2) ? prev_[j - 2] : 0.0;
            if (denom == 0.0) {
                next[j] = next[j - 1]; // converged exactly
            } else {
                next[j] = lower + 1.0 / denom;
            }
        }
        prev_ = std::move(next);
    }

    double estimate() const {
        size_t j = prev_.size() - 1;
        if (j % 2 == 1) --j; // even columns approximate the limit
        return prev_[j];
    }

private:
    std::vector<double> prev_;
};

// int_{start}^{inf} C t^{1-alpha} J_nu(p t) dt by zero panels and epsilon
// acceleration of the model continuation
double tail_integral(const PowerTail& tail, double nu, double p, double tol) {
    auto model = [&](double t) { return t * tail(t) * bessel_j(nu, p * t); };
    int k = std::max(1, static_cast<int>(std::ceil(p * tail.start / kPi - nu / 2 + 0.25)));
    while (bessel_zero(nu, k) / p <= tail.start) ++k;

    double left = tail.start, sum = 0, scale = 0;
    double last_est = std::numeric_limits<double>::infinity();
    WynnEpsilon table;
    int stable = 0;
    for (int panel = 0; panel < 220; ++panel, ++k) {
        double right = bessel_zero(nu, k) / p;
        double part = integrate_panel(model, left, right, tail.start);
        sum += part;
        scale = std::max(scale, std::abs(sum));
        table.add(sum);
        left = right;
        if (panel >= 5) {
            double est = table.estimate();
            double floor = tol * std::max(scale, 1e-300);
            stable = (std::abs(est - last_est) < floor) ? stable + 1 : 0;
            last_est = est;
            if (std::abs(part) < floor) return sum;
            if (stable >= 2) return est;
        }
    }
    return last_est;
}

} // namespace

RadialFunction hankel(const RadialFunction& f, double nu, const HankelOptions& opt) {
    if (f.x.size() < 4) throw std::invalid_argument("hankel: need at least 4 samples");
    LogSpline spline(f);

    // effective support: beyond this the samples are numerically zero
    double ymax = 0;
    for (double v : f.y) ymax = std::max(ymax, std::abs(v));
    if (ymax == 0.0) {
        RadialFunction g;
        g.x = f.x;
        g.y.assign(f.x.size(), 0.0);
        return g;
    }
    double x_eff = f.x.back();
    for (size_t i = f.x.size(); i-- > 0;) {
        if (std::abs(f.y[i]) > 1e-14 * ymax) {
            x_eff = f.x[std::min(i + 1, f.x.size() - 1)];
            break;
        }
    }

    PowerTail tail = fit_power_tail(f, x_eff, ymax);

    RadialFunction g;
    g.x = f.x;
    g.y.resize(f.x.size());

    for (size_t ip = 0; ip < f.x.size(); ++ip) {
        double p = f.x[ip];
        auto integrand = [&](double x) { return x * spline(x) * bessel_j(nu, p * x); };

        double sum = 0, scale = 0;
        WynnEpsilon table;
        bool done = false, support_truncated = false;
        double left = 0;
        double last_est = std::numeric_limits<double>::infinity();
        int stable = 0;
        for (int k = 1; k <= opt.max_panels; ++k) {
            double right = bessel_zero(nu, k) / p;
            if (right >= x_eff) {
                // end of the sampled support reached: the sum is direct
                sum += integrate_panel(integrand, left, x_eff, f.x.front());
                done = true;
                support_truncated = true;
                break;
            }
            double part = integrate_panel(integrand, left, right, f.x.front());
            sum += part;
            scale = std::max(scale, std::abs(sum));
            table.add(sum);
            left = right;
            if (k >= 6) {
                double est = table.estimate();
                double floor = opt.tolerance * std::max(scale, 1e-300);
                stable = (std::abs(est - last_est) < floor) ? stable + 1 : 0;
                last_est = est;
                if (std::abs(part) < floor) {
                    done = true; // tail negligible, keep the direct sum
                    break;
                }
                if (stable >= 2) {
                    sum = est;
                    done = true;
                    break;
                }
            }
        }
        if (!done) {
            double est = table.estimate();
            if (std::abs(est - last_est) > 64 * opt.tolerance * std::max(scale, 1e-300))
                throw std::runtime_error("hankel: oscillatory tail failed to converge");
            sum = est;
        }
        // integrals cut off by the grid edge get the fitted power-law
        // continuation; epsilon-settled ones already extrapolate past it
        if (support_truncated && tail.active)
            sum += tail_integral(tail, nu, p, opt.tolerance);
        g.y[ip] = sum;
    }
    return g;
}

double hankel_roundtrip_error(const RadialFunction& f, double nu, const HankelOptions& opt) {
    RadialFunction once = hankel(f, nu, opt);
    RadialFunction twice = hankel(once, nu, opt);
    long double num = 0, den = 0;
    for (size_t i = 0; i + 1 < f.x.size(); ++i) {
        double w = f.x[i] * (f.x[i + 1] - f.x[i]);
        double d = twice.y[i] - f.y[i];
        num += w * d * d;
        den += w * f.y[i] * f.y[i];
    }
    return std::sqrt(double(num / den));
}

} // namespace susyline
