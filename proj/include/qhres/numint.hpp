#ifndef QHRES_NUMINT_HPP
#define QHRES_NUMINT_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "qhres/forms.hpp"

// Floating point is confined to this header. Everything here is an oracle
// for the exact pipeline, never an input to it.

namespace qhres::numint {

using algebra::Polynomial;
using algebra::Rational;
using algebra::RationalFunction;
using forms::DifferentialForm;

struct Point {
    double u1 = 0;
    double u2 = 0;
};

/// Double-precision evaluator of a polynomial in two variables.
class PlanePolynomial {
public:
    PlanePolynomial() = default;
    explicit PlanePolynomial(const Polynomial& p) {
        if (p.nvars() != 2) throw ArgumentError("plane polynomial needs exactly two variables");
        for (const auto& [m, c] : p.terms()) terms_.push_back({algebra::to_double(c), m[0], m[1]});
    }

    double operator()(Point p) const {
        double s = 0;
        for (const auto& t : terms_) s += t.c * ipow(p.u1, t.e1) * ipow(p.u2, t.e2);
        return s;
    }

    /// Sum of |terms|, the scale against which residuals are judged.
    double magnitude(Point p) const {
        double s = 0;
        for (const auto& t : terms_) s += std::abs(t.c * ipow(p.u1, t.e1) * ipow(p.u2, t.e2));
        return s;
    }

    std::array<double, 2> gradient(Point p) const {
        std::array<double, 2> g{0, 0};
        for (const auto& t : terms_) {
            if (t.e1) g[0] += t.c * t.e1 * ipow(p.u1, t.e1 - 1) * ipow(p.u2, t.e2);
            if (t.e2) g[1] += t.c * t.e2 * ipow(p.u1, t.e1) * ipow(p.u2, t.e2 - 1);
        }
        return g;
    }

private:
    static double ipow(double x, unsigned e) {
        double r = 1;
        while (e) {
            if (e & 1u) r *= x;
            x *= x;
            e >>= 1u;
        }
        return r;
    }

    struct T {
        double c;
        unsigned e1, e2;
    };
    std::vector<T> terms_;
};

/// Samples along a real branch of {f = 0}, ordered along the orientation of
/// the trace.
struct CurveTrace {
    Polynomial curve;
    std::vector<Point> samples;
    double step = 0;
    bool closed = false;          // the last sample connects back to the first
    bool escapes_start = false;   // the branch continues to infinity before the first sample
    bool escapes_end = false;     // ... and after the last sample
};

struct TraceOptions {
    double escape_radius = 6.0;   // a branch leaving the box |u|_inf <= R is treated as unbounded
    int direction = 0;            // 0: both ways from the seed; +1 / -1: one way only
};

namespace detail {

inline double norm(std::array<double, 2> g) { return std::hypot(g[0], g[1]); }

/// Newton projection onto {f = 0} along the gradient.
inline std::optional<Point> project(const PlanePolynomial& f, Point p) {
    for (int it = 0; it < 60; ++it) {
        double v = f(p);
        auto g = f.gradient(p);
        double gg = g[0] * g[0] + g[1] * g[1];
        if (gg == 0 || !std::isfinite(gg)) return std::nullopt;
        double scale = std::max(1.0, f.magnitude(p));
        if (std::abs(v) <= 1e-15 * scale) return p;
        Point q{p.u1 - v * g[0] / gg, p.u2 - v * g[1] / gg};
        double moved = std::hypot(q.u1 - p.u1, q.u2 - p.u2);
        p = q;
        if (moved <= 1e-15 * (1 + std::hypot(p.u1, p.u2))) return p;
    }
    if (std::abs(f(p)) < 1e-10 * std::max(1.0, f.magnitude(p))) return p;
    return std::nullopt;
}

struct March {
    std::vector<Point> points; // excluding the seed
    bool closed = false;
    bool escaped = false;
};

inline March march(const PlanePolynomial& f, Point seed, double h, int max_steps, double sigma,
                   const TraceOptions& opt) {
    March out;
    Point p = seed;
    double farthest = 0;
    for (int k = 0; k < max_steps; ++k) {
        auto g = f.gradient(p);
        double gn = norm(g);
        if (gn < 1e-10) throw NumericError("gradient vanishes along the trace: singular point of the curve");
        std::array<double, 2> t{-sigma * g[1] / gn, sigma * g[0] / gn};
        double hk = h;
        std::optional<Point> q;
        for (int attempt = 0; attempt < 12; ++attempt, hk *= 0.5) {
            auto cand = project(f, {p.u1 + hk * t[0], p.u2 + hk * t[1]});
            if (!cand) continue;
            auto gq = f.gradient(*cand);
            double gqn = norm(gq);
            if (gqn < 1e-10) continue;
            double turn = (-sigma * gq[1] * t[0] + sigma * gq[0] * t[1]) / gqn;
            double dist = std::hypot(cand->u1 - p.u1, cand->u2 - p.u2);
            if (turn > 0.5 && dist < 1.5 * hk) {
                q = cand;
                break;
            }
        }
        if (!q) throw NumericError("trace lost the curve (step too large or singular point)");
        p = *q;
        out.points.push_back(p);
        double d = std::hypot(p.u1 - seed.u1, p.u2 - seed.u2);
        farthest = std::max(farthest, d);
        if (farthest > 2 * h && d <= h) {
            out.closed = true;
            return out;
        }
        if (std::max(std::abs(p.u1), std::abs(p.u2)) > opt.escape_radius) {
            out.escaped = true;
            return out;
        }
    }
    return out;
}

} // namespace detail

/// Predictor-corrector trace of the real branch of {f = 0} through `seed`.
/// The orientation follows the gradient rotated counterclockwise, (-f_u2,
/// f_u1); for a closed curve bounding {f < 0} this is the positive boundary
/// orientation. A one-directional trace (direction = -1) is ordered along its
/// march.
inline CurveTrace trace_real_curve(const Polynomial& f, Point seed, double step, int max_steps,
                                   const TraceOptions& opt = {}) {
    if (f.nvars() != 2) throw ArgumentError("curve tracing needs a polynomial in two variables");
    if (!(step > 0) || max_steps <= 0) throw ArgumentError("trace step and step count must be positive");
    PlanePolynomial pf(f);
    auto start = detail::project(pf, seed);
    if (!start || std::hypot(start->u1 - seed.u1, start->u2 - seed.u2) > 10 * step)
        throw NumericError("seed is not near the curve");
    if (detail::norm(pf.gradient(*start)) < 1e-10) throw NumericError("gradient vanishes at the seed");

    CurveTrace tr;
    tr.curve = f;
    tr.step = step;
    if (opt.direction >= 0) {
        auto fwd = detail::march(pf, *start, step, max_steps, 1.0, opt);
        if (fwd.closed || opt.direction > 0) {
            tr.samples.push_back(*start);
            tr.samples.insert(tr.samples.end(), fwd.points.begin(), fwd.points.end());
            tr.closed = fwd.closed;
            tr.escapes_end = fwd.escaped;
            return tr;
        }
        auto bwd = detail::march(pf, *start, step, max_steps, -1.0, opt);
        tr.samples.assign(bwd.points.rbegin(), bwd.points.rend());
        tr.samples.push_back(*start);
        tr.samples.insert(tr.samples.end(), fwd.points.begin(), fwd.points.end());
        tr.escapes_start = bwd.escaped;
        tr.escapes_end = fwd.escaped;
        return tr;
    }
    auto bwd = detail::march(pf, *start, step, max_steps, -1.0, opt);
    tr.samples.push_back(*start);
    tr.samples.insert(tr.samples.end(), bwd.points.begin(), bwd.points.end());
    tr.closed = bwd.closed;
    tr.escapes_end = bwd.escaped;
    return tr;
}

/// Writes "u1,u2" per sample, one per line.
inline void write_trace_csv(const CurveTrace& t, std::ostream& os) {
    auto old = os.precision(17);
    for (const auto& p : t.samples) os << p.u1 << ',' << p.u2 << '\n';
    os.precision(old);
}

struct Integral {
    double value = 0;
    double error = 0; // estimated absolute error
};

namespace detail {

constexpr std::array<double, 5> gl_nodes{-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                         0.9061798459386640};
constexpr std::array<double, 5> gl_weights{0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                           0.4786286704993665, 0.2369268850561891};

/// For w = P du1 + Q du2 on {f = 0}, the exact rational function
/// R = Q f_u1 - P f_u2, so that w restricted to the curve is R / |grad f|^2
/// times the tangent (-f_u2, f_u1). Forming R exactly cancels poles of P and
/// Q that are artifacts of the chart, such as 1/(3 u1^2) against f_u1 = 3 u1^2.
class PlaneOneForm {
public:
    PlaneOneForm(const DifferentialForm& w, const Polynomial& f) {
        if (w.nvars() != 2) throw ArgumentError("integrand must be a 1-form in two variables");
        RationalFunction r(Polynomial(f.variables()));
        for (const auto& [b, c] : w.components()) {
            if (b.size() != 1) throw ArgumentError("integrand must be a pure 1-form");
            auto fj = RationalFunction(algebra::partial_derivative(f, 1 - b[0]));
            r = b[0] == 1 ? r + c * fj : r - c * fj;
        }
        num_ = PlanePolynomial(r.numerator());
        den_ = PlanePolynomial(r.denominator());
    }

    double operator()(Point p) const { return num_(p) / den_(p); }

private:
    PlanePolynomial num_, den_;
};

/// Integral of the form over the curve piece near the chord a -> b, with the
/// chord parametrized by lambda in [lo, hi] and each point projected onto the
/// curve along the chord normal.
inline double chord_quadrature(const PlanePolynomial& f, const PlaneOneForm& w, Point a, Point b, double lo,
                               double hi) {
    std::array<double, 2> c1{b.u1 - a.u1, b.u2 - a.u2};
    double len = std::hypot(c1[0], c1[1]);
    if (len == 0) return 0;
    std::array<double, 2> n{-c1[1] / len, c1[0] / len};
    double sum = 0;
    for (std::size_t k = 0; k < gl_nodes.size(); ++k) {
        double lam = 0.5 * (lo + hi) + 0.5 * (hi - lo) * gl_nodes[k];
        Point c{a.u1 + lam * c1[0], a.u2 + lam * c1[1]};
        double mu = 0;
        Point g = c;
        for (int it = 0; it < 60; ++it) {
            g = {c.u1 + mu * n[0], c.u2 + mu * n[1]};
            double v = f(g);
            auto gr = f.gradient(g);
            double dn = gr[0] * n[0] + gr[1] * n[1];
            if (dn == 0) throw NumericError("curve is tangent to a chord normal; reduce the trace step");
            double dmu = v / dn;
            mu -= dmu;
            if (std::abs(dmu) <= 1e-16 * (1 + std::abs(mu) + len)) break;
        }
        g = {c.u1 + mu * n[0], c.u2 + mu * n[1]};
        auto gr = f.gradient(g);
        double dn = gr[0] * n[0] + gr[1] * n[1];
        double dmu = -(gr[0] * c1[0] + gr[1] * c1[1]) / dn;
        std::array<double, 2> tangent{-gr[1], gr[0]};
        double tt = tangent[0] * tangent[0] + tangent[1] * tangent[1];
        // gamma' = c1 + dmu * n is parallel to the tangent; write it as k * tangent
        double kk = ((c1[0] + dmu * n[0]) * tangent[0] + (c1[1] + dmu * n[1]) * tangent[1]) / tt;
        double val = kk * w(g);
        if (!std::isfinite(val)) throw NumericError("integrand diverges on the trace");
        sum += gl_weights[k] * val;
    }
    return 0.5 * (hi - lo) * sum;
}

/// Integral from the escaping endpoint `e` out to infinity along the branch,
/// parametrized by the dominant coordinate x = sgn / t with t in (0, 1/|x_e|].
inline Integral tail_to_infinity(const PlanePolynomial& f, const PlaneOneForm& w, Point e) {
    const int i = std::abs(e.u1) >= std::abs(e.u2) ? 0 : 1;
    const int j = 1 - i;
    auto coord = [](Point p, int k) { return k == 0 ? p.u1 : p.u2; };
    auto make = [&](double x, double y) { return i == 0 ? Point{x, y} : Point{y, x}; };
    const double sgn = coord(e, i) > 0 ? 1.0 : -1.0;
    const double t0 = 1.0 / std::abs(coord(e, i));

    double y_prev = coord(e, j), t_prev = t0;
    auto solve_y = [&](double t) {
        double x = sgn / t;
        double y = y_prev * (t_prev / t);
        for (int it = 0; it < 100; ++it) {
            Point p = make(x, y);
            auto gr = f.gradient(p);
            double fy = gr[j];
            if (fy == 0) throw NumericError("branch at infinity is not a graph over the dominant coordinate");
            double dy = f(p) / fy;
            y -= dy;
            if (std::abs(dy) <= 1e-15 * (1 + std::abs(y))) break;
        }
        y_prev = y;
        t_prev = t;
        return y;
    };
    auto integrand = [&](double t) {
        double x = sgn / t;
        double y = solve_y(t);
        Point p = make(x, y);
        auto gr = f.gradient(p);
        // P dx + Q dy along the graph y(x) is (R / f_x) dx for x = u2 and -(R / f_y) dx for x = u1
        double along = i == 0 ? -w(p) / gr[1] : w(p) / gr[0];
        double v = along * sgn / (t * t);
        if (!std::isfinite(v)) throw NumericError("integrand diverges on the trace");
        return v;
    };

    // panels from t0 down to 0 so that the continuation in y stays local
    auto composite = [&](int panels) {
        y_prev = coord(e, j);
        t_prev = t0;
        double total = 0, abs_total = 0;
        for (int k = 0; k < panels; ++k) {
            double hi = t0 * (1.0 - double(k) / panels);
            double lo = t0 * (1.0 - double(k + 1) / panels);
            double s = 0;
            for (std::size_t q = gl_nodes.size(); q-- > 0;) {
                double v = integrand(0.5 * (lo + hi) + 0.5 * (hi - lo) * gl_nodes[q]);
                s += gl_weights[q] * v;
            }
            total += 0.5 * (hi - lo) * s;
            abs_total += std::abs(0.5 * (hi - lo) * s);
        }
        return std::pair{total, abs_total};
    };

    // integrable iff the t-integrand grows slower than 1/t; estimate its order
    // over the last two decades before t = 0
    {
        y_prev = coord(e, j);
        t_prev = t0;
        std::vector<double> probes;
        for (double t = t0 * 0.5; t > t0 * 1e-9; t *= 0.1) probes.push_back(std::abs(integrand(t)));
        double a = probes[probes.size() - 3], b = probes.back();
        if (a > 0 && b > 0 && std::log10(b / a) / 2 >= 0.9)
            throw NumericError("integral diverges at infinity along the curve");
    }

    auto [coarse, abs_coarse] = composite(24);
    (void)abs_coarse;
    auto [fine, abs_f] = composite(48);
    double err = std::abs(fine - coarse) + 1e3 * std::numeric_limits<double>::epsilon() * abs_f;
    return {fine, err};
}

} // namespace detail

/// Integral of a 1-form P du1 + Q du2 along the trace, in trace orientation.
///
/// Each chord between consecutive samples is integrated by 5-point
/// Gauss-Legendre on the curve piece it spans, once whole and once halved; the
/// difference is the error estimate (plus a rounding floor). Branches that
/// escape to infinity are completed by the tail integral in the dominant
/// coordinate.
inline Integral integrate_1form(const DifferentialForm& form, const CurveTrace& trace) {
    if (!(form.variables() == trace.curve.variables()))
        throw ArgumentError("form and curve over different variables");
    PlanePolynomial f(trace.curve);
    detail::PlaneOneForm w(form, trace.curve);
    const auto& s = trace.samples;
    double coarse = 0, fine = 0, abs_fine = 0;
    auto segment = [&](Point a, Point b) {
        coarse += detail::chord_quadrature(f, w, a, b, 0.0, 1.0);
        double h1 = detail::chord_quadrature(f, w, a, b, 0.0, 0.5);
        double h2 = detail::chord_quadrature(f, w, a, b, 0.5, 1.0);
        fine += h1 + h2;
        abs_fine += std::abs(h1) + std::abs(h2);
    };
    for (std::size_t k = 0; k + 1 < s.size(); ++k) segment(s[k], s[k + 1]);
    if (trace.closed && s.size() > 1) segment(s.back(), s.front());

    Integral out;
    out.value = fine;
    out.error = std::abs(fine - coarse) + 1e3 * std::numeric_limits<double>::epsilon() * abs_fine;
    if (trace.escapes_end && !s.empty()) {
        auto tail = detail::tail_to_infinity(f, w, s.back());
        out.value += tail.value;
        out.error += tail.error;
    }
    if (trace.escapes_start && !s.empty()) {
        auto tail = detail::tail_to_infinity(f, w, s.front());
        out.value -= tail.value;
        out.error += tail.error;
    }
    return out;
}

/// A point of the real curve {f = 0} with nonzero gradient, found by scanning
/// vertical lines u1 = const for sign changes in u2.
inline std::optional<Point> find_seed(const Polynomial& f) {
    PlanePolynomial pf(f);
    for (double x : {0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0, 0.25, -0.25}) {
        double prev_y = -50.0, prev_v = pf({x, prev_y});
        for (int k = 1; k <= 4000; ++k) {
            double y = -50.0 + 100.0 * k / 4000.0;
            double v = pf({x, y});
            if (prev_v == 0 || (prev_v < 0) != (v < 0)) {
                double lo = prev_y, hi = y, flo = prev_v;
                for (int it = 0; it < 200 && flo != 0; ++it) {
                    double mid = 0.5 * (lo + hi);
                    double fm = pf({x, mid});
                    if ((fm < 0) == (flo < 0)) {
                        lo = mid;
                        flo = fm;
                    } else {
                        hi = mid;
                    }
                }
                Point p{x, flo == 0 ? lo : 0.5 * (lo + hi)};
                if (detail::norm(pf.gradient(p)) > 1e-8) return p;
            }
            prev_y = y;
            prev_v = v;
        }
    }
    return std::nullopt;
}

} // namespace qhres::numint

#endif // QHRES_NUMINT_HPP
