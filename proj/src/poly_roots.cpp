#include "pegame/poly_roots.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>

#include "pegame/core.hpp"

namespace pegame {

double poly_eval(const PolyCoeffs& p, double t) {
    double acc = 0.0;
    for (double c : p) acc = acc * t + c;
    return acc;
}

namespace {

double poly_deriv_eval(const PolyCoeffs& p, double t) {
    const int n = static_cast<int>(p.size()) - 1;  // degree
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc = acc * t + p[i] * static_cast<double>(n - i);
    return acc;
}

// A few Newton iterations against the original polynomial; bails out when the
// derivative underflows (even-multiplicity roots, where the eigenvalue
// estimate is already as good as the conditioning allows).
double newton_polish(const PolyCoeffs& p, double r, double scale) {
    for (int it = 0; it < 6; ++it) {
        const double f = poly_eval(p, r);
        const double df = poly_deriv_eval(p, r);
        if (std::fabs(df) < 1e-14 * scale) break;
        const double step = f / df;
        if (!std::isfinite(step)) break;
        r -= step;
        if (std::fabs(step) < 1e-16 * std::max(1.0, std::fabs(r))) break;
    }
    return r;
}

}  // namespace

std::vector<double> real_roots(const PolyCoeffs& p) {
    if (p.empty()) throw NumericError("real_roots: empty coefficient list");
    if (p.size() > 5) throw NumericError("real_roots: degree above 4 unsupported");

    double scale = 0.0;
    for (double c : p) {
        if (!std::isfinite(c)) throw NumericError("real_roots: non-finite coefficient");
        scale = std::max(scale, std::fabs(c));
    }
    if (scale == 0.0) throw NumericError("real_roots: all-zero polynomial");

    // Strip leading coefficients that are negligible relative to the rest.
    PolyCoeffs c(p);
    while (c.size() > 1 && std::fabs(c.front()) <= 1e-14 * scale) c.erase(c.begin());
    const int n = static_cast<int>(c.size()) - 1;  // effective degree
    if (n == 0) throw NumericError("real_roots: degree-0 polynomial has no roots");

    std::vector<double> cand;
    if (n == 1) {
        cand.push_back(-c[1] / c[0]);
    } else if (n == 2) {
        const double a = c[0], b = c[1], cc = c[2];
        const double disc = b * b - 4.0 * a * cc;
        if (disc >= 0.0) {
            // Numerically stable form: avoid cancellation in -b +/- sqrt.
            const double sq = std::sqrt(disc);
            const double qv = -0.5 * (b + (b >= 0.0 ? sq : -sq));
            cand.push_back(qv / a);
            if (qv != 0.0)
                cand.push_back(cc / qv);
            else
                cand.push_back(0.0);
        }
    } else {
        // Companion matrix of the monic polynomial; eigenvalues are the roots.
        Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < n; ++i) comp(0, i) = -c[i + 1] / c[0];
        for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
        const Eigen::VectorXcd eig = comp.eigenvalues();
        for (int i = 0; i < n; ++i) {
            const std::complex<double> z = eig(i);
            // Keep near-real eigenvalues; the residual gate below rejects any
            // complex pair that slipped through.
            if (std::fabs(z.imag()) <= 1e-6 * std::max(1.0, std::fabs(z.real())))
                cand.push_back(z.real());
        }
    }

    std::vector<double> out;
    for (double r : cand) {
        r = newton_polish(c, r, scale);
        const double amp = std::pow(std::max(1.0, std::fabs(r)), static_cast<double>(n));
        if (std::fabs(poly_eval(c, r)) <= 1e-10 * scale * amp) out.push_back(r);
    }
    std::sort(out.begin(), out.end());

    // Merge near-equal roots (collapsed multiplicity). Even-multiplicity
    // roots come out of the eigensolver as a pair split by ~sqrt(ulp), and
    // the polynomial evaluates to exactly zero across that whole band, so
    // Newton cannot tighten them; the window is far below any genuine root
    // separation this geometry produces.
    std::vector<double> merged;
    for (double r : out) {
        if (merged.empty() || std::fabs(r - merged.back()) > 1e-6 * std::max(1.0, std::fabs(r)))
            merged.push_back(r);
    }
    return merged;
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double tol) {
    if (!(lo < hi)) throw NumericError("bisect: requires lo < hi");
    double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) throw NumericError("bisect: no sign change on bracket");
    for (int it = 0; it < 200 && (hi - lo) > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace pegame
