#include "coneadapt/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace coneadapt {
namespace {

// Shift local coefficients from origin `lo` to origin `lo + d`.
PiecewiseQuadratic::Coeffs shift(const PiecewiseQuadratic::Coeffs& c, double d) {
    return {c[0] + c[1] * d + c[2] * d * d, c[1] + 2.0 * c[2] * d, c[2]};
}

// Integral of |a + b t| over [0, L].
double abs_linear_integral(double a, double b, double L) {
    auto F = [&](double t) { return a * t + 0.5 * b * t * t; };
    if (b != 0.0) {
        double root = -a / b;
        if (root > 0.0 && root < L) {
            return std::fabs(F(root)) + std::fabs(F(L) - F(root));
        }
    }
    return std::fabs(F(L));
}

}  // namespace

PiecewiseQuadratic::PiecewiseQuadratic() : breaks_{0.0, 1.0}, coeffs_{{0.0, 0.0, 0.0}} {}

PiecewiseQuadratic PiecewiseQuadratic::from_pieces(std::vector<double> breakpoints,
                                                   std::vector<Coeffs> coefficients) {
    if (breakpoints.size() < 2 || coefficients.size() + 1 != breakpoints.size()) {
        throw std::invalid_argument("PiecewiseQuadratic: mismatched pieces");
    }
    if (breakpoints.front() != 0.0 || breakpoints.back() != 1.0 ||
        !std::is_sorted(breakpoints.begin(), breakpoints.end())) {
        throw std::invalid_argument("PiecewiseQuadratic: breakpoints must cover [0,1] in order");
    }
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (breakpoints[i] == breakpoints[i + 1]) {
            throw std::invalid_argument("PiecewiseQuadratic: empty piece");
        }
    }
    PiecewiseQuadratic p;
    p.breaks_ = std::move(breakpoints);
    p.coeffs_ = std::move(coefficients);
    return p;
}

std::size_t PiecewiseQuadratic::piece_index(double x) const {
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
    std::size_t i = std::size_t(it - breaks_.begin());
    if (i == 0) return 0;
    if (i >= breaks_.size()) return breaks_.size() - 2;
    return i - 1;
}

double PiecewiseQuadratic::operator()(double x) const {
    std::size_t i = piece_index(x);
    double t = x - breaks_[i];
    const Coeffs& c = coeffs_[i];
    return c[0] + c[1] * t + c[2] * t * t;
}

double PiecewiseQuadratic::derivative(double x) const {
    std::size_t i = piece_index(x);
    double t = x - breaks_[i];
    const Coeffs& c = coeffs_[i];
    return c[1] + 2.0 * c[2] * t;
}

PiecewiseQuadratic PiecewiseQuadratic::plus(const PiecewiseQuadratic& other) const {
    std::vector<double> merged;
    merged.reserve(breaks_.size() + other.breaks_.size());
    std::merge(breaks_.begin(), breaks_.end(), other.breaks_.begin(), other.breaks_.end(),
               std::back_inserter(merged));
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());

    std::vector<Coeffs> coeffs(merged.size() - 1);
    std::size_t ia = 0, ib = 0;
    for (std::size_t k = 0; k + 1 < merged.size(); ++k) {
        double lo = merged[k];
        while (ia + 2 < breaks_.size() && breaks_[ia + 1] <= lo) ++ia;
        while (ib + 2 < other.breaks_.size() && other.breaks_[ib + 1] <= lo) ++ib;
        Coeffs a = shift(coeffs_[ia], lo - breaks_[ia]);
        Coeffs b = shift(other.coeffs_[ib], lo - other.breaks_[ib]);
        coeffs[k] = {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
    }
    PiecewiseQuadratic out;
    out.breaks_ = std::move(merged);
    out.coeffs_ = std::move(coeffs);
    return out;
}

PiecewiseQuadratic PiecewiseQuadratic::scaled(double c) const {
    PiecewiseQuadratic out = *this;
    for (auto& p : out.coeffs_) {
        p[0] *= c;
        p[1] *= c;
        p[2] *= c;
    }
    return out;
}

double PiecewiseQuadratic::integral() const {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
        double L = breaks_[i + 1] - breaks_[i];
        const Coeffs& c = coeffs_[i];
        s += L * (c[0] + L * (c[1] / 2.0 + L * c[2] / 3.0));
    }
    return s;
}

double PiecewiseQuadratic::slope_scale() const {
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
        double L = breaks_[i + 1] - breaks_[i];
        m = std::max(m, std::fabs(coeffs_[i][1]));
        m = std::max(m, std::fabs(coeffs_[i][1] + 2.0 * coeffs_[i][2] * L));
    }
    return m;
}

double PiecewiseQuadratic::slope_jump(std::size_t i) const {
    double Lprev = breaks_[i] - breaks_[i - 1];
    double left = coeffs_[i - 1][1] + 2.0 * coeffs_[i - 1][2] * Lprev;
    return coeffs_[i][1] - left;
}

double PiecewiseQuadratic::var_deriv() const {
    // Slope mismatches below the noise floor are shift/merge rounding from
    // plus(), not genuine kinks.
    const double tol = kJumpNoise * slope_scale();
    double v = 0.0;
    for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
        double L = breaks_[i + 1] - breaks_[i];
        v += std::fabs(2.0 * coeffs_[i][2]) * L;
        if (i > 0) {
            double jump = std::fabs(slope_jump(i));
            if (jump > tol) v += jump;
        }
    }
    return v;
}

double PiecewiseQuadratic::l1_deriv_dev() const {
    const double delta = (*this)(1.0) - (*this)(0.0);
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
        double L = breaks_[i + 1] - breaks_[i];
        s += abs_linear_integral(coeffs_[i][1] - delta, 2.0 * coeffs_[i][2], L);
    }
    return s;
}

double PiecewiseQuadratic::linf_deriv_dev() const {
    const double delta = (*this)(1.0) - (*this)(0.0);
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
        double L = breaks_[i + 1] - breaks_[i];
        m = std::max(m, std::fabs(coeffs_[i][1] - delta));
        m = std::max(m, std::fabs(coeffs_[i][1] + 2.0 * coeffs_[i][2] * L - delta));
    }
    return m;
}

double PiecewiseQuadratic::linf_second() const {
    const double tol = kJumpNoise * slope_scale();
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
        m = std::max(m, std::fabs(2.0 * coeffs_[i][2]));
        if (i > 0 && std::fabs(slope_jump(i)) > tol) {
            return std::numeric_limits<double>::infinity();
        }
    }
    return m;
}

double PiecewiseQuadratic::sup_abs() const {
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
        double L = breaks_[i + 1] - breaks_[i];
        const Coeffs& c = coeffs_[i];
        m = std::max(m, std::fabs(c[0]));
        m = std::max(m, std::fabs(c[0] + c[1] * L + c[2] * L * L));
        if (c[2] != 0.0) {
            double t = -c[1] / (2.0 * c[2]);
            if (t > 0.0 && t < L) {
                m = std::max(m, std::fabs(c[0] + c[1] * t + c[2] * t * t));
            }
        }
    }
    return m;
}

}  // namespace coneadapt
