#include "diracgl/spline.hpp"

#include <algorithm>
#include <cmath>

#include "diracgl/errors.hpp"

namespace diracgl {

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> f)
    : x_(std::move(x)), f_(std::move(f)) {
    const std::size_t n = x_.size();
    if (n < 3 || f_.size() != n) throw error("CubicSpline: need at least 3 matching points");
    for (std::size_t i = 1; i < n; ++i)
        if (!(x_[i - 1] < x_[i])) throw error("CubicSpline: abscissae not increasing");

    // tridiagonal solve for second derivatives, natural end conditions
    std::vector<double> diag(n, 2.0), rhs(n, 0.0), sub(n, 0.0), sup(n, 0.0);
    m_.assign(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double hl = x_[i] - x_[i - 1];
        const double hr = x_[i + 1] - x_[i];
        sub[i] = hl / (hl + hr);
        sup[i] = hr / (hl + hr);
        rhs[i] = 6.0 / (hl + hr) * ((f_[i + 1] - f_[i]) / hr - (f_[i] - f_[i - 1]) / hl);
    }
    // forward elimination (rows 1..n-2), natural: m_0 = m_{n-1} = 0
    for (std::size_t i = 2; i + 1 < n; ++i) {
        const double w = sub[i] / diag[i - 1];
        diag[i] -= w * sup[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
        m_[i] = (rhs[i] - sup[i] * (i + 2 < n ? m_[i + 1] : 0.0)) / diag[i];
        if (i == 1) break;
    }
}

double CubicSpline::operator()(double x) const {
    const std::size_t n = x_.size();
    if (x <= x_.front()) {
        const double d = (f_[1] - f_[0]) / (x_[1] - x_[0]) -
                         (x_[1] - x_[0]) / 6.0 * (2.0 * m_[0] + m_[1]);
        return f_[0] + d * (x - x_[0]);
    }
    if (x >= x_.back()) {
        const double h = x_[n - 1] - x_[n - 2];
        const double d = (f_[n - 1] - f_[n - 2]) / h + h / 6.0 * (m_[n - 2] + 2.0 * m_[n - 1]);
        return f_[n - 1] + d * (x - x_[n - 1]);
    }
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    const std::size_t k = static_cast<std::size_t>(it - x_.begin()) - 1;
    const double h = x_[k + 1] - x_[k];
    const double a = (x_[k + 1] - x) / h;
    const double b = (x - x_[k]) / h;
    return a * f_[k] + b * f_[k + 1] +
           ((a * a * a - a) * m_[k] + (b * b * b - b) * m_[k + 1]) * h * h / 6.0;
}

}  // namespace diracgl
