#include "lvfront/monotone_cubic.hpp"

#include <algorithm>
#include <cmath>

#include "lvfront/error.hpp"

namespace lvfront {

MonotoneCubic::MonotoneCubic(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
    const std::size_t n = xs_.size();
    if (n < 2 || ys_.size() != n) {
        throw Error(ErrorKind::InvalidParams, "MonotoneCubic needs >= 2 matching samples");
    }
    for (std::size_t i = 1; i < n; ++i) {
        if (!(xs_[i] > xs_[i - 1])) {
            throw Error(ErrorKind::InvalidParams, "MonotoneCubic abscissae must be strictly increasing");
        }
    }
    std::vector<double> secant(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) secant[i] = (ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]);

    slopes_.assign(n, 0.0);
    slopes_.front() = secant.front();
    slopes_.back() = secant.back();
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double s0 = secant[i - 1], s1 = secant[i];
        if (s0 * s1 <= 0.0) {
            slopes_[i] = 0.0;
            continue;
        }
        // Weighted harmonic mean (Fritsch-Butland form) keeps each segment monotone.
        const double h0 = xs_[i] - xs_[i - 1], h1 = xs_[i + 1] - xs_[i];
        const double w0 = 2.0 * h1 + h0, w1 = h1 + 2.0 * h0;
        slopes_[i] = (w0 + w1) / (w0 / s0 + w1 / s1);
    }
}

std::size_t MonotoneCubic::segment(double x) const {
    auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    std::size_t i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - xs_.begin() - 1, 0));
    return std::min(i, xs_.size() - 2);
}

double MonotoneCubic::operator()(double x) const {
    if (x <= xs_.front()) return ys_.front() + slopes_.front() * (x - xs_.front());
    if (x >= xs_.back()) return ys_.back() + slopes_.back() * (x - xs_.back());
    const std::size_t i = segment(x);
    const double h = xs_[i + 1] - xs_[i];
    const double t = (x - xs_[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * ys_[i] + (t3 - 2 * t2 + t) * h * slopes_[i] +
           (-2 * t3 + 3 * t2) * ys_[i + 1] + (t3 - t2) * h * slopes_[i + 1];
}

double MonotoneCubic::derivative(double x) const {
    if (x <= xs_.front()) return slopes_.front();
    if (x >= xs_.back()) return slopes_.back();
    const std::size_t i = segment(x);
    const double h = xs_[i + 1] - xs_[i];
    const double t = (x - xs_[i]) / h;
    const double t2 = t * t;
    return ((6 * t2 - 6 * t) * ys_[i] + (3 * t2 - 4 * t + 1) * h * slopes_[i] +
            (-6 * t2 + 6 * t) * ys_[i + 1] + (3 * t2 - 2 * t) * h * slopes_[i + 1]) /
           h;
}

}  // namespace lvfront
