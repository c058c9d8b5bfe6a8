#pragma once

#include <span>
#include <vector>

namespace lvfront {

/// Fritsch-Carlson piecewise cubic Hermite interpolant. Preserves monotonicity
/// of the data; outside [x_front, x_back] it extends the end segment linearly
/// with the end-node slope.
class MonotoneCubic {
public:
    MonotoneCubic() = default;
    MonotoneCubic(std::vector<double> xs, std::vector<double> ys);

    double operator()(double x) const;
    double derivative(double x) const;

    bool contains(double x) const { return !xs_.empty() && x >= xs_.front() && x <= xs_.back(); }
    double x_min() const { return xs_.front(); }
    double x_max() const { return xs_.back(); }
    std::span<const double> xs() const { return xs_; }
    std::span<const double> ys() const { return ys_; }

private:
    std::size_t segment(double x) const;

    std::vector<double> xs_, ys_, slopes_;
};

}  // namespace lvfront
