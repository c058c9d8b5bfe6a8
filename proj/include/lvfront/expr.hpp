#pragma once

#include <memory>
#include <string>

namespace lvfront {

/// Small arithmetic language over x, y (and r = sqrt(x^2 + y^2)) used for the
/// coefficient fields k and h. Supports numbers, pi, + - * / ^, unary minus,
/// parentheses and sin, cos, exp, sqrt. Parse errors throw Error(Config).
class Expression {
public:
    explicit Expression(const std::string& source);

    double operator()(double x, double y = 0.0) const;
    const std::string& source() const { return source_; }
    /// True when the expression never reads x, y or r.
    bool is_constant() const;

    struct Node;

private:
    std::string source_;
    std::shared_ptr<const Node> root_;
};

}  // namespace lvfront
