#include "lvfront/expr.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <vector>

#include "lvfront/error.hpp"

namespace lvfront {

struct Expression::Node {
    enum class Op { Num, X, Y, R, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Exp, Sqrt } op = Op::Num;
    double value = 0.0;
    std::shared_ptr<const Node> lhs, rhs;

    double eval(double x, double y) const {
        switch (op) {
            case Op::Num: return value;
            case Op::X: return x;
            case Op::Y: return y;
            case Op::R: return std::hypot(x, y);
            case Op::Add: return lhs->eval(x, y) + rhs->eval(x, y);
            case Op::Sub: return lhs->eval(x, y) - rhs->eval(x, y);
            case Op::Mul: return lhs->eval(x, y) * rhs->eval(x, y);
            case Op::Div: return lhs->eval(x, y) / rhs->eval(x, y);
            case Op::Pow: return std::pow(lhs->eval(x, y), rhs->eval(x, y));
            case Op::Neg: return -lhs->eval(x, y);
            case Op::Sin: return std::sin(lhs->eval(x, y));
            case Op::Cos: return std::cos(lhs->eval(x, y));
            case Op::Exp: return std::exp(lhs->eval(x, y));
            case Op::Sqrt: return std::sqrt(lhs->eval(x, y));
        }
        return 0.0;
    }

    bool constant() const {
        if (op == Op::X || op == Op::Y || op == Op::R) return false;
        return (!lhs || lhs->constant()) && (!rhs || rhs->constant());
    }
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr, double value = 0.0) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    n->value = value;
    return n;
}

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    NodePtr parse() {
        NodePtr e = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw Error(ErrorKind::Config, "expression '" + s_ + "' at offset " + std::to_string(pos_) + ": " + why);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            if (accept('+')) lhs = make(Node::Op::Add, lhs, term());
            else if (accept('-')) lhs = make(Node::Op::Sub, lhs, term());
            else return lhs;
        }
    }

    NodePtr term() {
        NodePtr lhs = power();
        for (;;) {
            if (accept('*')) lhs = make(Node::Op::Mul, lhs, power());
            else if (accept('/')) lhs = make(Node::Op::Div, lhs, power());
            else return lhs;
        }
    }

    NodePtr power() {
        NodePtr base = unary();
        if (accept('^')) return make(Node::Op::Pow, base, power());
        return base;
    }

    NodePtr unary() {
        if (accept('-')) return make(Node::Op::Neg, unary());
        if (accept('+')) return unary();
        return primary();
    }

    NodePtr primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        if (accept('(')) {
            NodePtr e = expr();
            if (!accept(')')) fail("expected ')'");
            return e;
        }
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(s_.substr(pos_), &used);
            } catch (const std::exception&) {
                fail("bad number");
            }
            pos_ += used;
            return make(Node::Op::Num, nullptr, nullptr, v);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            const std::string name = s_.substr(start, pos_ - start);
            if (name == "x") return make(Node::Op::X);
            if (name == "y") return make(Node::Op::Y);
            if (name == "r") return make(Node::Op::R);
            if (name == "pi") return make(Node::Op::Num, nullptr, nullptr, std::numbers::pi);
            Node::Op op;
            if (name == "sin") op = Node::Op::Sin;
            else if (name == "cos") op = Node::Op::Cos;
            else if (name == "exp") op = Node::Op::Exp;
            else if (name == "sqrt") op = Node::Op::Sqrt;
            else fail("unknown identifier '" + name + "'");
            if (!accept('(')) fail("expected '(' after " + name);
            NodePtr arg = expr();
            if (!accept(')')) fail("expected ')'");
            return make(op, arg);
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace

Expression::Expression(const std::string& source) : source_(source), root_(Parser(source_).parse()) {}

double Expression::operator()(double x, double y) const { return root_->eval(x, y); }

bool Expression::is_constant() const { return root_->constant(); }

}  // namespace lvfront
