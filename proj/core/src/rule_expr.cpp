#include <cctype>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <string>

#include "progmom/functions.hpp"

namespace progmom {

namespace {

// Recursive-descent parser for the rule grammar:
//   expr    := term (('+'|'-') term)*
//   term    := unary (('*'|'/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?
//   primary := NUMBER | 'p' | 'a' | IDENT '(' expr ')' | '(' expr ')'
// IDENT in {ln, log, sqrt, exp, abs}; ln and log are both natural log.
struct Node {
    virtual ~Node() = default;
    virtual double eval(double p, double a) const = 0;
};

using NodePtr = std::unique_ptr<Node>;

struct Const : Node {
    double v;
    explicit Const(double x) : v(x) {}
    double eval(double, double) const override { return v; }
};

struct VarP : Node {
    double eval(double p, double) const override { return p; }
};

struct VarA : Node {
    double eval(double, double a) const override { return a; }
};

struct Unary : Node {
    double (*fn)(double);
    NodePtr arg;
    Unary(double (*f)(double), NodePtr x) : fn(f), arg(std::move(x)) {}
    double eval(double p, double a) const override { return fn(arg->eval(p, a)); }
};

struct Binary : Node {
    char op;
    NodePtr lhs, rhs;
    Binary(char o, NodePtr l, NodePtr r) : op(o), lhs(std::move(l)), rhs(std::move(r)) {}
    double eval(double p, double a) const override {
        double x = lhs->eval(p, a), y = rhs->eval(p, a);
        switch (op) {
            case '+': return x + y;
            case '-': return x - y;
            case '*': return x * y;
            case '/': return x / y;
            default: return std::pow(x, y);
        }
    }
};

class Parser {
public:
    explicit Parser(const std::string& src) : src_(src) {}

    NodePtr parse() {
        NodePtr e = expr();
        skip_ws();
        if (pos_ != src_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    const std::string& src_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) {
        throw ParameterError("rule parse error at offset " + std::to_string(pos_) + ": " + what);
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            if (eat('+'))
                lhs = std::make_unique<Binary>('+', std::move(lhs), term());
            else if (eat('-'))
                lhs = std::make_unique<Binary>('-', std::move(lhs), term());
            else
                return lhs;
        }
    }

    NodePtr term() {
        NodePtr lhs = unary();
        for (;;) {
            if (eat('*'))
                lhs = std::make_unique<Binary>('*', std::move(lhs), unary());
            else if (eat('/'))
                lhs = std::make_unique<Binary>('/', std::move(lhs), unary());
            else
                return lhs;
        }
    }

    NodePtr unary() {
        if (eat('-')) return std::make_unique<Binary>('-', std::make_unique<Const>(0.0), unary());
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (eat('^')) return std::make_unique<Binary>('^', std::move(base), unary());
        return base;
    }

    NodePtr primary() {
        skip_ws();
        if (pos_ >= src_.size()) fail("unexpected end of input");
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* start = src_.c_str() + pos_;
            char* end = nullptr;
            double v = std::strtod(start, &end);
            if (end == start) fail("bad number");
            pos_ += static_cast<std::size_t>(end - start);
            return std::make_unique<Const>(v);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            std::string ident = src_.substr(start, pos_ - start);
            if (peek() == '(') {
                eat('(');
                NodePtr arg = expr();
                if (!eat(')')) fail("expected ')'");
                using Fn = double (*)(double);
                if (ident == "ln" || ident == "log")
                    return std::make_unique<Unary>(static_cast<Fn>(std::log), std::move(arg));
                if (ident == "sqrt")
                    return std::make_unique<Unary>(static_cast<Fn>(std::sqrt), std::move(arg));
                if (ident == "exp")
                    return std::make_unique<Unary>(static_cast<Fn>(std::exp), std::move(arg));
                if (ident == "abs")
                    return std::make_unique<Unary>(static_cast<Fn>(std::fabs), std::move(arg));
                fail("unknown function '" + ident + "'");
            }
            if (ident == "p") return std::make_unique<VarP>();
            if (ident == "a") return std::make_unique<VarA>();
            fail("unknown identifier '" + ident + "'");
        }
        if (eat('(')) {
            NodePtr e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

}  // namespace

AdditiveFunction make_user_function(const std::string& name, bool strongly_additive,
                                    const std::string& rule_expr) {
    Parser parser(rule_expr);
    std::shared_ptr<Node> ast{parser.parse().release()};
    // Strongly additive rules ignore the exponent by construction.
    return {name,
            [ast, strongly_additive](std::uint64_t p, std::uint32_t a) {
                double aa = strongly_additive ? 1.0 : static_cast<double>(a);
                return ast->eval(static_cast<double>(p), aa);
            },
            strongly_additive};
}

}  // namespace progmom
