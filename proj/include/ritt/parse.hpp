#pragma once

#include <cctype>
#include <stdexcept>
#include <string>

#include "ritt/rational_function.hpp"

namespace ritt {

class ParseError : public std::runtime_error {
public:
    ParseError(size_t position, const std::string& expected, const std::string& found)
        : std::runtime_error("parse error at position " + std::to_string(position) +
                             ": expected " + expected + ", found " + found),
          position_(position), expected_(expected) {}
    size_t position() const { return position_; }
    const std::string& expected() const { return expected_; }

private:
    size_t position_;
    std::string expected_;
};

// Recursive-descent parser for rational-function expressions in a single
// named variable. Grammar: integers, the variable, + - * /, parentheses, and
// ^ with a non-negative integer exponent bound to an atom. Whitespace is
// insignificant. Rationals are written a/b; a leading unary minus is
// accepted so that printed values round-trip.
class ExpressionParser {
public:
    ExpressionParser(std::string source, std::string variable)
        : src_(std::move(source)), var_(std::move(variable)) {}

    RationalFunction parse() {
        RationalFunction value = expression();
        skip_ws();
        if (pos_ != src_.size()) throw ParseError(pos_, "end of input", describe_here());
        return value;
    }

private:
    RationalFunction expression() {
        skip_ws();
        bool negate = false;
        if (peek() == '-') {
            ++pos_;
            negate = true;
        }
        RationalFunction acc = term();
        if (negate) acc = -acc;
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '+') {
                ++pos_;
                acc = acc + term();
            } else if (c == '-') {
                ++pos_;
                acc = acc - term();
            } else {
                return acc;
            }
        }
    }

    RationalFunction term() {
        RationalFunction acc = power();
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '*') {
                ++pos_;
                acc = acc * power();
            } else if (c == '/') {
                size_t at = pos_;
                ++pos_;
                RationalFunction d = power();
                if (d.is_zero()) throw ParseError(at, "nonzero divisor", "division by the zero polynomial");
                acc = acc / d;
            } else {
                return acc;
            }
        }
    }

    RationalFunction power() {
        RationalFunction base = atom();
        skip_ws();
        if (peek() != '^') return base;
        ++pos_;
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            throw ParseError(pos_, "non-negative integer exponent", describe_here());
        size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        long e = std::stol(src_.substr(start, pos_ - start));
        return pow(base, e);
    }

    RationalFunction atom() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            ++pos_;
            RationalFunction inner = expression();
            skip_ws();
            if (peek() != ')') throw ParseError(pos_, "')'", describe_here());
            ++pos_;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            return RationalFunction(Rational::from_string(src_.substr(start, pos_ - start)));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
            std::string name = src_.substr(start, pos_ - start);
            if (name != var_)
                throw ParseError(start, "variable '" + var_ + "'", "'" + name + "'");
            return RationalFunction::variable();
        }
        throw ParseError(pos_, "integer, variable '" + var_ + "', or '('", describe_here());
    }

    char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    std::string describe_here() const {
        if (pos_ >= src_.size()) return "end of input";
        return std::string("'") + src_[pos_] + "'";
    }

    std::string src_;
    std::string var_;
    size_t pos_ = 0;
};

// Parses a map expression in `z` (or a coefficient expression in `x`).
inline RationalFunction parse_expression(const std::string& source, const std::string& variable) {
    return ExpressionParser(source, variable).parse();
}

} // namespace ritt
