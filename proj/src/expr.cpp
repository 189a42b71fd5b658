#include "fc/expr.hpp"

#include <cctype>

#include "fc/errors.hpp"

namespace fc {

namespace {

class Parser {
  public:
    explicit Parser(const std::string& text) : s_(text) {}

    RationalFunction run() {
        RationalFunction r = expr();
        skip_ws();
        if (pos_ != s_.size()) throw ParseError("unexpected trailing input", pos_);
        return r;
    }

  private:
    const std::string& s_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    bool accept(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    RationalFunction expr() {
        bool neg = false;
        if (accept('-'))
            neg = true;
        else
            accept('+');
        RationalFunction r = term();
        if (neg) r = -r;
        for (;;) {
            if (accept('+'))
                r += term();
            else if (accept('-'))
                r -= term();
            else
                return r;
        }
    }

    RationalFunction term() {
        RationalFunction r = factor();
        for (;;) {
            if (accept('*')) {
                r *= factor();
            } else if (accept('/')) {
                RationalFunction d = factor();
                if (d.is_zero()) throw ParseError("division by zero", pos_);
                r /= d;
            } else {
                return r;
            }
        }
    }

    RationalFunction factor() {
        if (peek() == '-') {  // unary minus binds tighter than * here: -a^2 stays -(a^2)
            ++pos_;
            return -factor();
        }
        RationalFunction base = atom();
        if (accept('^')) {
            unsigned long e = natural();
            RationalFunction r(1);
            for (unsigned long k = 0; k < e; ++k) r *= base;
            return r;
        }
        return base;
    }

    RationalFunction atom() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            RationalFunction r = expr();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ < s_.size() && s_[pos_] == '.')
                throw ParseError("decimal literals are not part of the grammar; use p/q", pos_);
            return RationalFunction(BigRational::parse(s_.substr(start, pos_ - start)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            int id = symtab().register_symbol(s_.substr(start, pos_ - start));
            return RationalFunction::variable(id);
        }
        throw ParseError(c == '\0' ? "unexpected end of input"
                                   : std::string("unexpected character '") + c + "'",
                         pos_);
    }

    unsigned long natural() {
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            throw ParseError("expected a nonnegative integer exponent", pos_);
        unsigned long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + static_cast<unsigned long>(s_[pos_] - '0');
            if (v > 1000000) throw ParseError("exponent too large", pos_);
            ++pos_;
        }
        return v;
    }
};

void append_mono(std::string& out, const Mono& m) {
    bool first = true;
    int top = m.max_var();
    for (int v = 0; v <= top; ++v) {
        unsigned e = m.exponent(v);
        if (e == 0) continue;
        if (!first) out += '*';
        first = false;
        out += symtab().name(v);
        if (e > 1) {
            out += '^';
            out += std::to_string(e);
        }
    }
}

}  // namespace

RationalFunction parse_expression(const std::string& text) { return Parser(text).run(); }

std::string to_string(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        bool neg = c.sign() < 0;
        BigRational mag = neg ? -c : c;
        if (out.empty()) {
            if (neg) out += '-';
        } else {
            out += neg ? '-' : '+';
        }
        if (m.empty()) {
            out += mag.to_string();
        } else {
            if (!mag.is_one()) {
                out += mag.to_string();
                out += '*';
            }
            append_mono(out, m);
        }
    }
    return out;
}

std::string to_string(const RationalFunction& f) {
    if (f.is_polynomial()) return to_string(f.num());
    return "(" + to_string(f.num()) + ")/(" + to_string(f.den()) + ")";
}

}  // namespace fc
