#include "unirat/parser.hpp"

#include <cctype>

namespace unirat {

namespace {

class Parser {
public:
    Parser(std::string_view text, RingPtr ring) : text_(text), ring_(std::move(ring)) {}

    MultiPoly run() {
        MultiPoly result = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
        return result;
    }

private:
    std::string_view text_;
    RingPtr ring_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool accept(char c) {
        if (!peek(c)) return false;
        ++pos_;
        return true;
    }

    // expr ::= ["-"] term (("+"|"-") term)*
    MultiPoly parse_expr() {
        bool negate = accept('-');
        MultiPoly total = parse_term();
        if (negate) total = -total;
        for (;;) {
            if (accept('+')) {
                total = total + parse_term();
            } else if (accept('-')) {
                total = total - parse_term();
            } else {
                break;
            }
        }
        return total;
    }

    // term ::= power ("*" power)*
    MultiPoly parse_term() {
        MultiPoly prod = parse_power();
        while (accept('*')) prod = prod * parse_power();
        return prod;
    }

    // power ::= atom ["^" integer]
    MultiPoly parse_power() {
        MultiPoly base = parse_atom();
        if (accept('^')) {
            skip_ws();
            std::size_t at = pos_;
            if (accept('-')) throw ParseError("negative exponent", at);
            Int e = parse_integer("exponent");
            if (!e.fits_uint_p()) throw ParseError("exponent too large", at);
            return base.pow(static_cast<unsigned>(e.get_ui()));
        }
        return base;
    }

    // atom ::= variable | integer | rational | "(" expr ")"
    MultiPoly parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            MultiPoly inner = parse_expr();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Int num = parse_integer("number");
            if (accept('/')) {
                skip_ws();
                std::size_t at = pos_;
                Int den = parse_integer("denominator");
                if (den == 0) throw ParseError("zero denominator", at);
                return MultiPoly::constant(ring_, rational(num, den));
            }
            return MultiPoly::constant(ring_, Rat(num));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            auto index = ring_->index_of(name);
            if (!index) throw ParseError("unknown variable '" + name + "'", start);
            return MultiPoly::variable(ring_, *index);
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    Int parse_integer(const char* what) {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) throw ParseError(std::string("expected ") + what, start);
        return Int(std::string(text_.substr(start, pos_ - start)), 10);
    }
};

} // namespace

MultiPoly parse_poly(std::string_view text, RingPtr ring) {
    return Parser(text, std::move(ring)).run();
}

} // namespace unirat
