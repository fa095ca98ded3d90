#include "blowsphere/parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace blowsphere {

namespace {

class Parser {
public:
    Parser(std::string_view text, const std::vector<std::string>& var_names)
        : text_(text), vars_(var_names) {}

    Polynomial run() {
        Polynomial p = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return p;
    }

private:
    std::string_view text_;
    const std::vector<std::string>& vars_;
    size_t pos_ = 0;

    int nvars() const { return static_cast<int>(vars_.size()); }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek_is(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool accept(char c) {
        if (!peek_is(c)) return false;
        ++pos_;
        return true;
    }

    Polynomial expr() {
        bool neg = false;
        skip_ws();
        if (accept('-'))
            neg = true;
        else
            accept('+');
        Polynomial acc = term();
        if (neg) acc = -acc;
        for (;;) {
            skip_ws();
            if (accept('+'))
                acc += term();
            else if (accept('-'))
                acc -= term();
            else
                break;
        }
        return acc;
    }

    Polynomial term() {
        Polynomial acc = factor();
        while (accept('*')) acc *= factor();
        return acc;
    }

    Polynomial factor() {
        Polynomial base_p = base();
        if (accept('^')) {
            long e = posint();
            Polynomial out = Polynomial::constant(nvars(), GaussianRational(1));
            for (long k = 0; k < e; ++k) out *= base_p;
            return out;
        }
        return base_p;
    }

    Polynomial base() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial inner = expr();
            skip_ws();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return number();
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t at = pos_;
            std::string name = identifier();
            if (name == "i") return Polynomial::constant(nvars(), GaussianRational::unit_i());
            auto it = std::find(vars_.begin(), vars_.end(), name);
            if (it == vars_.end()) throw ParseError("unknown variable '" + name + "'", at);
            return Polynomial::variable(nvars(), static_cast<int>(it - vars_.begin()));
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string identifier() {
        size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    BigInt digits() {
        skip_ws();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail("expected a number");
        BigInt v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + (text_[pos_] - '0');
            ++pos_;
        }
        return v;
    }

    long posint() {
        size_t at = pos_;
        BigInt v = digits();
        if (v <= 0 || v > 1'000'000) throw ParseError("exponent out of range", at);
        return v.convert_to<long>();
    }

    Polynomial number() {
        BigInt num = digits();
        if (accept('/')) {
            size_t at = pos_;
            BigInt den = digits();
            if (den == 0) throw ParseError("zero denominator", at);
            return Polynomial::constant(nvars(), GaussianRational(Rational(num, den)));
        }
        return Polynomial::constant(nvars(), GaussianRational(Rational(num)));
    }
};

// Identifiers occurring in the text, with their positions, 'i' excluded.
std::vector<std::pair<std::string, size_t>> scan_identifiers(std::string_view text) {
    std::vector<std::pair<std::string, size_t>> out;
    size_t pos = 0;
    while (pos < text.size()) {
        if (std::isalpha(static_cast<unsigned char>(text[pos]))) {
            size_t start = pos;
            while (pos < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
                ++pos;
            std::string name(text.substr(start, pos - start));
            if (name != "i") out.emplace_back(std::move(name), start);
        } else {
            ++pos;
        }
    }
    return out;
}

std::vector<std::string> infer_convention(std::string_view text, bool allow_t) {
    bool saw_xy = false;
    int max_z = 0;
    for (const auto& [name, at] : scan_identifiers(text)) {
        if (allow_t && name == "t") continue;
        if (name == "x" || name == "y") {
            saw_xy = true;
        } else if (name.size() >= 2 && name[0] == 'z' &&
                   std::all_of(name.begin() + 1, name.end(),
                               [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
            max_z = std::max(max_z, std::stoi(name.substr(1)));
        } else {
            throw ParseError("unknown variable '" + name + "'", at);
        }
        if (saw_xy && max_z > 0)
            throw ParseError("mixed variable conventions: use {x,y} or {z1..zn}", at);
    }
    if (max_z > 0) return vars_zn(std::max(max_z, 2));
    return vars_xy();
}

}  // namespace

Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& var_names) {
    return Parser(text, var_names).run();
}

ParsedInput parse_auto(std::string_view text) {
    std::vector<std::string> names = infer_convention(text, false);
    return {parse_polynomial(text, names), names};
}

ParsedInput parse_family_input(std::string_view text) {
    std::vector<std::string> names = infer_convention(text, true);
    names.push_back("t");
    return {parse_polynomial(text, names), names};
}

}  // namespace blowsphere
