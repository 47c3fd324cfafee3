#include "qk1/io.hpp"

#include <cctype>
#include <sstream>

namespace qk1 {

std::string variable_name(int index) {
    return index == 0 ? "q" : "q" + std::to_string(index);
}

std::string to_string(const Rational& x) { return x.str(); }

namespace {

std::string monomial_string(const ExpVec& e) {
    std::string s;
    for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += variable_name(static_cast<int>(i));
        if (e[i] > 1) s += "^" + std::to_string(e[i]);
    }
    return s;
}

std::string term_string(const ExpVec& e, const Rational& c) {
    std::string m = monomial_string(e);
    if (m.empty()) return c.str();
    if (c.is_one()) return m;
    if (c == Rational(-1)) return "-" + m;
    return c.str() + "*" + m;
}

}  // namespace

std::string to_string(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (const auto& [e, c] : p.terms()) {
        std::string t = term_string(e, c);
        if (out.empty()) {
            out = t;
        } else if (t[0] == '-') {
            out += " - " + t.substr(1);
        } else {
            out += " + " + t;
        }
    }
    return out;
}

std::string to_string(const RationalFunction& f) {
    if (f.denominator().empty()) return to_string(f.numerator());
    std::string out = "(" + to_string(f.numerator()) + ") / ";
    bool first = true;
    for (const auto& fac : f.denominator()) {
        if (!first) out += " ";
        first = false;
        out += "(" + to_string(fac.poly) + ")";
        if (fac.exp > 1) out += "^" + std::to_string(fac.exp);
    }
    return out;
}

std::string to_string(const TruncatedSeries& s) {
    std::string out = "[orders=";
    for (size_t i = 0; i < s.orders().size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s.orders()[i]);
    }
    if (s.total_cap() != TruncatedSeries::kNoCap)
        out += ";cap=" + std::to_string(s.total_cap());
    out += "] ";
    if (s.coefficients().empty()) return out + "0";
    std::string body;
    for (const auto& [e, c] : s.coefficients()) {
        std::string t = term_string(e, c);
        if (body.empty()) {
            body = t;
        } else if (t[0] == '-') {
            body += " - " + t.substr(1);
        } else {
            body += " + " + t;
        }
    }
    return out + body;
}

namespace {

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) {}

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool done() {
        skip_ws();
        return pos_ >= s_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    char raw_peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    char next() {
        skip_ws();
        if (pos_ >= s_.size()) throw input_error("parse: unexpected end of input");
        return s_[pos_++];
    }
    void expect(char c) {
        char g = next();
        if (g != c)
            throw input_error(std::string("parse: expected '") + c + "', got '" + g + "'");
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    std::string digits() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) throw input_error("parse: expected digits");
        return s_.substr(start, pos_ - start);
    }
    uint64_t unsigned_int() { return std::stoull(digits()); }

private:
    const std::string& s_;
    size_t pos_ = 0;
};

Rational parse_rational_token(Lexer& lx, bool negative) {
    std::string num = lx.digits();
    std::string text = (negative ? "-" : "") + num;
    if (lx.accept('/')) text += "/" + lx.digits();
    return Rational::from_string(text);
}

// varpow := q[digits][^digits]
void parse_varpow(Lexer& lx, int arity, ExpVec& e) {
    lx.expect('q');
    int index = 0;
    if (std::isdigit(static_cast<unsigned char>(lx.raw_peek()))) {
        index = static_cast<int>(lx.unsigned_int());
    }
    if (index < 0 || index >= arity)
        throw input_error("parse: variable index out of range for arity");
    uint32_t exp = 1;
    if (lx.accept('^')) exp = static_cast<uint32_t>(lx.unsigned_int());
    e.at(index) += exp;
}

// term := rational [* mono] | mono      (sign handled by caller)
void parse_term(Lexer& lx, int arity, Polynomial& out, bool negative) {
    Rational coeff(1);
    ExpVec e(arity, 0);
    bool have_mono = false;
    if (std::isdigit(static_cast<unsigned char>(lx.peek()))) {
        coeff = parse_rational_token(lx, false);
        if (lx.accept('*')) {
            parse_varpow(lx, arity, e);
            have_mono = true;
        }
    } else {
        parse_varpow(lx, arity, e);
        have_mono = true;
    }
    while (have_mono && lx.accept('*')) parse_varpow(lx, arity, e);
    if (negative) coeff = -coeff;
    out.add_term(e, coeff);
}

Polynomial parse_polynomial_body(Lexer& lx, int arity, bool stop_at_paren) {
    Polynomial out(arity);
    bool negative = lx.accept('-');
    parse_term(lx, arity, out, negative);
    while (true) {
        char c = lx.peek();
        if (c == '+' || c == '-') {
            lx.next();
            parse_term(lx, arity, out, c == '-');
        } else if (c == '\0' || (stop_at_paren && c == ')')) {
            break;
        } else {
            throw input_error(std::string("parse: unexpected character '") + c + "'");
        }
    }
    return out;
}

}  // namespace

Polynomial parse_polynomial(const std::string& text, int arity) {
    Lexer lx(text);
    Polynomial p = parse_polynomial_body(lx, arity, false);
    if (!lx.done()) throw input_error("parse: trailing input after polynomial");
    return p;
}

RationalFunction parse_rational_function(const std::string& text, int arity) {
    Lexer lx(text);
    if (lx.peek() != '(') {
        Polynomial p = parse_polynomial_body(lx, arity, false);
        if (!lx.done()) throw input_error("parse: trailing input after rational function");
        return RationalFunction(std::move(p));
    }
    lx.expect('(');
    Polynomial num = parse_polynomial_body(lx, arity, true);
    lx.expect(')');
    std::vector<DenominatorFactor> den;
    if (!lx.done()) {
        lx.expect('/');
        while (!lx.done()) {
            lx.expect('(');
            Polynomial f = parse_polynomial_body(lx, arity, true);
            lx.expect(')');
            uint32_t exp = 1;
            if (lx.accept('^')) exp = static_cast<uint32_t>(lx.unsigned_int());
            den.push_back({std::move(f), exp});
        }
    }
    return RationalFunction(std::move(num), std::move(den));
}

TruncatedSeries parse_series(const std::string& text) {
    Lexer lx(text);
    lx.expect('[');
    // "orders="
    for (char c : std::string("orders=")) lx.expect(c);
    std::vector<uint32_t> orders;
    orders.push_back(static_cast<uint32_t>(lx.unsigned_int()));
    while (lx.accept(',')) orders.push_back(static_cast<uint32_t>(lx.unsigned_int()));
    int64_t cap = TruncatedSeries::kNoCap;
    if (lx.accept(';')) {
        for (char c : std::string("cap=")) lx.expect(c);
        cap = static_cast<int64_t>(lx.unsigned_int());
    }
    lx.expect(']');
    int arity = static_cast<int>(orders.size());
    Polynomial body = parse_polynomial_body(lx, arity, false);
    if (!lx.done()) throw input_error("parse: trailing input after series");
    TruncatedSeries s = TruncatedSeries::from_polynomial(body, orders, cap);
    // Every stored term must be inside the declared window.
    if (body.term_count() != s.coefficients().size())
        throw input_error("parse: series term outside declared truncation window");
    return s;
}

uint64_t fnv1a64(const std::string& data) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace qk1
