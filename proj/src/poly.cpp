#include "zariski/curve.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace zariski {

Poly::Poly(const Rational& c) {
    if (c != 0)
        terms_.emplace(Exponent{0, 0}, c);
}

Poly Poly::x() { return monomial(1, 1, 0); }
Poly Poly::y() { return monomial(1, 0, 1); }

Poly Poly::monomial(const Rational& c, unsigned ex, unsigned ey) {
    Poly p;
    p.add_term({ex, ey}, c);
    return p;
}

void Poly::add_term(const Exponent& e, const Rational& c) {
    if (c == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponent{0, 0});
}

unsigned Poly::order() const {
    if (terms_.empty())
        throw DomainError("order of the zero polynomial is infinite");
    unsigned best = ~0u;
    for (const auto& [e, c] : terms_)
        best = std::min(best, e.first + e.second);
    return best;
}

unsigned Poly::total_degree() const {
    unsigned best = 0;
    for (const auto& [e, c] : terms_)
        best = std::max(best, e.first + e.second);
    return best;
}

Rational Poly::coefficient(unsigned ex, unsigned ey) const {
    auto it = terms_.find({ex, ey});
    return it == terms_.end() ? Rational(0) : it->second;
}

Poly Poly::derivative_x() const {
    Poly d;
    for (const auto& [e, c] : terms_)
        if (e.first > 0)
            d.add_term({e.first - 1, e.second}, c * e.first);
    return d;
}

Poly Poly::derivative_y() const {
    Poly d;
    for (const auto& [e, c] : terms_)
        if (e.second > 0)
            d.add_term({e.first, e.second - 1}, c * e.second);
    return d;
}

Poly Poly::pow(unsigned k) const {
    Poly result(1);
    Poly base = *this;
    while (k) {
        if (k & 1u)
            result = result * base;
        k >>= 1;
        if (k)
            base = base * base;
    }
    return result;
}

Poly& Poly::operator+=(const Poly& o) {
    for (const auto& [e, c] : o.terms_)
        add_term(e, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (const auto& [e, c] : o.terms_)
        add_term(e, -c);
    return *this;
}

Poly& Poly::operator*=(const Rational& s) {
    if (s == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, c] : terms_)
        c *= s;
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_)
            r.add_term({ea.first + eb.first, ea.second + eb.second}, ca * cb);
    return r;
}

std::string to_string(const Poly& p) {
    if (p.is_zero())
        return "0";
    std::vector<std::pair<Poly::Exponent, Rational>> terms(p.terms().begin(), p.terms().end());
    std::sort(terms.begin(), terms.end(), [](const auto& l, const auto& r) {
        const unsigned dl = l.first.first + l.first.second, dr = r.first.first + r.first.second;
        if (dl != dr)
            return dl > dr;
        return l.first.first > r.first.first;
    });
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms) {
        Rational mag = c;
        if (c < 0) {
            out << (first ? "-" : " - ");
            mag = -c;
        } else if (!first) {
            out << " + ";
        }
        first = false;
        const bool has_vars = e.first || e.second;
        bool need_star = false;
        if (!has_vars || mag != 1) {
            out << to_string(mag);
            need_star = true;
        }
        auto var = [&](char name, unsigned k) {
            if (!k)
                return;
            out << (need_star ? "*" : "") << name;
            if (k > 1)
                out << '^' << k;
            need_star = true;
        };
        var('x', e.first);
        var('y', e.second);
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Recursive-descent parser.
//
//   expr    := term { ("+" | "-") term }
//   term    := unary { ["*" | "/"] unary }      juxtaposition multiplies
//   unary   := ("+" | "-") unary | power
//   power   := primary [ "^" integer ]
//   primary := integer | "x" | "y" | "(" expr ")"

namespace {

class PolyParser {
public:
    explicit PolyParser(std::string_view text) : text_(text) {}

    Poly parse() {
        Poly p = expr();
        skip();
        if (pos_ != text_.size())
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError("polynomial: " + msg, pos_); }

    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    char peek() {
        skip();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    Poly expr() {
        Poly acc = term();
        for (;;) {
            const char c = peek();
            if (c == '+') {
                ++pos_;
                acc += term();
            } else if (c == '-') {
                ++pos_;
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    Poly term() {
        Poly acc = unary();
        for (;;) {
            const char c = peek();
            if (c == '*') {
                ++pos_;
                acc = acc * unary();
            } else if (c == '/') {
                ++pos_;
                const std::size_t at = pos_;
                const Poly d = unary();
                if (!d.is_constant() || d.is_zero()) {
                    pos_ = at;
                    fail("division only by a nonzero constant");
                }
                acc *= Rational(1) / d.coefficient(0, 0);
            } else if (c == 'x' || c == 'y' || c == '(' || std::isdigit(static_cast<unsigned char>(c))) {
                acc = acc * power();
            } else {
                return acc;
            }
        }
    }

    Poly unary() {
        const char c = peek();
        if (c == '-') {
            ++pos_;
            return -unary();
        }
        if (c == '+') {
            ++pos_;
            return unary();
        }
        return power();
    }

    Poly power() {
        Poly base = primary();
        if (peek() == '^') {
            ++pos_;
            skip();
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            if (start == pos_)
                fail("expected a nonnegative integer exponent");
            if (pos_ - start > 6)
                fail("exponent too large");
            base = base.pow(static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start)))));
        }
        return base;
    }

    Poly primary() {
        const char c = peek();
        if (c == 'x' || c == 'y') {
            ++pos_;
            return c == 'x' ? Poly::x() : Poly::y();
        }
        if (c == '(') {
            ++pos_;
            Poly inner = expr();
            if (peek() != ')')
                fail("expected ')'");
            ++pos_;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            return Poly(Rational(Integer(std::string(text_.substr(start, pos_ - start)))));
        }
        if (c == '\0')
            fail("unexpected end of input");
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Poly parse_polynomial(std::string_view text) { return PolyParser(text).parse(); }

PlaneElement::PlaneElement(Poly p) : poly_(std::move(p)) {
    if (poly_.is_zero())
        throw DomainError("the zero element has infinite value under every valuation");
}

PlaneElement parse_poly(std::string_view text) { return PlaneElement(parse_polynomial(text)); }

// ---------------------------------------------------------------------------
// gcd in Q[x][y] by primitive pseudo-remainder sequences.

namespace {

using UPoly = std::vector<Rational>;  // coefficients in x, ascending
using BPoly = std::vector<UPoly>;     // coefficients in y, ascending

void trim(UPoly& p) {
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

void trim(BPoly& p) {
    while (!p.empty() && p.back().empty())
        p.pop_back();
}

UPoly mul(const UPoly& a, const UPoly& b) {
    if (a.empty() || b.empty())
        return {};
    UPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

UPoly sub(const UPoly& a, const UPoly& b) {
    UPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        r[i] -= b[i];
    trim(r);
    return r;
}

// Quotient and remainder in Q[x].
std::pair<UPoly, UPoly> divmod(UPoly a, const UPoly& b) {
    UPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
    while (!a.empty() && a.size() >= b.size()) {
        const std::size_t shift = a.size() - b.size();
        const Rational f = a.back() / b.back();
        q[shift] = f;
        for (std::size_t i = 0; i < b.size(); ++i)
            a[i + shift] -= f * b[i];
        trim(a);
    }
    trim(q);
    return {q, a};
}

UPoly monic(UPoly p) {
    if (!p.empty()) {
        const Rational lc = p.back();
        for (auto& c : p)
            c /= lc;
    }
    return p;
}

UPoly gcd(UPoly a, UPoly b) {
    while (!b.empty()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(std::move(a));
}

BPoly to_bpoly(const Poly& p) {
    BPoly r;
    for (const auto& [e, c] : p.terms()) {
        if (r.size() <= e.second)
            r.resize(e.second + 1);
        auto& u = r[e.second];
        if (u.size() <= e.first)
            u.resize(e.first + 1);
        u[e.first] = c;
    }
    for (auto& u : r)
        trim(u);
    trim(r);
    return r;
}

Poly from_bpoly(const BPoly& p) {
    Poly r;
    for (unsigned j = 0; j < p.size(); ++j)
        for (unsigned i = 0; i < p[j].size(); ++i)
            if (p[j][i] != 0)
                r += Poly::monomial(p[j][i], i, j);
    return r;
}

UPoly content(const BPoly& p) {
    UPoly g;
    for (const auto& u : p)
        if (!u.empty())
            g = gcd(g, u);
    return g;
}

BPoly primitive_part(const BPoly& p) {
    const UPoly c = content(p);
    BPoly r;
    for (const auto& u : p)
        r.push_back(divmod(u, c).first);
    trim(r);
    return r;
}

BPoly prem(BPoly f, const BPoly& g) {
    const UPoly& lc = g.back();
    std::size_t e = f.size() >= g.size() ? f.size() - g.size() + 1 : 0;
    while (!f.empty() && f.size() >= g.size()) {
        const std::size_t shift = f.size() - g.size();
        const UPoly lead = f.back();
        for (auto& u : f)
            u = mul(u, lc);
        for (std::size_t i = 0; i < g.size(); ++i)
            f[i + shift] = sub(f[i + shift], mul(lead, g[i]));
        trim(f);
        --e;
    }
    for (; e > 0; --e)
        for (auto& u : f)
            u = mul(u, lc);
    return f;
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
    BPoly f = to_bpoly(a), g = to_bpoly(b);
    if (f.empty() && g.empty())
        return Poly();
    UPoly c;
    if (f.empty())
        c = content(g);
    else if (g.empty())
        c = content(f);
    else
        c = gcd(content(f), content(g));
    if (!f.empty())
        f = primitive_part(f);
    if (!g.empty())
        g = primitive_part(g);
    if (f.size() < g.size())
        std::swap(f, g);
    while (!g.empty()) {
        if (g.size() == 1) {
            f = BPoly{UPoly{1}};
            break;
        }
        BPoly r = prem(f, g);
        f = std::move(g);
        g = r.empty() ? BPoly{} : primitive_part(r);
    }
    BPoly result;
    for (const auto& u : f.empty() ? BPoly{UPoly{1}} : f)
        result.push_back(mul(u, c));
    trim(result);
    Poly out = from_bpoly(result);
    if (!out.is_zero()) {
        // Normalize by the coefficient of the largest exponent in (y, x) order.
        const auto& lead = std::max_element(out.terms().begin(), out.terms().end(), [](const auto& l, const auto& r) {
            return std::pair(l.first.second, l.first.first) < std::pair(r.first.second, r.first.first);
        })->second;
        out *= Rational(1) / lead;
    }
    return out;
}

bool is_squarefree(const Poly& f) {
    if (f.is_zero())
        return false;
    const Poly g = gcd(gcd(f, f.derivative_x()), f.derivative_y());
    return g.is_constant();
}

}  // namespace zariski
