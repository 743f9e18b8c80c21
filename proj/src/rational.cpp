#include "zariski/rational.hpp"

#include <cctype>

namespace zariski {

namespace {

bool parse_integer(std::string_view text, Integer& out) {
    std::size_t i = 0;
    if (i < text.size() && (text[i] == '-' || text[i] == '+'))
        ++i;
    if (i == text.size())
        return false;
    for (std::size_t k = i; k < text.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(text[k])))
            return false;
    std::string digits(text);
    if (digits.front() == '+')
        digits.erase(0, 1);
    return out.set_str(digits, 10) == 0;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
        text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
        text.remove_suffix(1);
    Integer num, den = 1;
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        if (!parse_integer(text, num))
            throw ParseError("malformed rational '" + std::string(text) + "'", 0);
    } else {
        if (!parse_integer(text.substr(0, slash), num) ||
            !parse_integer(text.substr(slash + 1), den))
            throw ParseError("malformed rational '" + std::string(text) + "'", slash);
        if (den == 0)
            throw ParseError("zero denominator in '" + std::string(text) + "'", slash);
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1)
        return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

Integer ceil(const Rational& q) {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Integer floor(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

}  // namespace zariski
