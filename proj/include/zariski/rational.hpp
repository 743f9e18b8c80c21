#pragma once

// Exact integer and rational scalars, plus the library's exception types.

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace zariski {

using Integer = mpz_class;
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Violated structural precondition (coincident points, curves that do not meet, ...).
class StructuralError : public Error {
public:
    using Error::Error;
};

/// Bad argument shape or domain: length mismatch, non-integer where integer required, etc.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A curve computation needed a coordinate that the cluster does not carry.
class MissingCoordinates : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " (at " + std::to_string(position) + ")"), position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

inline Rational make_rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Parses "a", "-a" or "a/b". Throws ParseError on anything else or a zero denominator.
Rational parse_rational(std::string_view text);

/// Serializes as "a" when integral, else "a/b".
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

Integer ceil(const Rational& q);
Integer floor(const Rational& q);

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

}  // namespace zariski
