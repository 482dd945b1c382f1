/**
 * @file field.hpp
 * @brief Exact scalar fields: the rationals, prime fields, and a single
 *        quadratic extension layer over either.
 *
 * A Field is a cheap handle to an interned, immutable descriptor, so two
 * handles compare equal exactly when they describe the same field.
 * Every FieldElement carries its field and is kept in canonical form
 * (reduced fractions, least residues, pairs a + b*sqrt(D)), which makes
 * equality structural.
 *
 * Text encodings:
 *   - rationals:           "n" or "p/q"
 *   - prime field:         "n mod p"
 *   - extension over Q:    "a+b*sqrt(D)"
 *   - extension over F_p:  "a+b*sqrt(D) mod p"
 *
 * Field descriptors: "Q", "Q(i)", "Q(sqrt:D)", "Fp:p", "Fp2:p" and
 * "Fp(sqrt:n):p".  "Fp2:p" is F_p adjoined the square root of the least
 * quadratic nonresidue.
 */
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "tbtd/error.hpp"

namespace tbtd {

namespace detail {
struct FieldData;
}

class FieldElement;

class Field {
public:
    /// The rational numbers.
    static Field rationals();
    /// F_p; throws InvalidArgument unless p is prime.
    static Field prime(const mpz_class& p);
    /// base(sqrt(D)); D must be a nonsquare of a non-extension base field.
    static Field quadratic(const Field& base, const FieldElement& D);
    /// Parses a field descriptor such as "Q(i)" or "Fp:101".
    static Field parse(std::string_view spec);

    /// Canonical descriptor string; parse(spec()) == *this.
    const std::string& spec() const;
    const mpz_class& characteristic() const;
    bool is_prime_base() const;
    bool is_extension() const;
    /// The base field (itself when not an extension).
    Field base() const;
    /// D for an extension field, as an element of the base.
    FieldElement ext_d() const;
    /// The element sqrt(D) of an extension field.
    FieldElement sqrt_d() const;

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_int(long long n) const;
    FieldElement from_mpz(const mpz_class& n) const;
    FieldElement from_rational(const mpq_class& x) const;
    /// Parses the text encoding of an element. Bare rationals are accepted
    /// in every field and mapped through the prime subfield.
    FieldElement parse_element(std::string_view text) const;

    bool operator==(const Field& other) const { return d_ == other.d_; }
    bool operator!=(const Field& other) const { return d_ != other.d_; }

    const detail::FieldData* data() const { return d_; }

private:
    explicit Field(const detail::FieldData* d) : d_(d) {}
    const detail::FieldData* d_;
    friend class FieldElement;
};

class FieldElement {
public:
    /// An unset element; any arithmetic with it raises FieldMismatch.
    FieldElement() = default;

    Field field() const;
    bool is_set() const { return f_ != nullptr; }

    /// Rational part (a residue for prime base fields).
    const mpq_class& a() const { return a_; }
    /// Coefficient of sqrt(D); zero outside extension fields.
    const mpq_class& b() const { return b_; }

    bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
    bool is_one() const { return a_ == 1 && sgn(b_) == 0; }

    FieldElement operator-() const;
    FieldElement& operator+=(const FieldElement& o);
    FieldElement& operator-=(const FieldElement& o);
    FieldElement& operator*=(const FieldElement& o);
    FieldElement& operator/=(const FieldElement& o);

    FieldElement inv() const;
    FieldElement pow(long long n) const;
    /// a + b sqrt(D) -> a - b sqrt(D); identity outside extensions.
    FieldElement conj() const;

    /// A square root, chosen encoding-minimal between r and -r.
    std::optional<FieldElement> sqrt() const;
    bool is_square() const { return sqrt().has_value(); }

    std::string to_string() const;

    bool operator==(const FieldElement& o) const { return f_ == o.f_ && a_ == o.a_ && b_ == o.b_; }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    /// acc += x * y without allocating a temporary element.
    friend void mul_add(FieldElement& acc, const FieldElement& x, const FieldElement& y, mpq_class& tmp);

private:
    FieldElement(const detail::FieldData* f, mpq_class a, mpq_class b);
    void check(const FieldElement& o) const;
    const detail::FieldData* f_ = nullptr;
    mpq_class a_;
    mpq_class b_;
    friend class Field;
};

inline FieldElement operator+(FieldElement x, const FieldElement& y) { return x += y; }
inline FieldElement operator-(FieldElement x, const FieldElement& y) { return x -= y; }
inline FieldElement operator*(FieldElement x, const FieldElement& y) { return x *= y; }
inline FieldElement operator/(FieldElement x, const FieldElement& y) { return x /= y; }

/// Total order by (encoding length, encoding); used to pick canonical
/// representatives among sign or inverse choices.
bool encoding_less(const FieldElement& x, const FieldElement& y);

/// Least integer n >= 2 that is a quadratic nonresidue mod the odd prime p.
mpz_class least_nonresidue(const mpz_class& p);

}  // namespace tbtd
