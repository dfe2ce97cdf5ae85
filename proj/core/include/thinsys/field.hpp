#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace thinsys {

/// Describes the scalar field: the rationals or GF(p) for a prime p < 2^63.
class FieldSpec {
public:
    enum class Kind { Rationals, PrimeField };

    static FieldSpec rationals() noexcept { return FieldSpec(Kind::Rationals, 0); }
    /// Throws FieldError unless `modulus` is a prime below 2^63.
    static FieldSpec prime_field(std::uint64_t modulus);

    Kind kind() const noexcept { return kind_; }
    bool is_rational() const noexcept { return kind_ == Kind::Rationals; }
    /// 0 for the rationals.
    std::uint64_t modulus() const noexcept { return modulus_; }

    /// "rational" or "gf <p>", matching the matrix file header.
    std::string name() const;

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

private:
    FieldSpec(Kind kind, std::uint64_t modulus) noexcept : kind_(kind), modulus_(modulus) {}

    Kind kind_;
    std::uint64_t modulus_;
};

bool is_prime(std::uint64_t n) noexcept;

/// An exact scalar tagged with its field. Values are kept canonical: reduced
/// fractions with positive denominator, or residues in [0, p).
class FieldElement {
public:
    static FieldElement zero(const FieldSpec& spec);
    static FieldElement one(const FieldSpec& spec);
    static FieldElement from_integer(const FieldSpec& spec, std::int64_t value);
    static FieldElement from_integer(const FieldSpec& spec, const mpz_class& value);
    /// Throws FieldError if `den` vanishes in the field.
    static FieldElement from_fraction(const FieldSpec& spec, const mpz_class& num, const mpz_class& den);

    const FieldSpec& spec() const noexcept { return spec_; }
    bool is_zero() const noexcept;
    bool is_one() const noexcept;

    /// Only valid for rational elements.
    const mpq_class& rational() const;
    /// Only valid for prime-field elements.
    std::uint64_t residue() const;

    FieldElement operator-() const;
    FieldElement inverse() const;

    FieldElement& operator+=(const FieldElement& rhs);
    FieldElement& operator-=(const FieldElement& rhs);
    FieldElement& operator*=(const FieldElement& rhs);
    FieldElement& operator/=(const FieldElement& rhs);

    friend FieldElement operator+(FieldElement lhs, const FieldElement& rhs) { return lhs += rhs; }
    friend FieldElement operator-(FieldElement lhs, const FieldElement& rhs) { return lhs -= rhs; }
    friend FieldElement operator*(FieldElement lhs, const FieldElement& rhs) { return lhs *= rhs; }
    friend FieldElement operator/(FieldElement lhs, const FieldElement& rhs) { return lhs /= rhs; }

    friend bool operator==(const FieldElement& a, const FieldElement& b);

private:
    FieldElement(const FieldSpec& spec, std::uint64_t residue) : spec_(spec), value_(residue) {}
    FieldElement(const FieldSpec& spec, mpq_class q) : spec_(spec), value_(std::move(q)) {}

    void require_same_field(const FieldElement& other) const;

    FieldSpec spec_;
    std::variant<std::uint64_t, mpq_class> value_;
};

enum class ArithOp { Add, Sub, Mul, Div };

FieldElement arith(const FieldElement& a, const FieldElement& b, ArithOp op);

/// Grammar: optional '-', decimal digits, optionally '/' and decimal digits.
/// Whitespace between tokens and around the literal is ignored.
FieldElement parse_scalar(std::string_view text, const FieldSpec& spec);

/// Canonical text: "n", "-n" or "n/d" for rationals, the residue for GF(p).
std::string render(const FieldElement& x);

} // namespace thinsys
