#include "thinsys/field.hpp"

#include <array>
#include <cctype>

#include "thinsys/error.hpp"

namespace thinsys {

namespace {

__extension__ typedef unsigned __int128 uint128;

constexpr std::uint64_t max_modulus = std::uint64_t{1} << 63;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
    return static_cast<std::uint64_t>(static_cast<uint128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp != 0) {
        if (exp & 1U) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1U;
    }
    return result;
}

std::uint64_t reduce(const mpz_class& value, std::uint64_t m) {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), value.get_mpz_t(), m);
    return r.get_ui();
}

} // namespace

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    static constexpr std::array<std::uint64_t, 12> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29,
                                                         31, 37};
    for (auto p : bases) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    // Deterministic for all 64-bit n with these bases.
    for (auto a : bases) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

FieldSpec FieldSpec::prime_field(std::uint64_t modulus) {
    if (modulus >= max_modulus) throw FieldError("modulus " + std::to_string(modulus) + " exceeds 2^63");
    if (!is_prime(modulus)) throw FieldError("modulus " + std::to_string(modulus) + " is not prime");
    return FieldSpec(Kind::PrimeField, modulus);
}

std::string FieldSpec::name() const {
    return is_rational() ? std::string("rational") : "gf " + std::to_string(modulus_);
}

FieldElement FieldElement::zero(const FieldSpec& spec) {
    if (spec.is_rational()) return FieldElement(spec, mpq_class(0));
    return FieldElement(spec, std::uint64_t{0});
}

FieldElement FieldElement::one(const FieldSpec& spec) {
    if (spec.is_rational()) return FieldElement(spec, mpq_class(1));
    return FieldElement(spec, std::uint64_t{1});
}

FieldElement FieldElement::from_integer(const FieldSpec& spec, std::int64_t value) {
    return from_integer(spec, mpz_class(static_cast<long>(value)));
}

FieldElement FieldElement::from_integer(const FieldSpec& spec, const mpz_class& value) {
    if (spec.is_rational()) return FieldElement(spec, mpq_class(value));
    return FieldElement(spec, reduce(value, spec.modulus()));
}

FieldElement FieldElement::from_fraction(const FieldSpec& spec, const mpz_class& num,
                                         const mpz_class& den) {
    if (spec.is_rational()) {
        if (den == 0) throw FieldError("zero denominator");
        mpq_class q(num, den);
        q.canonicalize();
        return FieldElement(spec, std::move(q));
    }
    const std::uint64_t d = reduce(den, spec.modulus());
    if (d == 0) {
        throw FieldError("denominator divisible by field characteristic " +
                         std::to_string(spec.modulus()));
    }
    return FieldElement(spec, reduce(num, spec.modulus())) / FieldElement(spec, d);
}

bool FieldElement::is_zero() const noexcept {
    if (const auto* r = std::get_if<std::uint64_t>(&value_)) return *r == 0;
    return sgn(std::get<mpq_class>(value_)) == 0;
}

bool FieldElement::is_one() const noexcept {
    if (const auto* r = std::get_if<std::uint64_t>(&value_)) return *r == 1;
    return std::get<mpq_class>(value_) == 1;
}

const mpq_class& FieldElement::rational() const {
    if (!spec_.is_rational()) throw FieldError("element is not rational");
    return std::get<mpq_class>(value_);
}

std::uint64_t FieldElement::residue() const {
    if (spec_.is_rational()) throw FieldError("element is not a prime-field residue");
    return std::get<std::uint64_t>(value_);
}

void FieldElement::require_same_field(const FieldElement& other) const {
    if (spec_ != other.spec_) {
        throw FieldError("field mismatch: " + spec_.name() + " vs " + other.spec_.name());
    }
}

FieldElement FieldElement::operator-() const {
    if (spec_.is_rational()) return FieldElement(spec_, mpq_class(-std::get<mpq_class>(value_)));
    const auto r = std::get<std::uint64_t>(value_);
    return FieldElement(spec_, r == 0 ? 0 : spec_.modulus() - r);
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw FieldError("division by zero");
    if (spec_.is_rational()) return FieldElement(spec_, mpq_class(1 / std::get<mpq_class>(value_)));
    return FieldElement(spec_, pow_mod(std::get<std::uint64_t>(value_), spec_.modulus() - 2, spec_.modulus()));
}

FieldElement& FieldElement::operator+=(const FieldElement& rhs) {
    require_same_field(rhs);
    if (spec_.is_rational()) {
        std::get<mpq_class>(value_) += std::get<mpq_class>(rhs.value_);
    } else {
        auto& a = std::get<std::uint64_t>(value_);
        const auto b = std::get<std::uint64_t>(rhs.value_);
        a = a >= spec_.modulus() - b ? a - (spec_.modulus() - b) : a + b;
    }
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& rhs) {
    require_same_field(rhs);
    if (spec_.is_rational()) {
        std::get<mpq_class>(value_) -= std::get<mpq_class>(rhs.value_);
    } else {
        auto& a = std::get<std::uint64_t>(value_);
        const auto b = std::get<std::uint64_t>(rhs.value_);
        a = a >= b ? a - b : a + (spec_.modulus() - b);
    }
    return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& rhs) {
    require_same_field(rhs);
    if (spec_.is_rational()) {
        std::get<mpq_class>(value_) *= std::get<mpq_class>(rhs.value_);
    } else {
        auto& a = std::get<std::uint64_t>(value_);
        a = mul_mod(a, std::get<std::uint64_t>(rhs.value_), spec_.modulus());
    }
    return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& rhs) {
    require_same_field(rhs);
    return *this *= rhs.inverse();
}

bool operator==(const FieldElement& a, const FieldElement& b) {
    if (a.spec_ != b.spec_) return false;
    if (a.spec_.is_rational()) return std::get<mpq_class>(a.value_) == std::get<mpq_class>(b.value_);
    return std::get<std::uint64_t>(a.value_) == std::get<std::uint64_t>(b.value_);
}

FieldElement arith(const FieldElement& a, const FieldElement& b, ArithOp op) {
    switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
    case ArithOp::Div: return a / b;
    }
    throw FieldError("unknown arithmetic operation");
}

FieldElement parse_scalar(std::string_view text, const FieldSpec& spec) {
    std::size_t pos = 0;
    auto skip_space = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto digits = [&]() -> std::string {
        const std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        return std::string(text.substr(start, pos - start));
    };
    auto fail = [&](const char* why) -> ParseError {
        return ParseError("malformed scalar '" + std::string(text) + "': " + why);
    };

    skip_space();
    bool negative = false;
    if (pos < text.size() && text[pos] == '-') {
        negative = true;
        ++pos;
        skip_space();
    }
    const std::string num = digits();
    if (num.empty()) throw fail("expected digits");
    skip_space();
    std::string den = "1";
    if (pos < text.size() && text[pos] == '/') {
        ++pos;
        skip_space();
        den = digits();
        if (den.empty()) throw fail("expected denominator digits");
        skip_space();
    }
    if (pos != text.size()) throw fail("trailing characters");

    mpz_class n(num, 10);
    if (negative) n = -n;
    return FieldElement::from_fraction(spec, n, mpz_class(den, 10));
}

std::string render(const FieldElement& x) {
    if (x.spec().is_rational()) return x.rational().get_str(10);
    return std::to_string(x.residue());
}

} // namespace thinsys
