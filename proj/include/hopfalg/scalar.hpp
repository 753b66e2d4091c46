#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

namespace hopfalg {

// Exact field element: a rational number, or a residue modulo a prime p.
//
// Rationals live in two 64-bit words while they fit and spill into an
// arbitrary-precision rational otherwise; the representation is always
// canonical (lowest terms, positive denominator, small whenever it fits), so
// equality is a plain field comparison. Plain integer constants are rationals
// and coerce into F_p when combined with a residue.
class Scalar {
public:
    Scalar() = default;
    Scalar(long long v) : n_(v) {}  // NOLINT: integer constants convert implicitly
    Scalar(int v) : n_(v) {}        // NOLINT
    Scalar(const Scalar& o);
    Scalar(Scalar&&) noexcept = default;
    Scalar& operator=(const Scalar& o);
    Scalar& operator=(Scalar&&) noexcept = default;
    ~Scalar();

    static Scalar fraction(long long num, long long den);
    static Scalar residue(long long v, std::uint32_t p);
    // Accepts "n", "-n", "n/d" with arbitrarily long decimal digits.
    static Scalar parse(std::string_view text, std::uint32_t p = 0);

    std::uint32_t modulus() const { return p_; }
    bool is_zero() const { return !big_ && n_ == 0; }
    bool is_one() const { return !big_ && n_ == 1 && d_ == 1; }

    // Rational numerator/denominator as decimal strings (residues: value, "1").
    std::string num_str() const;
    std::string den_str() const;
    std::string str() const;

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    Scalar operator-() const;
    Scalar inverse() const;

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // Convert into F_p (p = 0 leaves the value unchanged).
    Scalar in_field(std::uint32_t p) const;

    struct Big;
    struct BigDeleter {
        void operator()(Big* b) const noexcept;
    };

private:
    bool add_small(const Scalar& o, bool negate);
    bool mul_small(const Scalar& o);
    void slow_op(const Scalar& o, char op);
    void demote();

    std::int64_t n_ = 0;
    std::int64_t d_ = 1;
    std::uint32_t p_ = 0;
    std::unique_ptr<Big, BigDeleter> big_;
};

inline Scalar& Scalar::operator+=(const Scalar& o) {
    if (!big_ && !o.big_ && p_ == o.p_) {
        if (p_ != 0) {
            n_ = static_cast<std::int64_t>((static_cast<std::uint64_t>(n_) + static_cast<std::uint64_t>(o.n_)) % p_);
            return *this;
        }
        if (add_small(o, false)) return *this;
    }
    slow_op(o, '+');
    return *this;
}

inline Scalar& Scalar::operator-=(const Scalar& o) {
    if (!big_ && !o.big_ && p_ == o.p_) {
        if (p_ != 0) {
            n_ = static_cast<std::int64_t>((static_cast<std::uint64_t>(n_) + p_ - static_cast<std::uint64_t>(o.n_)) % p_);
            return *this;
        }
        if (add_small(o, true)) return *this;
    }
    slow_op(o, '-');
    return *this;
}

inline Scalar& Scalar::operator*=(const Scalar& o) {
    if (!big_ && !o.big_ && p_ == o.p_) {
        if (p_ != 0) {
            n_ = static_cast<std::int64_t>((static_cast<std::uint64_t>(n_) * static_cast<std::uint64_t>(o.n_)) % p_);
            return *this;
        }
        if (mul_small(o)) return *this;
    }
    slow_op(o, '*');
    return *this;
}

}  // namespace hopfalg
