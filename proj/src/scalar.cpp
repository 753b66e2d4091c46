#include "hopfalg/scalar.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <limits>
#include <numeric>

#include "hopfalg/errors.hpp"

namespace hopfalg {

namespace mp = boost::multiprecision;
using BigInt = mp::cpp_int;
using BigRat = mp::cpp_rational;

struct Scalar::Big {
    BigRat v;
};

void Scalar::BigDeleter::operator()(Big* b) const noexcept { delete b; }

using BigPtr = std::unique_ptr<Scalar::Big, Scalar::BigDeleter>;

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

u128 uabs(i128 x) { return x < 0 ? static_cast<u128>(-x) : static_cast<u128>(x); }

u128 gcd128(u128 a, u128 b) {
    while (b != 0) {
        u128 r = a % b;
        a = b;
        b = r;
    }
    return a;
}

bool fits64(i128 x) {
    return x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max();
}

std::int64_t mod_pow(std::int64_t base, std::uint64_t e, std::uint32_t p) {
    std::uint64_t result = 1, b = static_cast<std::uint64_t>(base) % p;
    while (e) {
        if (e & 1) result = result * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return static_cast<std::int64_t>(result);
}

std::int64_t reduce_mod(const BigInt& v, std::uint32_t p) {
    BigInt r = v % p;
    if (r < 0) r += p;
    return static_cast<std::int64_t>(r);
}

std::int64_t reduce_mod(std::int64_t v, std::uint32_t p) {
    std::int64_t r = v % static_cast<std::int64_t>(p);
    return r < 0 ? r + p : r;
}

}  // namespace

Scalar::Scalar(const Scalar& o) : n_(o.n_), d_(o.d_), p_(o.p_) {
    if (o.big_) big_ = BigPtr(new Big(*o.big_));
}

Scalar& Scalar::operator=(const Scalar& o) {
    if (this == &o) return *this;
    n_ = o.n_;
    d_ = o.d_;
    p_ = o.p_;
    if (o.big_)
        big_ = BigPtr(new Big(*o.big_));
    else
        big_.reset();
    return *this;
}

Scalar::~Scalar() = default;

Scalar Scalar::fraction(long long num, long long den) {
    if (den == 0) throw Error("DivisionByZero", "zero denominator");
    Scalar r;
    i128 n = num, d = den;
    if (d < 0) {
        n = -n;
        d = -d;
    }
    u128 g = gcd128(uabs(n), static_cast<u128>(d));
    if (g > 1) {
        n /= static_cast<i128>(g);
        d /= static_cast<i128>(g);
    }
    if (fits64(n) && fits64(d)) {
        r.n_ = static_cast<std::int64_t>(n);
        r.d_ = static_cast<std::int64_t>(d);
    } else {
        r.big_ = BigPtr(new Big(Big{BigRat(BigInt(num), BigInt(den))}));
        r.demote();
    }
    return r;
}

Scalar Scalar::residue(long long v, std::uint32_t p) {
    if (p < 2) throw Error("BadField", "modulus must be a prime >= 2");
    Scalar r;
    r.p_ = p;
    r.n_ = reduce_mod(static_cast<std::int64_t>(v), p);
    return r;
}

Scalar Scalar::parse(std::string_view text, std::uint32_t p) {
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t start = 0;
    while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
    s = s.substr(start);
    auto valid_int = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den)) throw Error("ParseError", "not a rational number: '" + s + "'");
    if (num[0] == '+') num = num.substr(1);
    if (den[0] == '+') den = den.substr(1);
    BigInt bn(num), bd(den);
    if (bd == 0) throw Error("DivisionByZero", "zero denominator in '" + s + "'");
    Scalar r;
    r.big_ = BigPtr(new Big(Big{BigRat(bn, bd)}));
    r.demote();
    return p ? r.in_field(p) : r;
}

void Scalar::demote() {
    if (!big_) return;
    const BigRat& v = big_->v;
    BigInt num = mp::numerator(v), den = mp::denominator(v);
    static const BigInt lo(std::numeric_limits<std::int64_t>::min());
    static const BigInt hi(std::numeric_limits<std::int64_t>::max());
    if (num >= lo && num <= hi && den <= hi) {
        n_ = static_cast<std::int64_t>(num);
        d_ = static_cast<std::int64_t>(den);
        big_.reset();
    }
}

Scalar Scalar::in_field(std::uint32_t p) const {
    if (p == p_) return *this;
    if (p == 0) throw Error("FieldMismatch", "cannot lift a residue to the rationals");
    if (p_ != 0) throw Error("FieldMismatch", "residues modulo different primes");
    std::int64_t num, den;
    if (big_) {
        num = reduce_mod(mp::numerator(big_->v), p);
        den = reduce_mod(mp::denominator(big_->v), p);
    } else {
        num = reduce_mod(n_, p);
        den = reduce_mod(d_, p);
    }
    if (den == 0) throw Error("DivisionByZero", "denominator vanishes modulo " + std::to_string(p));
    Scalar r;
    r.p_ = p;
    r.n_ = static_cast<std::int64_t>(static_cast<std::uint64_t>(num) * static_cast<std::uint64_t>(mod_pow(den, p - 2, p)) % p);
    return r;
}

bool Scalar::add_small(const Scalar& o, bool negate) {
    i128 on = negate ? -static_cast<i128>(o.n_) : static_cast<i128>(o.n_);
    if (d_ == 1 && o.d_ == 1) {
        i128 s = static_cast<i128>(n_) + on;
        if (!fits64(s)) return false;
        n_ = static_cast<std::int64_t>(s);
        return true;
    }
    u128 g = gcd128(static_cast<u128>(d_), static_cast<u128>(o.d_));
    i128 dg = d_ / static_cast<i128>(g), odg = o.d_ / static_cast<i128>(g);
    i128 t = static_cast<i128>(n_) * odg + on * dg;
    if (t == 0) {
        n_ = 0;
        d_ = 1;
        return true;
    }
    u128 g2 = gcd128(uabs(t), g);
    i128 num = t / static_cast<i128>(g2);
    i128 den = dg * (o.d_ / static_cast<i128>(g2));
    if (!fits64(num) || !fits64(den)) return false;
    n_ = static_cast<std::int64_t>(num);
    d_ = static_cast<std::int64_t>(den);
    return true;
}

bool Scalar::mul_small(const Scalar& o) {
    if (n_ == 0 || o.n_ == 0) {
        n_ = 0;
        d_ = 1;
        return true;
    }
    if (d_ == 1 && o.d_ == 1) {
        std::int64_t r;
        if (__builtin_mul_overflow(n_, o.n_, &r)) return false;
        n_ = r;
        return true;
    }
    std::int64_t g1 = std::gcd(n_, o.d_), g2 = std::gcd(o.n_, d_);
    std::int64_t num, den;
    if (__builtin_mul_overflow(n_ / g1, o.n_ / g2, &num)) return false;
    if (__builtin_mul_overflow(d_ / g2, o.d_ / g1, &den)) return false;
    n_ = num;
    d_ = den;
    return true;
}

void Scalar::slow_op(const Scalar& o, char op) {
    if (p_ != o.p_) {
        std::uint32_t p = p_ ? p_ : o.p_;
        Scalar a = in_field(p), b = o.in_field(p);
        switch (op) {
            case '+': a += b; break;
            case '-': a -= b; break;
            case '*': a *= b; break;
            default: a /= b; break;
        }
        *this = std::move(a);
        return;
    }
    BigRat a = big_ ? big_->v : BigRat(BigInt(n_), BigInt(d_));
    BigRat b = o.big_ ? o.big_->v : BigRat(BigInt(o.n_), BigInt(o.d_));
    switch (op) {
        case '+': a += b; break;
        case '-': a -= b; break;
        case '*': a *= b; break;
        default:
            if (b == 0) throw Error("DivisionByZero", "division by zero");
            a /= b;
            break;
    }
    big_ = BigPtr(new Big(Big{std::move(a)}));
    demote();
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw Error("DivisionByZero", "inverse of zero");
    Scalar r;
    r.p_ = p_;
    if (p_ != 0) {
        r.n_ = mod_pow(n_, p_ - 2, p_);
        return r;
    }
    if (big_) {
        r.big_ = BigPtr(new Big(Big{BigRat(1) / big_->v}));
        r.demote();
        return r;
    }
    if (n_ == std::numeric_limits<std::int64_t>::min()) {
        r.big_ = BigPtr(new Big(Big{BigRat(BigInt(d_), BigInt(n_))}));
        r.demote();
        return r;
    }
    r.n_ = n_ < 0 ? -d_ : d_;
    r.d_ = n_ < 0 ? -n_ : n_;
    return r;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (o.is_zero()) throw Error("DivisionByZero", "division by zero");
    if (p_ == o.p_ && !o.big_) return *this *= o.inverse();
    slow_op(o, '/');
    return *this;
}

Scalar Scalar::operator-() const {
    Scalar r(*this);
    if (r.p_ != 0) {
        r.n_ = r.n_ == 0 ? 0 : r.p_ - r.n_;
    } else if (r.big_) {
        r.big_->v = -r.big_->v;
        r.demote();
    } else if (r.n_ == std::numeric_limits<std::int64_t>::min()) {
        r.big_ = BigPtr(new Big(Big{-BigRat(BigInt(r.n_), BigInt(r.d_))}));
        r.demote();
    } else {
        r.n_ = -r.n_;
    }
    return r;
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.p_ != b.p_) {
        if (a.is_zero() && b.is_zero()) return true;
        std::uint32_t p = a.p_ ? a.p_ : b.p_;
        return a.in_field(p) == b.in_field(p);
    }
    if (a.big_ || b.big_) {
        if (!a.big_ || !b.big_) return false;  // canonical form: small values are never big
        return a.big_->v == b.big_->v;
    }
    return a.n_ == b.n_ && a.d_ == b.d_;
}

std::string Scalar::num_str() const {
    if (big_) return mp::numerator(big_->v).str();
    return std::to_string(n_);
}

std::string Scalar::den_str() const {
    if (big_) return mp::denominator(big_->v).str();
    return std::to_string(d_);
}

std::string Scalar::str() const {
    std::string d = den_str();
    return d == "1" ? num_str() : num_str() + "/" + d;
}

}  // namespace hopfalg
