#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace qtv {

/// Arbitrary-precision integer with an int64 fast path.
/// Values that fit in int64 never touch GMP; overflow promotes to mpz.
class Integer {
public:
    Integer() = default;
    Integer(long long v) : small_(v) {}  // NOLINT(implicit)
    Integer(int v) : small_(v) {}        // NOLINT(implicit)
    Integer(long v) : small_(v) {}       // NOLINT(implicit)
    explicit Integer(const mpz_class& z) { assign_mpz(z); }

    Integer(const Integer& o) : small_(o.small_) {
        if (o.big_) big_ = std::make_unique<mpz_class>(*o.big_);
    }
    Integer(Integer&&) noexcept = default;
    Integer& operator=(const Integer& o) {
        if (this != &o) {
            small_ = o.small_;
            if (o.big_) {
                if (big_) *big_ = *o.big_;
                else big_ = std::make_unique<mpz_class>(*o.big_);
            } else {
                big_.reset();
            }
        }
        return *this;
    }
    Integer& operator=(Integer&&) noexcept = default;

    static Integer from_int128(__int128 v) {
        if (v >= INT64_MIN && v <= INT64_MAX) return Integer(static_cast<long long>(v));
        bool neg = v < 0;
        unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1u
                                  : static_cast<unsigned __int128>(v);
        mpz_class z(static_cast<unsigned long>(u >> 64));
        z <<= 64;
        z += mpz_class(static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFull));
        if (neg) z = -z;
        return Integer(z);
    }

    static Integer from_string(const std::string& s) {
        mpz_class z;
        if (s.empty() || z.set_str(s, 10) != 0)
            throw std::invalid_argument("not an integer: '" + s + "'");
        return Integer(z);
    }

    bool is_small() const { return !big_; }
    long long small_value() const { return small_; }

    mpz_class to_mpz() const {
        if (big_) return *big_;
        mpz_class z;
        mpz_set_si(z.get_mpz_t(), small_);
        return z;
    }

    bool is_zero() const { return !big_ && small_ == 0; }
    bool is_one() const { return !big_ && small_ == 1; }
    int sign() const {
        if (big_) return sgn(*big_);
        return (small_ > 0) - (small_ < 0);
    }

    /// Upper bound on log2|x| + 1 (0 for zero).
    int bit_length() const {
        if (big_) return static_cast<int>(mpz_sizeinbase(big_->get_mpz_t(), 2));
        if (small_ == 0) return 0;
        unsigned long long u = small_ < 0 ? 0ull - static_cast<unsigned long long>(small_)
                                          : static_cast<unsigned long long>(small_);
        return 64 - __builtin_clzll(u);
    }

    long double to_long_double() const {
        if (!big_) return static_cast<long double>(small_);
        long exp = 0;
        double m = mpz_get_d_2exp(&exp, big_->get_mpz_t());
        return std::ldexp(static_cast<long double>(m), static_cast<int>(exp));
    }

    std::string to_string() const {
        if (big_) return big_->get_str(10);
        return std::to_string(small_);
    }

    Integer operator-() const {
        if (!big_ && small_ != INT64_MIN) return Integer(-small_);
        return Integer(mpz_class(-to_mpz()));
    }

    Integer& operator+=(const Integer& o) {
        long long s;
        if (!big_ && !o.big_ && !__builtin_add_overflow(small_, o.small_, &s)) {
            small_ = s;
            return *this;
        }
        assign_mpz(to_mpz() + o.to_mpz());
        return *this;
    }
    Integer& operator-=(const Integer& o) {
        long long s;
        if (!big_ && !o.big_ && !__builtin_sub_overflow(small_, o.small_, &s)) {
            small_ = s;
            return *this;
        }
        assign_mpz(to_mpz() - o.to_mpz());
        return *this;
    }
    Integer& operator*=(const Integer& o) {
        long long s;
        if (!big_ && !o.big_ && !__builtin_mul_overflow(small_, o.small_, &s)) {
            small_ = s;
            return *this;
        }
        assign_mpz(to_mpz() * o.to_mpz());
        return *this;
    }

    friend Integer operator+(Integer a, const Integer& b) { return a += b; }
    friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
    friend Integer operator*(Integer a, const Integer& b) { return a *= b; }

    /// acc += a * b
    friend void addmul(Integer& acc, const Integer& a, const Integer& b) {
        if (!acc.big_ && !a.big_ && !b.big_) {
            long long p, s;
            if (!__builtin_mul_overflow(a.small_, b.small_, &p) &&
                !__builtin_add_overflow(acc.small_, p, &s)) {
                acc.small_ = s;
                return;
            }
        }
        mpz_class z = acc.to_mpz();
        mpz_addmul(z.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
        acc.assign_mpz(z);
    }

    /// Exact division; b must divide a.
    friend Integer divexact(const Integer& a, const Integer& b) {
        if (b.is_zero()) throw std::domain_error("integer division by zero");
        if (!a.big_ && !b.big_ && !(a.small_ == INT64_MIN && b.small_ == -1))
            return Integer(a.small_ / b.small_);
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
        return Integer(q);
    }

    /// Floor division and remainder with sign of divisor.
    friend std::pair<Integer, Integer> floor_divmod(const Integer& a, const Integer& b) {
        if (b.is_zero()) throw std::domain_error("integer division by zero");
        mpz_class q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
        return {Integer(q), Integer(r)};
    }

    friend Integer gcd(const Integer& a, const Integer& b) {
        if (!a.big_ && !b.big_ && a.small_ != INT64_MIN && b.small_ != INT64_MIN) {
            long long x = std::llabs(a.small_), y = std::llabs(b.small_);
            while (y != 0) {
                long long t = x % y;
                x = y;
                y = t;
            }
            return Integer(x);
        }
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
        return Integer(g);
    }

    friend Integer abs(const Integer& a) { return a.sign() < 0 ? -a : a; }

    friend int compare(const Integer& a, const Integer& b) {
        if (!a.big_ && !b.big_) return (a.small_ > b.small_) - (a.small_ < b.small_);
        return cmp(a.to_mpz(), b.to_mpz());
    }
    friend bool operator==(const Integer& a, const Integer& b) {
        if (!a.big_ && !b.big_) return a.small_ == b.small_;
        return compare(a, b) == 0;
    }
    friend bool operator!=(const Integer& a, const Integer& b) { return !(a == b); }
    friend bool operator<(const Integer& a, const Integer& b) { return compare(a, b) < 0; }
    friend bool operator>(const Integer& a, const Integer& b) { return compare(a, b) > 0; }
    friend bool operator<=(const Integer& a, const Integer& b) { return compare(a, b) <= 0; }
    friend bool operator>=(const Integer& a, const Integer& b) { return compare(a, b) >= 0; }

    friend std::ostream& operator<<(std::ostream& os, const Integer& a) { return os << a.to_string(); }

    static Integer pow(const Integer& base, unsigned long e) {
        mpz_class z;
        mpz_pow_ui(z.get_mpz_t(), base.to_mpz().get_mpz_t(), e);
        return Integer(z);
    }

private:
    void assign_mpz(const mpz_class& z) {
        if (mpz_fits_slong_p(z.get_mpz_t())) {
            small_ = mpz_get_si(z.get_mpz_t());
            big_.reset();
        } else if (big_) {
            *big_ = z;
        } else {
            big_ = std::make_unique<mpz_class>(z);
        }
    }

    long long small_ = 0;
    std::unique_ptr<mpz_class> big_;
};

/// Exact rational number in lowest terms with positive denominator.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}  // NOLINT(implicit)
    Rational(int n) : num_(n), den_(1) {}        // NOLINT(implicit)
    Rational(Integer n) : num_(std::move(n)), den_(1) {}  // NOLINT(implicit)
    Rational(Integer n, Integer d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    static Rational from_string(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(Integer::from_string(s));
        return Rational(Integer::from_string(s.substr(0, slash)), Integer::from_string(s.substr(slash + 1)));
    }

    const Integer& num() const { return num_; }
    const Integer& den() const { return den_; }
    bool is_integer() const { return den_.is_one(); }
    bool is_zero() const { return num_.is_zero(); }
    int sign() const { return num_.sign(); }

    long double to_long_double() const {
        if (den_.is_one()) return num_.to_long_double();
        mpq_class q(num_.to_mpz(), den_.to_mpz());
        return static_cast<long double>(q.get_d());
    }
    double to_double() const { return static_cast<double>(to_long_double()); }

    std::string to_string() const {
        if (den_.is_one()) return num_.to_string();
        return num_.to_string() + "/" + den_.to_string();
    }

    Rational operator-() const { return Rational(-num_, den_, raw_tag{}); }
    friend Rational operator+(const Rational& a, const Rational& b) {
        if (a.den_.is_one() && b.den_.is_one()) return Rational(a.num_ + b.num_);
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        if (a.den_.is_one() && b.den_.is_one()) return Rational(a.num_ * b.num_);
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::domain_error("rational division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return a.num_ * b.den_ < b.num_ * a.den_; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.to_string(); }

private:
    struct raw_tag {};
    Rational(Integer n, Integer d, raw_tag) : num_(std::move(n)), den_(std::move(d)) {}

    void normalize() {
        if (den_.is_zero()) throw std::domain_error("zero denominator");
        if (den_.sign() < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (den_.is_one()) return;
        Integer g = gcd(num_, den_);
        if (!g.is_one() && !g.is_zero()) {
            num_ = divexact(num_, g);
            den_ = divexact(den_, g);
        }
        if (num_.is_zero()) den_ = 1;
    }

    Integer num_;
    Integer den_;
};

}  // namespace qtv
