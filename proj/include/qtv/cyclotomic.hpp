#pragma once

#include "integer.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qtv {

class OrderMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Per-order data: the cyclotomic polynomial, the canonical form of every power
/// of zeta (stored sparsely) and an embedding table.
class CyclotomicField {
public:
    struct Term {
        int index;
        long long coeff;
    };

    static std::shared_ptr<const CyclotomicField> get(int order) {
        if (order < 1) throw std::invalid_argument("cyclotomic order must be >= 1, got " + std::to_string(order));
        static std::mutex mu;
        static std::map<int, std::shared_ptr<const CyclotomicField>> registry;
        std::lock_guard<std::mutex> lock(mu);
        auto it = registry.find(order);
        if (it != registry.end()) return it->second;
        auto f = std::shared_ptr<const CyclotomicField>(new CyclotomicField(order));
        registry.emplace(order, f);
        return f;
    }

    int order() const { return order_; }
    int degree() const { return degree_; }
    const std::vector<Integer>& polynomial() const { return phi_poly_; }

    /// Canonical form of zeta^e for 0 <= e < order.
    const std::vector<Term>& power(int e) const { return powers_[e]; }
    int reduce_exponent(long long e) const {
        long long m = e % order_;
        return static_cast<int>(m < 0 ? m + order_ : m);
    }
    /// max over output slots of the summed |coefficients| contributed by non-canonical exponents, plus one
    long double reduction_growth() const { return growth_; }
    const std::vector<int>& units() const { return units_; }

    std::complex<long double> zeta_power(int e) const { return {cos_[e], sin_[e]}; }

    static std::vector<Integer> cyclotomic_polynomial(int m) {
        static std::mutex mu;
        static std::map<int, std::vector<Integer>> memo;
        {
            std::lock_guard<std::mutex> lock(mu);
            auto it = memo.find(m);
            if (it != memo.end()) return it->second;
        }
        // x^m - 1 divided by Phi_d for every proper divisor d
        std::vector<Integer> p(m + 1, Integer(0));
        p[0] = -1;
        p[m] = 1;
        for (int d = 1; d < m; ++d) {
            if (m % d != 0) continue;
            p = exact_poly_div(p, cyclotomic_polynomial(d));
        }
        std::lock_guard<std::mutex> lock(mu);
        memo[m] = p;
        return p;
    }

private:
    explicit CyclotomicField(int order) : order_(order) {
        phi_poly_ = cyclotomic_polynomial(order);
        degree_ = static_cast<int>(phi_poly_.size()) - 1;
        std::vector<long long> phi(degree_ + 1);
        for (int i = 0; i <= degree_; ++i) {
            if (!phi_poly_[i].is_small()) throw std::overflow_error("cyclotomic polynomial coefficient too large");
            phi[i] = phi_poly_[i].small_value();
        }
        powers_.resize(order_);
        std::vector<long long> cur(degree_, 0);
        for (int e = 0; e < order_; ++e) {
            if (e < degree_) {
                powers_[e] = {Term{e, 1}};
                continue;
            }
            if (e == degree_) {
                for (int j = 0; j < degree_; ++j) cur[j] = -phi[j];
            } else {
                long long top = cur[degree_ - 1];
                for (int j = degree_ - 1; j >= 1; --j) cur[j] = checked_sub(cur[j - 1], checked_mul(top, phi[j]));
                cur[0] = checked_sub(0, checked_mul(top, phi[0]));
            }
            for (int j = 0; j < degree_; ++j)
                if (cur[j] != 0) powers_[e].push_back(Term{j, cur[j]});
        }
        std::vector<long double> colsum(degree_, 0.0L);
        for (int e = degree_; e < order_; ++e)
            for (const auto& t : powers_[e]) colsum[t.index] += std::fabs(static_cast<long double>(t.coeff));
        growth_ = 1.0L + (colsum.empty() ? 0.0L : *std::max_element(colsum.begin(), colsum.end()));
        cos_.resize(order_);
        sin_.resize(order_);
        const long double two_pi = 6.283185307179586476925286766559005768L;
        for (int e = 0; e < order_; ++e) {
            long double t = two_pi * static_cast<long double>(e) / static_cast<long double>(order_);
            cos_[e] = std::cos(t);
            sin_[e] = std::sin(t);
        }
        for (int k = 1; k <= order_; ++k)
            if (std::gcd(k, order_) == 1) units_.push_back(k % order_);
    }

    static long long checked_mul(long long a, long long b) {
        long long r;
        if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("reduction table overflow");
        return r;
    }
    static long long checked_sub(long long a, long long b) {
        long long r;
        if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("reduction table overflow");
        return r;
    }

    static std::vector<Integer> exact_poly_div(const std::vector<Integer>& num, const std::vector<Integer>& den) {
        // den is monic
        std::vector<Integer> rem = num;
        int dn = static_cast<int>(den.size()) - 1;
        int nn = static_cast<int>(num.size()) - 1;
        std::vector<Integer> q(nn - dn + 1, Integer(0));
        for (int i = nn - dn; i >= 0; --i) {
            Integer c = rem[i + dn];
            q[i] = c;
            if (c.is_zero()) continue;
            for (int j = 0; j <= dn; ++j) rem[i + j] -= c * den[j];
        }
        return q;
    }

    int order_;
    int degree_ = 0;
    std::vector<Integer> phi_poly_;
    std::vector<std::vector<Term>> powers_;
    long double growth_ = 1.0L;
    std::vector<int> units_;
    std::vector<long double> cos_, sin_;
};

using FieldPtr = std::shared_ptr<const CyclotomicField>;

namespace detail {

inline int max_bits(const std::vector<Integer>& v) {
    int b = 0;
    for (const auto& x : v) b = std::max(b, x.bit_length());
    return b;
}

inline int ceil_log2(long double x) {
    int e = 0;
    while (std::ldexp(1.0L, e) < x) ++e;
    return e;
}

/// Folds an unreduced length-`order` coefficient array into canonical form.
inline std::vector<Integer> reduce_full(const CyclotomicField& f, const std::vector<Integer>& t) {
    std::vector<Integer> out(f.degree(), Integer(0));
    for (int e = 0; e < f.order(); ++e) {
        if (t[e].is_zero()) continue;
        if (e < f.degree()) {
            out[e] += t[e];
            continue;
        }
        for (const auto& term : f.power(e)) addmul(out[term.index], t[e], Integer(term.coeff));
    }
    return out;
}

inline std::vector<Integer> reduce_full(const CyclotomicField& f, const std::vector<__int128>& t) {
    std::vector<__int128> acc(f.degree(), 0);
    for (int e = 0; e < f.order(); ++e) {
        if (t[e] == 0) continue;
        if (e < f.degree()) {
            acc[e] += t[e];
            continue;
        }
        for (const auto& term : f.power(e)) acc[term.index] += t[e] * term.coeff;
    }
    std::vector<Integer> out;
    out.reserve(acc.size());
    for (auto v : acc) out.push_back(Integer::from_int128(v));
    return out;
}

/// Product of two canonical numerator vectors, reduced.
inline std::vector<Integer> poly_mul(const CyclotomicField& f, const std::vector<Integer>& a, const std::vector<Integer>& b) {
    const int m = f.order(), d = f.degree();
    int ba = max_bits(a), bb = max_bits(b);
    if (ba == 0 || bb == 0) return std::vector<Integer>(d, Integer(0));
    int headroom = ceil_log2(static_cast<long double>(d)) + ceil_log2(f.reduction_growth()) + 2;
    if (ba <= 63 && bb <= 63 && ba + bb + headroom <= 126) {
        std::vector<__int128> t(m, 0);
        for (int i = 0; i < d; ++i) {
            long long ai = a[i].small_value();
            if (ai == 0) continue;
            for (int j = 0; j < d; ++j) {
                long long bj = b[j].small_value();
                if (bj == 0) continue;
                int e = i + j;
                if (e >= m) e -= m;
                t[e] += static_cast<__int128>(ai) * bj;
            }
        }
        return reduce_full(f, t);
    }
    std::vector<Integer> t(m, Integer(0));
    for (int i = 0; i < d; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; j < d; ++j) {
            if (b[j].is_zero()) continue;
            int e = i + j;
            if (e >= m) e -= m;
            addmul(t[e], a[i], b[j]);
        }
    }
    return reduce_full(f, t);
}

}  // namespace detail

/// Exact element of Q(zeta_order) in the canonical power basis.
/// Stored as an integer numerator vector over a common positive denominator.
class CyclotomicElement {
public:
    CyclotomicElement() = default;
    explicit CyclotomicElement(FieldPtr f) : f_(std::move(f)), num_(f_->degree(), Integer(0)), den_(1) {}

    static CyclotomicElement zero(FieldPtr f) { return CyclotomicElement(std::move(f)); }
    static CyclotomicElement from_integer(FieldPtr f, const Integer& n) {
        CyclotomicElement x(std::move(f));
        if (x.f_->degree() > 0) x.num_[0] = n;
        return x;
    }
    static CyclotomicElement one(FieldPtr f) { return from_integer(std::move(f), 1); }
    static CyclotomicElement from_rational(FieldPtr f, const Rational& q) {
        CyclotomicElement x = from_integer(std::move(f), q.num());
        x.den_ = q.den();
        return x;
    }
    static CyclotomicElement root_power(FieldPtr f, long long power) {
        CyclotomicElement x(f);
        for (const auto& t : f->power(f->reduce_exponent(power))) x.num_[t.index] = t.coeff;
        return x;
    }
    /// Builds from arbitrary (non-canonical) rational coefficients of zeta^0..zeta^{k-1}.
    static CyclotomicElement from_coefficients(FieldPtr f, const std::vector<Rational>& coeffs) {
        CyclotomicElement x(f);
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            if (coeffs[i].is_zero()) continue;
            x += from_rational(f, coeffs[i]) * root_power(f, static_cast<long long>(i));
        }
        return x;
    }

    bool valid() const { return static_cast<bool>(f_); }
    const FieldPtr& field() const { return f_; }
    int order() const { return f_->order(); }
    int degree() const { return f_->degree(); }
    const std::vector<Integer>& numerators() const { return num_; }
    const Integer& denominator() const { return den_; }
    std::vector<Rational> coefficients() const {
        std::vector<Rational> out;
        out.reserve(num_.size());
        for (const auto& c : num_) out.emplace_back(c, den_);
        return out;
    }
    int height_bits() const { return detail::max_bits(num_); }

    bool is_zero() const {
        for (const auto& c : num_)
            if (!c.is_zero()) return false;
        return true;
    }

    std::optional<Rational> rational_value() const {
        for (std::size_t i = 1; i < num_.size(); ++i)
            if (!num_[i].is_zero()) return std::nullopt;
        if (num_.empty()) return Rational(0);
        return Rational(num_[0], den_);
    }

    std::complex<double> embed() const {
        std::complex<long double> s = 0;
        for (int i = 0; i < static_cast<int>(num_.size()); ++i)
            if (!num_[i].is_zero()) s += f_->zeta_power(i) * num_[i].to_long_double();
        s /= den_.to_long_double();
        return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
    }

    CyclotomicElement galois(long long k) const {
        long long kk = f_->reduce_exponent(k);
        if (std::gcd(kk, static_cast<long long>(f_->order())) != 1 && f_->order() != 1)
            throw std::invalid_argument("galois exponent " + std::to_string(k) + " not coprime to order " +
                                        std::to_string(f_->order()));
        std::vector<Integer> t(f_->order(), Integer(0));
        for (int i = 0; i < static_cast<int>(num_.size()); ++i)
            if (!num_[i].is_zero()) t[f_->reduce_exponent(static_cast<long long>(i) * kk)] += num_[i];
        CyclotomicElement out(f_);
        out.num_ = detail::reduce_full(*f_, t);
        out.den_ = den_;
        return out;
    }
    CyclotomicElement conj() const { return galois(-1); }

    CyclotomicElement inverse() const {
        if (is_zero()) throw std::domain_error("cyclotomic division by zero");
        // a^{-1} = prod_{k != 1} sigma_k(a) / N(a)
        CyclotomicElement prod = one(f_);
        for (int k : f_->units())
            if (k != 1 % f_->order()) prod *= galois(k);
        CyclotomicElement norm = *this * prod;
        auto q = norm.rational_value();
        if (!q) throw std::logic_error("norm is not rational");
        return prod * from_rational(f_, Rational(1) / *q);
    }

    CyclotomicElement operator-() const {
        CyclotomicElement out = *this;
        for (auto& c : out.num_) c = -c;
        return out;
    }

    CyclotomicElement& operator+=(const CyclotomicElement& o) { return add_impl(o, false); }
    CyclotomicElement& operator-=(const CyclotomicElement& o) { return add_impl(o, true); }
    CyclotomicElement& operator*=(const CyclotomicElement& o) {
        check(o);
        num_ = detail::poly_mul(*f_, num_, o.num_);
        if (!(den_.is_one() && o.den_.is_one())) {
            den_ = den_ * o.den_;
            normalize();
        }
        return *this;
    }
    CyclotomicElement& operator/=(const CyclotomicElement& o) {
        check(o);
        if (auto q = o.rational_value()) {
            if (q->is_zero()) throw std::domain_error("cyclotomic division by zero");
            return *this *= from_rational(f_, Rational(1) / *q);
        }
        return *this *= o.inverse();
    }

    friend CyclotomicElement operator+(CyclotomicElement a, const CyclotomicElement& b) { return a += b; }
    friend CyclotomicElement operator-(CyclotomicElement a, const CyclotomicElement& b) { return a -= b; }
    friend CyclotomicElement operator*(CyclotomicElement a, const CyclotomicElement& b) { return a *= b; }
    friend CyclotomicElement operator/(CyclotomicElement a, const CyclotomicElement& b) { return a /= b; }

    friend bool operator==(const CyclotomicElement& a, const CyclotomicElement& b) {
        if (a.f_->order() != b.f_->order()) throw OrderMismatch("cyclotomic order mismatch");
        return a.den_ == b.den_ && a.num_ == b.num_;
    }
    friend bool operator!=(const CyclotomicElement& a, const CyclotomicElement& b) { return !(a == b); }

    std::string to_string() const {
        std::ostringstream os;
        bool first = true;
        for (int i = static_cast<int>(num_.size()) - 1; i >= 0; --i) {
            if (num_[i].is_zero()) continue;
            Rational c(num_[i], den_);
            if (!first) os << (c.sign() < 0 ? " - " : " + ");
            else if (c.sign() < 0) os << "-";
            Rational a = c.sign() < 0 ? -c : c;
            bool unit = a.is_integer() && a.num().is_one();
            if (i == 0) os << a;
            else {
                if (!unit) os << a << "*";
                os << "z";
                if (i > 1) os << "^" << i;
            }
            first = false;
        }
        if (first) os << "0";
        return os.str();
    }
    friend std::ostream& operator<<(std::ostream& os, const CyclotomicElement& a) { return os << a.to_string(); }

private:
    friend class CyclotomicAccumulator;

    void check(const CyclotomicElement& o) const {
        if (!f_ || !o.f_) throw std::invalid_argument("uninitialized cyclotomic element");
        if (f_->order() != o.f_->order()) throw OrderMismatch("cyclotomic order mismatch");
    }

    CyclotomicElement& add_impl(const CyclotomicElement& o, bool subtract) {
        check(o);
        if (den_ == o.den_) {
            for (std::size_t i = 0; i < num_.size(); ++i) {
                if (subtract) num_[i] -= o.num_[i];
                else num_[i] += o.num_[i];
            }
        } else {
            for (std::size_t i = 0; i < num_.size(); ++i) {
                num_[i] *= o.den_;
                if (subtract) num_[i] -= o.num_[i] * den_;
                else num_[i] += o.num_[i] * den_;
            }
            den_ = den_ * o.den_;
        }
        normalize();
        return *this;
    }

    void normalize() {
        if (den_.is_one()) return;
        if (den_.sign() < 0) {
            den_ = -den_;
            for (auto& c : num_) c = -c;
        }
        Integer g = den_;
        for (const auto& c : num_) {
            if (g.is_one()) break;
            if (!c.is_zero()) g = gcd(g, c);
        }
        if (g.is_one()) return;
        for (auto& c : num_)
            if (!c.is_zero()) c = divexact(c, g);
        den_ = divexact(den_, g);
    }

    FieldPtr f_;
    std::vector<Integer> num_;
    Integer den_{1};
};

/// Sums of products without intermediate reduction.  Integral operands are
/// accumulated in 128-bit slots while a running magnitude bound proves that no
/// slot can overflow, then spilled into arbitrary-precision slots.
class CyclotomicAccumulator {
public:
    explicit CyclotomicAccumulator(FieldPtr f)
        : f_(std::move(f)), fast_(f_->order(), 0), slow_(f_->order(), Integer(0)), rest_(f_) {
        limit_bits_ = 124 - detail::ceil_log2(f_->reduction_growth());
        log_degree_ = detail::ceil_log2(static_cast<long double>(f_->degree()));
    }

    void add_product(const CyclotomicElement& a, const CyclotomicElement& b) {
        if (!a.den_.is_one() || !b.den_.is_one()) {
            rest_ += a * b;
            return;
        }
        const int d = f_->degree(), m = f_->order();
        int ba = detail::max_bits(a.num_), bb = detail::max_bits(b.num_);
        if (ba == 0 || bb == 0) return;
        int pb = ba + bb + log_degree_;
        if (ba <= 63 && bb <= 63 && pb < limit_bits_) {
            long double add = std::ldexp(1.0L, pb);
            if (bound_ + add >= std::ldexp(1.0L, limit_bits_)) spill();
            bound_ += add;
            for (int i = 0; i < d; ++i) {
                long long ai = a.num_[i].small_value();
                if (ai == 0) continue;
                for (int j = 0; j < d; ++j) {
                    long long bj = b.num_[j].small_value();
                    if (bj == 0) continue;
                    int e = i + j;
                    if (e >= m) e -= m;
                    fast_[e] += static_cast<__int128>(ai) * bj;
                }
            }
            return;
        }
        used_slow_ = true;
        for (int i = 0; i < d; ++i) {
            if (a.num_[i].is_zero()) continue;
            for (int j = 0; j < d; ++j) {
                if (b.num_[j].is_zero()) continue;
                int e = i + j;
                if (e >= m) e -= m;
                addmul(slow_[e], a.num_[i], b.num_[j]);
            }
        }
    }

    void add(const CyclotomicElement& a) {
        if (!a.den_.is_one()) {
            rest_ += a;
            return;
        }
        int ba = detail::max_bits(a.num_);
        if (ba == 0) return;
        if (ba <= 63 && ba < limit_bits_) {
            long double add = std::ldexp(1.0L, ba);
            if (bound_ + add >= std::ldexp(1.0L, limit_bits_)) spill();
            bound_ += add;
            for (int i = 0; i < f_->degree(); ++i) fast_[i] += a.num_[i].small_value();
            return;
        }
        used_slow_ = true;
        for (int i = 0; i < f_->degree(); ++i) slow_[i] += a.num_[i];
    }

    /// Returns the reduced sum and resets the accumulator.
    CyclotomicElement take() {
        CyclotomicElement out(f_);
        if (!used_slow_) {
            out.num_ = detail::reduce_full(*f_, fast_);
        } else {
            spill();
            out.num_ = detail::reduce_full(*f_, slow_);
            std::fill(slow_.begin(), slow_.end(), Integer(0));
            used_slow_ = false;
        }
        std::fill(fast_.begin(), fast_.end(), 0);
        bound_ = 0;
        if (!rest_.is_zero()) {
            out += rest_;
            rest_ = CyclotomicElement(f_);
        }
        return out;
    }

private:
    void spill() {
        for (int e = 0; e < f_->order(); ++e)
            if (fast_[e] != 0) {
                slow_[e] += Integer::from_int128(fast_[e]);
                fast_[e] = 0;
            }
        bound_ = 0;
        used_slow_ = true;
    }

    FieldPtr f_;
    std::vector<__int128> fast_;
    std::vector<Integer> slow_;
    CyclotomicElement rest_;
    long double bound_ = 0;
    int limit_bits_ = 120;
    int log_degree_ = 0;
    bool used_slow_ = false;
};

inline CyclotomicElement cyc_make(int order, long long power) {
    return CyclotomicElement::root_power(CyclotomicField::get(order), power);
}
inline CyclotomicElement cyc_galois(const CyclotomicElement& a, long long k) { return a.galois(k); }
inline std::optional<Rational> cyc_is_rational(const CyclotomicElement& a) { return a.rational_value(); }
inline std::complex<double> cyc_embed(const CyclotomicElement& a) { return a.embed(); }

}  // namespace qtv
