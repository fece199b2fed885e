#pragma once

#include "cyclotomic.hpp"

#include <cmath>
#include <complex>
#include <string>
#include <variant>

namespace qtv {

enum class Backend { exact, floating };

inline std::string to_string(Backend b) { return b == Backend::exact ? "exact" : "float"; }

/// Exact scalars: the cyclotomic field of the given order.
struct ExactRing {
    using value_type = CyclotomicElement;
    using accumulator = CyclotomicAccumulator;
    static constexpr Backend backend = Backend::exact;

    FieldPtr field;

    explicit ExactRing(int order) : field(CyclotomicField::get(order)) {}

    int order() const { return field->order(); }
    value_type zero() const { return CyclotomicElement::zero(field); }
    value_type one() const { return CyclotomicElement::one(field); }
    value_type from_int(long long n) const { return CyclotomicElement::from_integer(field, n); }
    value_type from_rational(const Rational& q) const { return CyclotomicElement::from_rational(field, q); }
    value_type root_power(long long k) const { return CyclotomicElement::root_power(field, k); }
    accumulator make_accumulator() const { return CyclotomicAccumulator(field); }

    static bool is_zero(const value_type& x) { return x.is_zero(); }
    static value_type conj(const value_type& x) { return x.conj(); }
    static std::complex<double> embed(const value_type& x) { return x.embed(); }
};

/// Complex double scalars with the same interface.
struct FloatRing {
    using value_type = std::complex<double>;
    static constexpr Backend backend = Backend::floating;

    struct accumulator {
        std::complex<double> sum{0.0, 0.0};
        void add_product(const value_type& a, const value_type& b) { sum += a * b; }
        void add(const value_type& a) { sum += a; }
        value_type take() {
            value_type out = sum;
            sum = {0.0, 0.0};
            return out;
        }
    };

    int ord = 1;

    explicit FloatRing(int order) : ord(order) {}

    int order() const { return ord; }
    value_type zero() const { return {0.0, 0.0}; }
    value_type one() const { return {1.0, 0.0}; }
    value_type from_int(long long n) const { return {static_cast<double>(n), 0.0}; }
    value_type from_rational(const Rational& q) const { return {q.to_double(), 0.0}; }
    value_type root_power(long long k) const {
        long long e = k % ord;
        if (e < 0) e += ord;
        const long double two_pi = 6.283185307179586476925286766559005768L;
        long double t = two_pi * static_cast<long double>(e) / static_cast<long double>(ord);
        return {static_cast<double>(std::cos(t)), static_cast<double>(std::sin(t))};
    }
    accumulator make_accumulator() const { return {}; }

    static bool is_zero(const value_type& x) { return x == value_type(0.0, 0.0); }
    static value_type conj(const value_type& x) { return std::conj(x); }
    static std::complex<double> embed(const value_type& x) { return x; }
};

/// Backend-tagged scalar for APIs that are not templated.
using Number = std::variant<CyclotomicElement, std::complex<double>>;

inline std::complex<double> embed(const Number& n) {
    if (auto e = std::get_if<CyclotomicElement>(&n)) return e->embed();
    return std::get<std::complex<double>>(n);
}

inline Backend backend_of(const Number& n) {
    return std::holds_alternative<CyclotomicElement>(n) ? Backend::exact : Backend::floating;
}

}  // namespace qtv
