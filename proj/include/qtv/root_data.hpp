#pragma once

#include "ring.hpp"

#include <memory>
#include <stdexcept>
#include <vector>

namespace qtv {

class LevelError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Level data at odd r.  The Kauffman variable is A = exp(i pi / r), a
/// primitive 2r-th root of unity, and scalars live in Q(zeta_{2r}).
/// Quantum integers use v = A^2, so [n] = (A^{2n} - A^{-2n}) / (A^2 - A^{-2}).
template <class Ring>
class RootData {
public:
    using value_type = typename Ring::value_type;

    explicit RootData(int r) : r_(check_level(r)), ring_(2 * r) {
        qint_.reserve(r_);
        for (int n = 0; n < r_; ++n) {
            auto acc = ring_.zero();
            for (int s = 0; s < n; ++s) acc += ring_.root_power(2 * (n - 1 - 2 * s));
            qint_.push_back(acc);
        }
        for (int c = 0; c <= r_ - 3; c += 2) colors_.push_back(c);
        auto sum = ring_.zero();
        for (int c : colors_) sum += qint(c + 1) * qint(c + 1);
        eta_sq_ = ring_.one() / sum;
        delta_ = -(ring_.root_power(2) + ring_.root_power(-2));
        int top = r_ - 1;
        qbinom_.assign(top + 1, std::vector<value_type>());
        for (int n = 0; n <= top; ++n) {
            qbinom_[n].resize(n + 1);
            qbinom_[n][0] = ring_.one();
            qbinom_[n][n] = ring_.one();
            for (int k = 1; k < n; ++k)
                qbinom_[n][k] = ring_.root_power(2 * k) * qbinom_[n - 1][k] +
                                ring_.root_power(-2 * (n - k)) * qbinom_[n - 1][k - 1];
        }
    }

    int r() const { return r_; }
    const Ring& ring() const { return ring_; }
    value_type A() const { return ring_.root_power(1); }
    /// A^k
    value_type A_pow(long long k) const { return ring_.root_power(k); }
    const std::vector<int>& colors() const { return colors_; }
    const value_type& eta_sq() const { return eta_sq_; }
    const value_type& delta() const { return delta_; }

    value_type qint(long long n) const {
        long long m = n % r_;
        if (m < 0) m += r_;
        if (n < 0) {
            // [-n] = -[n]
            long long p = (-n) % r_;
            return -qint_[p];
        }
        return qint_[m];
    }

    /// Gaussian binomial in v = A^2 (symmetric normalization), 0 <= k <= n <= r-1.
    const value_type& qbinom(int n, int k) const {
        if (n < 0 || n >= static_cast<int>(qbinom_.size()) || k < 0 || k > n)
            throw std::out_of_range("qbinom argument out of range");
        return qbinom_[n][k];
    }

private:
    static int check_level(int r) {
        if (r < 3 || r % 2 == 0) throw LevelError("level r must be odd and >= 3, got " + std::to_string(r));
        return r;
    }

    int r_;
    Ring ring_;
    std::vector<value_type> qint_;
    std::vector<int> colors_;
    value_type eta_sq_;
    value_type delta_;
    std::vector<std::vector<value_type>> qbinom_;
};

using ExactRoot = RootData<ExactRing>;
using FloatRoot = RootData<FloatRing>;

template <class Ring>
typename Ring::value_type quantum_integer(long long n, const RootData<Ring>& root) {
    return root.qint(n);
}

}  // namespace qtv
