#pragma once

#include "cache.hpp"
#include "colored_bracket.hpp"
#include "fast_path.hpp"
#include "links.hpp"
#include "root_data.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qtv {

struct InvariantOptions {
    int cable_cap = 0;
    long long coloring_budget = 1'000'000;
    bool use_fast_path = true;
    bool force_generic = false;  // allow the generic engine in growth series beyond r = 31
    int jobs = 1;
    const InvariantCache* cache = nullptr;
};

inline constexpr int kGenericGrowthLimit = 31;

inline std::string coloring_text(const Coloring& c) {
    std::ostringstream os;
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    return os.str();
}

namespace detail {

template <class Ring>
Number to_number(const typename Ring::value_type& v) {
    return Number(v);
}

template <class Ring>
typename Ring::value_type from_number(const Number& n) {
    return std::get<typename Ring::value_type>(n);
}

/// All colorings in U_r^k, lexicographic.
inline std::vector<Coloring> all_colorings(const std::vector<int>& colors, int k) {
    std::vector<Coloring> out;
    Coloring c(k, 0);
    std::vector<int> idx(k, 0);
    if (colors.empty()) return out;
    while (true) {
        for (int i = 0; i < k; ++i) c[i] = colors[idx[i]];
        out.push_back(c);
        int p = k - 1;
        while (p >= 0 && idx[p] + 1 == static_cast<int>(colors.size())) idx[p--] = 0;
        if (p < 0) break;
        ++idx[p];
    }
    return out;
}

inline long long coloring_count(std::size_t palette, int k) {
    long double n = std::pow(static_cast<long double>(palette), k);
    return n > 9e18L ? std::numeric_limits<long long>::max() : static_cast<long long>(n);
}

}  // namespace detail

/// Framing-corrected colored bracket, through a fast path when one is registered.
template <class Ring>
typename Ring::value_type bracket_value(const LinkSpec& spec, const Coloring& c, const RootData<Ring>& root,
                                        const InvariantOptions& opt = {}) {
    check_coloring(spec.link, c, root);
    CacheKey key{"bracket", spec.key(), root.r(), coloring_text(c), Ring::backend};
    if (opt.cache)
        if (auto hit = opt.cache->get(key)) return detail::from_number<Ring>(*hit);
    auto t0 = std::chrono::steady_clock::now();
    std::optional<typename Ring::value_type> v;
    if (opt.use_fast_path && spec.fast_key) v = fast_path(*spec.fast_key, c, root);
    if (!v) v = colored_bracket(spec.link, c, root, BracketOptions{opt.cable_cap, opt.jobs});
    if (opt.cache)
        opt.cache->put(key, detail::to_number<Ring>(*v),
                       std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    return *v;
}

template <class Ring>
struct RTValue {
    typename Ring::value_type bracket;
    typename Ring::value_type eta_sq;
    double modulus = 0;  // sqrt(eta^2) |bracket|
};

/// RT_r(S^3) itself: bracket 1 and modulus sqrt(eta^2).
template <class Ring>
RTValue<Ring> rt_s3(const RootData<Ring>& root) {
    return {root.ring().one(), root.eta_sq(), std::sqrt(Ring::embed(root.eta_sq()).real())};
}

template <class Ring>
RTValue<Ring> rt_s3_link(const LinkSpec& spec, const Coloring& c, const RootData<Ring>& root,
                         const InvariantOptions& opt = {}) {
    RTValue<Ring> out{bracket_value(spec, c, root, opt), root.eta_sq(), 0.0};
    out.modulus = std::sqrt(Ring::embed(root.eta_sq()).real()) * std::abs(Ring::embed(out.bracket));
    return out;
}

template <class Ring>
struct TVResult {
    typename Ring::value_type value;
    double real = 0;
};

/// TV_r(S^3 \ L) = eta^2 sum_c |<L(c)>|^2 over c in U_r^{#components}.
template <class Ring>
TVResult<Ring> tv_link_complement(const LinkSpec& spec, const RootData<Ring>& root, const InvariantOptions& opt = {}) {
    CacheKey key{"tv", spec.key(), root.r(), "", Ring::backend};
    if (opt.cache)
        if (auto hit = opt.cache->get(key)) {
            auto v = detail::from_number<Ring>(*hit);
            return {v, Ring::embed(v).real()};
        }
    auto t0 = std::chrono::steady_clock::now();
    const int k = spec.link.num_components();
    long long total = detail::coloring_count(root.colors().size(), k);
    if (total > opt.coloring_budget)
        throw BudgetError(std::to_string(total) + " colorings exceed budget " + std::to_string(opt.coloring_budget));
    auto cs = detail::all_colorings(root.colors(), k);
    std::vector<typename Ring::value_type> terms(cs.size(), root.ring().zero());
    InvariantOptions inner = opt;
    inner.jobs = 1;
    parallel_for(static_cast<int>(cs.size()), opt.jobs, [&](int i) {
        auto b = bracket_value(spec, cs[i], root, inner);
        terms[i] = b * Ring::conj(b);
    });
    auto sum = root.ring().zero();
    for (const auto& t : terms) sum += t;
    auto value = root.eta_sq() * sum;
    if constexpr (Ring::backend == Backend::exact) {
        if (!(Ring::conj(value) == value)) throw std::logic_error("TV value not fixed by conjugation");
    }
    if (opt.cache)
        opt.cache->put(key, detail::to_number<Ring>(value),
                       std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    return {value, Ring::embed(value).real()};
}

/// TV as a real number in the requested backend.
inline double tv_real(const LinkSpec& spec, int r, Backend backend, const InvariantOptions& opt = {}) {
    if (backend == Backend::exact) return tv_link_complement(spec, ExactRoot(r), opt).real;
    return tv_link_complement(spec, FloatRoot(r), opt).real;
}

struct GrowthSample {
    int r = 0;
    double tv = 0;
    double y = std::numeric_limits<double>::quiet_NaN();  // (2 pi / r) log TV_r
    bool finite() const { return std::isfinite(y); }
};

struct GrowthSeries {
    std::vector<GrowthSample> samples;
    std::optional<double> volume;

    std::optional<double> max_y() const {
        std::optional<double> m;
        for (const auto& s : samples)
            if (s.finite() && (!m || s.y > *m)) m = s.y;
        return m;
    }
    std::optional<double> last_y() const {
        for (auto it = samples.rbegin(); it != samples.rend(); ++it)
            if (it->finite()) return it->y;
        return std::nullopt;
    }
    std::vector<double> gaps() const {
        std::vector<double> g;
        if (!volume) return g;
        for (const auto& s : samples) g.push_back(s.y - *volume);
        return g;
    }
    bool strictly_increasing() const {
        for (std::size_t i = 1; i < samples.size(); ++i)
            if (!(samples[i].y > samples[i - 1].y)) return false;
        return true;
    }
};

inline double growth_rate(int r, double tv) {
    if (!(tv > 0)) return std::numeric_limits<double>::quiet_NaN();
    return 2.0 * M_PI / r * std::log(tv);
}

inline void check_r_list(const std::vector<int>& rs) {
    for (std::size_t i = 0; i < rs.size(); ++i) {
        if (rs[i] < 3 || rs[i] % 2 == 0) throw LevelError("r values must be odd and >= 3");
        if (i > 0 && rs[i] <= rs[i - 1]) throw LevelError("r values must be ascending");
    }
}

inline GrowthSeries growth_series(const LinkSpec& spec, const std::vector<int>& r_list, Backend backend,
                                  std::optional<double> volume = std::nullopt, const InvariantOptions& opt = {}) {
    check_r_list(r_list);
    GrowthSeries g;
    g.volume = volume;
    bool fast = opt.use_fast_path && spec.fast_key.has_value();
    for (int r : r_list) {
        if (r > kGenericGrowthLimit && !fast && !opt.force_generic)
            throw BudgetError("r = " + std::to_string(r) + " beyond " + std::to_string(kGenericGrowthLimit) +
                              " needs a registered fast path or the generic override");
        GrowthSample s;
        s.r = r;
        s.tv = tv_real(spec, r, backend, opt);
        s.y = growth_rate(r, s.tv);
        g.samples.push_back(s);
    }
    return g;
}

struct IntegralityReport {
    int r = 0;
    bool is_integer = false;
    std::optional<Rational> value;
    double residual = 0;   // distance of the embedded value to the nearest integer
    bool galois_fixed = false;  // fixed by every zeta -> zeta^k, k a unit
    CyclotomicElement exact;
    double embedded = 0;
};

inline IntegralityReport integrality_check(const LinkSpec& spec, int r, const InvariantOptions& opt = {}) {
    ExactRoot root(r);
    auto tv = tv_link_complement(spec, root, opt);
    IntegralityReport rep;
    rep.r = r;
    rep.exact = tv.value;
    rep.embedded = tv.real;
    rep.value = tv.value.rational_value();
    rep.is_integer = rep.value && rep.value->is_integer();
    rep.residual = std::fabs(tv.real - std::round(tv.real));
    rep.galois_fixed = true;
    for (int k : tv.value.field()->units())
        if (!(tv.value.galois(k) == tv.value)) {
            rep.galois_fixed = false;
            break;
        }
    return rep;
}

class InadmissibleSurface : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline bool admissible_surface(int g, int n) {
    if (g < 0 || n < 0) return false;
    return !((g == 1 && n == 0) || (g == 0 && n <= 3));
}

struct Certificate {
    int r = 0;
    Coloring coloring;
    double trace_modulus = 0;
    long double dim_bound = 0;
    int genus = 0;
    int boundary = 0;
};

struct CertificateSearch {
    std::optional<Certificate> certificate;
    long long searched = 0;
    long long total = 0;
    bool complete() const { return certificate.has_value() || searched == total; }
};

/// Relative margin below which a modulus is not considered to exceed the bound.
inline constexpr double kCertificateMargin = 1e-9;

inline long double dimension_bound(int r, int g, int n) {
    return std::pow(static_cast<long double>(r), 3 * g - 3 + n);
}

inline bool exceeds_bound(double modulus, long double bound) {
    return static_cast<long double>(modulus) > bound * (1.0L + kCertificateMargin);
}

/// Searches colorings in lexicographic order for |RT| > r^{3g-3+n}.
template <class Ring>
CertificateSearch certify_infinite_order(const LinkSpec& spec, const RootData<Ring>& root, int g, int n,
                                         const InvariantOptions& opt = {}) {
    if (!admissible_surface(g, n))
        throw InadmissibleSurface("surface data (g, n) = (" + std::to_string(g) + ", " + std::to_string(n) +
                                  ") is excluded from the dimension bound");
    CertificateSearch out;
    const int k = spec.link.num_components();
    out.total = detail::coloring_count(root.colors().size(), k);
    long double bound = dimension_bound(root.r(), g, n);
    auto cs = detail::all_colorings(root.colors(), k);
    for (const auto& c : cs) {
        if (out.searched >= opt.coloring_budget) break;
        auto rt = rt_s3_link(spec, c, root, opt);
        ++out.searched;
        if (exceeds_bound(rt.modulus, bound)) {
            out.certificate = Certificate{root.r(), c, rt.modulus, bound, g, n};
            break;
        }
    }
    return out;
}

/// Recomputes a certificate from scratch with the exact generic engine and no cache.
inline bool replay_certificate(const LinkSpec& spec, const Certificate& cert, int cable_cap = 0) {
    if (!admissible_surface(cert.genus, cert.boundary)) return false;
    ExactRoot root(cert.r);
    auto b = colored_bracket(spec.link, cert.coloring, root, BracketOptions{cable_cap, 1});
    double modulus = std::sqrt(root.eta_sq().embed().real()) * std::abs(b.embed());
    long double bound = dimension_bound(cert.r, cert.genus, cert.boundary);
    return exceeds_bound(modulus, bound) && cert.trace_modulus > bound &&
           std::fabs(modulus - cert.trace_modulus) <= 1e-9 * std::max(1.0, modulus);
}

struct DehnFillingReport {
    GrowthSeries full;
    GrowthSeries sublink;
    std::vector<int> removed_components;
    std::string sublink_braid;
    bool ordered_as_predicted = true;  // last sublink estimate <= last full estimate
};

inline DehnFillingReport dehn_filling_compare(const LinkSpec& spec, const std::vector<int>& remove_components,
                                              const std::vector<int>& r_list, Backend backend,
                                              const InvariantOptions& opt = {}) {
    DehnFillingReport rep;
    rep.removed_components = remove_components;
    auto sub_braid = remove_components.empty() ? spec.link.braid : delete_components(spec.link, remove_components);
    rep.sublink_braid = sub_braid.canonical();
    auto sub = link_from_braid(sub_braid);
    rep.full = growth_series(spec, r_list, backend, std::nullopt, opt);
    rep.sublink = growth_series(sub, r_list, backend, std::nullopt, opt);
    auto a = rep.sublink.last_y(), b = rep.full.last_y();
    if (a && b) rep.ordered_as_predicted = *a <= *b + 1e-12;
    else if (b) rep.ordered_as_predicted = true;
    else rep.ordered_as_predicted = !a;
    return rep;
}

}  // namespace qtv
