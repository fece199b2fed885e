#pragma once

#include "ring.hpp"

#include <json.hpp>

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <unistd.h>

namespace qtv {

/// Bumped whenever a convention change would alter stored values.
inline constexpr const char* kConventionTag = "qtv-conv-1:A=exp(i*pi/r):field=2r";

namespace serial {

inline nlohmann::ordered_json exact_to_json(const CyclotomicElement& x) {
    nlohmann::ordered_json j;
    j["order"] = x.order();
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : x.coefficients()) arr.push_back(c.to_string());
    j["coefficients"] = arr;
    return j;
}

inline CyclotomicElement exact_from_json(const nlohmann::ordered_json& j) {
    auto f = CyclotomicField::get(j.at("order").get<int>());
    std::vector<Rational> coeffs;
    for (const auto& s : j.at("coefficients")) coeffs.push_back(Rational::from_string(s.get<std::string>()));
    if (static_cast<int>(coeffs.size()) != f->degree()) throw std::runtime_error("coefficient vector has wrong length");
    return CyclotomicElement::from_coefficients(f, coeffs);
}

/// Bit-exact text for a double.
inline std::string hex_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%a", x);
    return buf;
}
inline double parse_hex_double(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

inline nlohmann::ordered_json number_to_json(const Number& n) {
    nlohmann::ordered_json j;
    if (auto e = std::get_if<CyclotomicElement>(&n)) {
        j["backend"] = "exact";
        j["exact"] = exact_to_json(*e);
    } else {
        auto z = std::get<std::complex<double>>(n);
        j["backend"] = "float";
        j["re"] = hex_double(z.real());
        j["im"] = hex_double(z.imag());
    }
    return j;
}

inline Number number_from_json(const nlohmann::ordered_json& j) {
    if (j.at("backend") == "exact") return exact_from_json(j.at("exact"));
    return std::complex<double>(parse_hex_double(j.at("re")), parse_hex_double(j.at("im")));
}

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace serial

struct CacheKey {
    std::string kind;  // "tv" or "bracket"
    std::string link;  // canonical braid text
    int r = 0;
    std::string coloring;  // "" for whole-link quantities
    Backend backend = Backend::exact;

    std::string text() const {
        return std::string(kConventionTag) + "|" + kind + "|" + link + "|r=" + std::to_string(r) + "|c=" + coloring +
               "|" + to_string(backend);
    }
};

/// One JSON file per record; written through a temporary file and renamed
/// into place, never overwritten.
class InvariantCache {
public:
    explicit InvariantCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    static std::filesystem::path default_dir() {
        const char* env = std::getenv("QTV_CACHE");
        return env && *env ? std::filesystem::path(env) : std::filesystem::path(".qtv-cache");
    }

    const std::filesystem::path& dir() const { return dir_; }

    std::optional<Number> get(const CacheKey& key) const {
        auto path = path_for(key);
        std::ifstream in(path);
        if (!in) return std::nullopt;
        try {
            auto j = nlohmann::ordered_json::parse(in);
            if (j.at("key").get<std::string>() != key.text()) return std::nullopt;
            return serial::number_from_json(j.at("value"));
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }

    void put(const CacheKey& key, const Number& value, double wall_seconds) const {
        auto path = path_for(key);
        std::error_code ec;
        if (std::filesystem::exists(path, ec)) return;
        std::filesystem::create_directories(dir_, ec);
        nlohmann::ordered_json j;
        j["key"] = key.text();
        j["link"] = key.link;
        j["r"] = key.r;
        j["coloring"] = key.coloring;
        j["backend"] = to_string(key.backend);
        j["kind"] = key.kind;
        j["value"] = serial::number_to_json(value);
        j["wall_seconds"] = wall_seconds;
        static std::atomic<unsigned> counter{0};
        auto tmp = path;
        tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
        {
            std::ofstream out(tmp);
            if (!out) return;
            out << j.dump(1) << "\n";
        }
        std::filesystem::rename(tmp, path, ec);
        if (ec) std::filesystem::remove(tmp, ec);
    }

    std::filesystem::path path_for(const CacheKey& key) const {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(serial::fnv1a(key.text())));
        return dir_ / (key.kind + "-" + buf + ".json");
    }

private:
    std::filesystem::path dir_;
};

}  // namespace qtv
