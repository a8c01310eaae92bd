#pragma once

#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace heis {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed DSL source. `offset` is the byte position of the offending token.
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t offset_)
        : Error(msg + " at offset " + std::to_string(offset_)), offset(offset_) {}
    std::size_t offset;
};

/// Input outside the mathematical domain of an operation (division by zero,
/// point outside the chart box, base point off the surface, ...).
struct DomainError : Error {
    using Error::Error;
};

/// A numerical procedure failed to converge within its iteration budget.
struct NumericError : Error {
    using Error::Error;
};

/// |Xf| fell below the characteristic cutoff where V needs Xf != 0.
struct CharacteristicPointError : DomainError {
    using DomainError::DomainError;
};

/// An integral curve left the working region C1 (the operational realization
/// of the maximal-interval boundary).
struct RegionExitError : DomainError {
    using DomainError::DomainError;
};

// ---------------------------------------------------------------------------
// Deterministic RNG. splitmix64 core; we do not use <random> distributions
// because their output is implementation-defined and reports must be
// byte-reproducible.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t x = (state_ += 0x9e3779b97f4a7c15ULL);
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    /// Derive an independent stream, e.g. for the B estimator vs pair sampling.
    static std::uint64_t substream(std::uint64_t seed, std::uint64_t tag) {
        Rng r(seed ^ (0x6a09e667f3bcc909ULL * (tag + 1)));
        return r.next_u64();
    }

private:
    std::uint64_t state_;
};

// ---------------------------------------------------------------------------
// Logging, gated by HEIS_RECT_LOG in {error, info, debug}. Default: error.
enum class LogLevel { error = 0, info = 1, debug = 2 };

inline LogLevel log_level() {
    static LogLevel level = [] {
        const char* env = std::getenv("HEIS_RECT_LOG");
        if (!env) return LogLevel::error;
        std::string s(env);
        if (s == "debug") return LogLevel::debug;
        if (s == "info") return LogLevel::info;
        return LogLevel::error;
    }();
    return level;
}

inline void log_at(LogLevel lvl, const char* fmt, ...) {
    if (static_cast<int>(lvl) > static_cast<int>(log_level())) return;
    const char* tag = lvl == LogLevel::debug ? "debug" : lvl == LogLevel::info ? "info" : "error";
    std::fprintf(stderr, "[heis-rect %s] ", tag);
    va_list ap;
    va_start(ap, fmt);
    std::vfprintf(stderr, fmt, ap);
    va_end(ap);
    std::fputc('\n', stderr);
}

#define HEIS_LOG_INFO(...) ::heis::log_at(::heis::LogLevel::info, __VA_ARGS__)
#define HEIS_LOG_DEBUG(...) ::heis::log_at(::heis::LogLevel::debug, __VA_ARGS__)

/// Round-trip exact float formatting used by every CSV/JSON writer.
inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace heis
