#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace plogic {

/// The eight proof algorithms, listed in hierarchy order: each one proves
/// at least what the previous one proves.
enum class Algorithm : std::uint8_t { phi, pi, psi, theta, theta_prime, beta, psi_prime, pi_prime };

inline constexpr std::array<Algorithm, 8> all_algorithms = {
    Algorithm::phi,  Algorithm::pi,        Algorithm::psi,      Algorithm::theta,
    Algorithm::theta_prime, Algorithm::beta, Algorithm::psi_prime, Algorithm::pi_prime};

inline constexpr std::size_t algorithm_count = all_algorithms.size();

inline constexpr std::size_t index_of(Algorithm a) { return static_cast<std::size_t>(a); }

/// phi and beta are their own co-algorithms; the other three pairs swap.
inline constexpr Algorithm co_algorithm(Algorithm a) {
    switch (a) {
    case Algorithm::phi: return Algorithm::phi;
    case Algorithm::beta: return Algorithm::beta;
    case Algorithm::pi: return Algorithm::pi_prime;
    case Algorithm::pi_prime: return Algorithm::pi;
    case Algorithm::psi: return Algorithm::psi_prime;
    case Algorithm::psi_prime: return Algorithm::psi;
    case Algorithm::theta: return Algorithm::theta_prime;
    case Algorithm::theta_prime: return Algorithm::theta;
    }
    return a;
}

inline constexpr bool is_primed(Algorithm a) {
    return a == Algorithm::theta_prime || a == Algorithm::psi_prime || a == Algorithm::pi_prime;
}

inline constexpr std::string_view name(Algorithm a) {
    switch (a) {
    case Algorithm::phi: return "phi";
    case Algorithm::pi: return "pi";
    case Algorithm::psi: return "psi";
    case Algorithm::theta: return "theta";
    case Algorithm::theta_prime: return "thetap";
    case Algorithm::beta: return "beta";
    case Algorithm::psi_prime: return "psip";
    case Algorithm::pi_prime: return "pip";
    }
    return "?";
}

inline std::optional<Algorithm> parse_algorithm(std::string_view s) {
    for (auto a : all_algorithms)
        if (name(a) == s) return a;
    return std::nullopt;
}

}  // namespace plogic
