#pragma once

#include <gmpxx.h>

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "abelicomp/group.hpp"
#include "abelicomp/group_algebra.hpp"

namespace abelicomp {

using Rational = mpq_class;

enum class EstimateSource { Corollary1, Corollary2, Theorem3, Spectral };

std::string to_string(EstimateSource source);

/// c_m(s) ~ A·B^m for m ≡ b (mod σ).
struct AsymptoticEstimate {
    double A = 0.0;
    double B = 0.0;
    std::optional<Rational> A_exact;
    std::optional<BigInt> B_exact;
    int b = 0;
    EstimateSource source = EstimateSource::Spectral;
    int item = 0;  ///< closed-form item, 1..5
};

/// x(x-1)...(x-k+1); HypothesisViolated unless x >= k >= 0.
BigInt falling_factorial(long long x, long long k);

/// Number of m-compositions of s over G with nonzero parts.
BigInt unrestricted_count(const Group& group, unsigned m, const GroupElement& s);
/// Number of weak m-compositions of any s: |G|^{m-1} (m >= 1).
BigInt weak_unrestricted_count(const Group& group, unsigned m);

/// A = HJ / (|G| K^{1+b/σ}), B = K^{1/σ}. Exact whenever K is a perfect σ-th power.
AsymptoticEstimate corollary1_constants(const BigInt& H, const BigInt& J, const BigInt& K, int sigma, int b,
                                        std::size_t order);
/// Constants of the five listed classes; `order` is |G| (or q for item 5).
AsymptoticEstimate corollary2_constants(int item, std::size_t order, int d, int b = 0);
/// Locally d-Mullen compositions: A = (|G|-1)^{\underline d} (|G|-d)^{-d} / |G|, B = |G|-d.
AsymptoticEstimate theorem3_constants(std::size_t order, int d);

/// gcd{a - b : a, b ∈ S} == 1, elements taken as integers.
bool gcd_condition(const std::set<int>& subset);
/// (1/|G|) ∏ |S_j| as an exact rational.
Rational theorem1_main_term(const Group& group, const std::vector<std::set<GroupElement>>& subsets);

}  // namespace abelicomp
