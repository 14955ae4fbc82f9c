#pragma once

#include <optional>
#include <set>
#include <vector>

#include "abelicomp/finite_field.hpp"
#include "abelicomp/group_algebra.hpp"

namespace abelicomp {

using Subset = std::set<GroupElement>;

/// Coefficient vector of ∏_j (Σ_{e ∈ S_j} δ_e).
GroupVector count_subset_restricted_all(const Group& group, const std::vector<Subset>& subsets);
BigInt count_subset_restricted(const Group& group, const std::vector<Subset>& subsets, const GroupElement& s);

enum class Tristate { False, True, Unknown };
const char* to_string(Tristate value);

/// result[j][t]: gcd{a − b : a, b ∈ S_{t,j}} = 1 in Z_{k_t}.  Unknown for every t when S_j
/// is not a Cartesian product of its coordinate projections.
std::vector<std::vector<Tristate>> check_theorem1_hypothesis(const Group& group, const std::vector<Subset>& subsets);

/// Solutions of Σ a_j x_j^{d_j} = a with x_j ∈ F^*, via y_j = a_j x_j^{d_j} and fiber sizes.
BigInt diagonal_count(const FieldSpec& field, const std::vector<GroupElement>& coeffs,
                      const std::vector<unsigned long long>& exponents, const GroupElement& a);

/// Least m ≤ max_m with m·S = F for S = {x^k : x ∈ F}; nullopt when not reached.
std::optional<int> waring_number(const FieldSpec& field, unsigned long long k, int max_m);
std::optional<int> waring_number_of_set(const Group& group, const Subset& s, int max_m);

}  // namespace abelicomp
