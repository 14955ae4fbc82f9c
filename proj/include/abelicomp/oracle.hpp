#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "abelicomp/finite_field.hpp"
#include "abelicomp/group_algebra.hpp"
#include "abelicomp/restriction.hpp"

namespace abelicomp {

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

struct OracleOptions {
    std::uint64_t budget = kDefaultBudget;  ///< max |G|^m (or ∏|S_j|) states
    bool prune = true;                      ///< abandon prefixes that already violate a completed window
};

/// Exhaustive enumeration of (G)^m filtered by the class definition; tallies by sum.
GroupVector brute_count_all(const Group& group, const ClassSpec& spec, unsigned m, OracleOptions options = {});
BigInt brute_count(const Group& group, const ClassSpec& spec, unsigned m, const GroupElement& s,
                   OracleOptions options = {});
/// Number of admissible sequences, counted without any sum bookkeeping.
BigInt brute_total(const Group& group, const ClassSpec& spec, unsigned m, OracleOptions options = {});
/// Every admissible sequence, in lexicographic order of element indices.
std::vector<IndexSeq> brute_enumerate(const Group& group, const ClassSpec& spec, unsigned m,
                                      OracleOptions options = {});

/// Tuples in S_1 × ... × S_m summing to s.
BigInt brute_subset_count(const Group& group, const std::vector<std::set<GroupElement>>& subsets,
                          const GroupElement& s, std::uint64_t budget = kDefaultBudget);

/// Solutions of Σ a_j x_j^{d_j} = a with every x_j ∈ F^*, by enumerating x.
BigInt brute_diagonal_count(const FieldSpec& field, const std::vector<GroupElement>& coeffs,
                            const std::vector<unsigned long long>& exponents, const GroupElement& a,
                            std::uint64_t budget = kDefaultBudget);

}  // namespace abelicomp
