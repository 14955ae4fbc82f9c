#pragma once

#include <optional>
#include <string>
#include <vector>

#include "abelicomp/finite_field.hpp"
#include "abelicomp/oracle.hpp"
#include "abelicomp/restriction.hpp"

namespace abelicomp {

/// Prefix sums: v_j = u_1 + ... + u_j.
PartSeq phi(const Group& group, const PartSeq& u);
/// Consecutive differences, the inverse of phi.
PartSeq phi_inv(const Group& group, const PartSeq& v);

/// Maps a locally d-Mullen composition of s (s ≠ 0) to one of 1: phi_inv ∘ π ∘ phi,
/// where π swaps s and 1 and fixes everything else.
PartSeq mullen_transport(const Group& group, const PartSeq& u, const GroupElement& s);

bool is_mullen_class(const ClassSpec& spec);
/// Closed under x ↦ a·x for every unit a (componentwise ring product, or the field product).
bool is_multiplication_closed(const ClassSpec& spec);

struct BijectionReport {
    int d = 0;
    unsigned m = 0;
    std::string group;
    std::uint64_t source_size = 0;  ///< locally d-Mullen m-compositions
    std::uint64_t target_size = 0;  ///< d-Carlitz weak with first d parts nonzero
    bool maps_into = true;
    bool injective = true;
    bool round_trip = true;
    bool ok() const { return maps_into && injective && round_trip && source_size == target_size; }
};

BijectionReport check_bijection_prop5(const Group& group, int d, unsigned m, std::uint64_t budget = kDefaultBudget);

enum class IndependenceBasis { Mullen, Multiplication, None };
std::string to_string(IndependenceBasis basis);

struct IndependenceReport {
    IndependenceBasis basis = IndependenceBasis::None;
    unsigned m = 0;
    std::vector<BigInt> counts;  ///< indexed like the group elements
    std::vector<GroupElement> asserted;  ///< s for which c_m(s) = c_m(1) was claimed
    std::vector<GroupElement> failures;  ///< asserted s where the counts differ
    bool all_nonzero_equal = false;      ///< observation: c_m(s) equal for every s ≠ 0
    bool ok() const { return failures.empty(); }
};

/// Counts come from the transfer method; `field` switches the action to the field product.
IndependenceReport check_s_independence(const Group& group, const ClassSpec& spec, unsigned m,
                                        const FieldSpec* field = nullptr);

}  // namespace abelicomp
