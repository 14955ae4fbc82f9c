#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "abelicomp/group.hpp"

namespace abelicomp {

/// GF(p^n) presented as Z_p[x]/(f). Elements are GroupElements of the
/// additive group Z_p^n, coordinate t holding the coefficient of x^t.
class FieldSpec {
public:
    FieldSpec(int p, int n, std::vector<int> irreducible);

    int p() const noexcept { return p_; }
    int n() const noexcept { return n_; }
    /// Monic, low-degree coefficient first, length n+1.
    const std::vector<int>& irreducible() const noexcept { return irreducible_; }
    const Group& additive_group() const noexcept { return group_; }
    std::size_t q() const noexcept { return group_.order(); }

    GroupElement zero() const { return group_.zero(); }
    GroupElement one() const;
    /// The element whose polynomial is the constant c (mod p).
    GroupElement constant(long long c) const;

    GroupElement mul(const GroupElement& a, const GroupElement& b) const;
    GroupElement inv(const GroupElement& a) const;
    GroupElement pow(const GroupElement& a, unsigned long long k) const;

    /// Full q×q product table over element indices.
    std::vector<std::uint32_t> mul_table() const;

    bool operator==(const FieldSpec& other) const noexcept {
        return p_ == other.p_ && n_ == other.n_ && irreducible_ == other.irreducible_;
    }

private:
    int p_;
    int n_;
    std::vector<int> irreducible_;
    Group group_;
};

bool is_prime(long long value);
/// Irreducibility of a polynomial over Z_p (coefficients low-degree first).
bool is_irreducible(int p, const std::vector<int>& poly);
/// Lexicographically smallest monic irreducible of degree n, comparing the
/// coefficient list low-degree first.
std::vector<int> smallest_irreducible(int p, int n);

FieldSpec make_field(int p, int n, std::optional<std::vector<int>> irreducible = std::nullopt);

GroupElement fmul(const FieldSpec& field, const GroupElement& a, const GroupElement& b);
GroupElement finv(const FieldSpec& field, const GroupElement& a);
GroupElement fpow(const FieldSpec& field, const GroupElement& a, unsigned long long k);

/// {a·x^k : x ∈ F^*}, with 0 adjoined when include_zero is set.
std::set<GroupElement> power_set(const FieldSpec& field, unsigned long long k, const GroupElement& a,
                                 bool include_zero);

}  // namespace abelicomp
