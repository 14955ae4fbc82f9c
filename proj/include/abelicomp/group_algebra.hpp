#pragma once

#include <gmpxx.h>

#include <span>
#include <vector>

#include "abelicomp/group.hpp"

namespace abelicomp {

using BigInt = mpz_class;

/// An element of the integral group algebra Z[G]: one exact coefficient per
/// group element, indexed by Group::index_of.
///
/// Counting vectors are the generating functions of the counting code with
/// every exponent reduced into G, so coefficient s is the number of objects
/// whose size is s.
class GroupVector {
public:
    explicit GroupVector(Group group);
    GroupVector(Group group, std::vector<BigInt> coeffs);

    const Group& group() const noexcept { return group_; }
    const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }
    std::vector<BigInt>& coeffs() noexcept { return coeffs_; }

    const BigInt& operator[](std::size_t index) const { return coeffs_[index]; }
    BigInt& operator[](std::size_t index) { return coeffs_[index]; }

    BigInt total() const;
    bool is_zero() const;

    GroupVector& operator+=(const GroupVector& other);
    /// Adds `other` translated by the group element with index `shift`
    /// (multiplication by δ_shift, without materialising the delta).
    void add_shifted(const GroupVector& other, std::size_t shift);

    bool operator==(const GroupVector& other) const;

private:
    Group group_;
    std::vector<BigInt> coeffs_;
};

GroupVector ga_zero(const Group& group);
GroupVector ga_delta(const Group& group, const GroupElement& e);
/// Indicator vector Σ_{e ∈ elements} δ_e; duplicates count with multiplicity.
GroupVector ga_indicator(const Group& group, std::span<const GroupElement> elements);

GroupVector ga_add(const GroupVector& u, const GroupVector& v);
/// Convolution (u*v)[s] = Σ_{a+b=s} u[a] v[b].
GroupVector ga_mul(const GroupVector& u, const GroupVector& v);
GroupVector ga_pow(const GroupVector& u, unsigned exponent);
BigInt ga_coeff(const GroupVector& v, const GroupElement& s);

GroupVector operator+(const GroupVector& u, const GroupVector& v);
GroupVector operator*(const GroupVector& u, const GroupVector& v);

}  // namespace abelicomp
