#pragma once

#include <complex>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace abelicomp {

/// An element of ⊕ Z_{k_t}, stored as its coordinate tuple.
struct GroupElement {
    std::vector<int> coords;

    auto operator<=>(const GroupElement&) const = default;
};

/// Index j of the character s ↦ ∏ ω_{k_t}^{j_t s_t}.
struct CharacterIndex {
    std::vector<int> coords;

    auto operator<=>(const CharacterIndex&) const = default;
};

/// Finite abelian group G = Z_{k_1} ⊕ ... ⊕ Z_{k_r}.
///
/// Elements are identified with {0, ..., |G|-1} through the mixed-radix index
/// s_1 + k_1 (s_2 + k_2 (...)); the index-level operations are what the
/// counting code uses in its inner loops.
class Group {
public:
    explicit Group(std::vector<int> moduli);

    const std::vector<int>& moduli() const noexcept { return moduli_; }
    std::size_t rank() const noexcept { return moduli_.size(); }
    std::size_t order() const noexcept { return order_; }

    GroupElement zero() const;
    /// Componentwise ring identity (1, ..., 1).
    GroupElement one() const;
    bool is_zero(const GroupElement& a) const;

    GroupElement add(const GroupElement& a, const GroupElement& b) const;
    GroupElement sub(const GroupElement& a, const GroupElement& b) const;
    GroupElement neg(const GroupElement& a) const;
    /// Componentwise product mod k_t.
    GroupElement ring_mul(const GroupElement& a, const GroupElement& b) const;
    /// True when every coordinate is a unit modulo its k_t.
    bool is_ring_unit(const GroupElement& a) const;
    GroupElement ring_inverse(const GroupElement& a) const;

    std::size_t index_of(const GroupElement& e) const;
    GroupElement element_of(std::size_t index) const;

    std::size_t add_index(std::size_t a, std::size_t b) const;
    std::size_t sub_index(std::size_t a, std::size_t b) const;
    std::size_t neg_index(std::size_t a) const;

    std::complex<double> character(const CharacterIndex& j, const GroupElement& s) const;
    std::complex<double> character_index(std::size_t j, std::size_t s) const;

    /// Throws ShapeError unless `e` has rank() coordinates within bounds.
    void check(const GroupElement& e) const;
    void check(const CharacterIndex& j) const;

    std::string describe() const;

    bool operator==(const Group& other) const noexcept { return moduli_ == other.moduli_; }

private:
    std::size_t add_index_slow(std::size_t a, std::size_t b) const;

    std::vector<int> moduli_;
    std::size_t order_ = 1;
    // Cayley table for small groups, shared between copies.
    std::shared_ptr<const std::vector<std::uint32_t>> add_table_;
};

Group make_group(std::vector<int> moduli);

std::string to_string(const GroupElement& e);

}  // namespace abelicomp
