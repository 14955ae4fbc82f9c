#include "abelicomp/group.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "abelicomp/error.hpp"

namespace abelicomp {

namespace {

constexpr std::size_t kMaxOrder = std::size_t{1} << 24;
constexpr std::size_t kTableOrder = 256;

}  // namespace

Group::Group(std::vector<int> moduli) : moduli_(std::move(moduli)) {
    if (moduli_.empty()) {
        throw Error(ErrorCode::InvalidModulus, "group needs at least one cyclic factor");
    }
    for (int k : moduli_) {
        if (k < 2) {
            throw Error(ErrorCode::InvalidModulus, "modulus " + std::to_string(k) + " < 2");
        }
        if (order_ > kMaxOrder / static_cast<std::size_t>(k)) {
            throw Error(ErrorCode::InvalidModulus, "group order too large");
        }
        order_ *= static_cast<std::size_t>(k);
    }
    if (order_ <= kTableOrder) {
        auto table = std::make_shared<std::vector<std::uint32_t>>(order_ * order_);
        for (std::size_t a = 0; a < order_; ++a) {
            for (std::size_t b = 0; b < order_; ++b) {
                (*table)[a * order_ + b] = static_cast<std::uint32_t>(add_index_slow(a, b));
            }
        }
        add_table_ = std::move(table);
    }
}

Group make_group(std::vector<int> moduli) { return Group(std::move(moduli)); }

GroupElement Group::zero() const { return GroupElement{std::vector<int>(rank(), 0)}; }

GroupElement Group::one() const { return GroupElement{std::vector<int>(rank(), 1)}; }

bool Group::is_zero(const GroupElement& a) const {
    check(a);
    for (int c : a.coords) {
        if (c != 0) return false;
    }
    return true;
}

void Group::check(const GroupElement& e) const {
    if (e.coords.size() != rank()) {
        throw Error(ErrorCode::ShapeError, "element " + to_string(e) + " does not have rank " +
                                               std::to_string(rank()));
    }
    for (std::size_t t = 0; t < rank(); ++t) {
        if (e.coords[t] < 0 || e.coords[t] >= moduli_[t]) {
            throw Error(ErrorCode::ShapeError,
                        "coordinate out of range in " + to_string(e) + " for " + describe());
        }
    }
}

void Group::check(const CharacterIndex& j) const { check(GroupElement{j.coords}); }

GroupElement Group::add(const GroupElement& a, const GroupElement& b) const {
    check(a);
    check(b);
    GroupElement out{std::vector<int>(rank())};
    for (std::size_t t = 0; t < rank(); ++t) {
        out.coords[t] = (a.coords[t] + b.coords[t]) % moduli_[t];
    }
    return out;
}

GroupElement Group::neg(const GroupElement& a) const {
    check(a);
    GroupElement out{std::vector<int>(rank())};
    for (std::size_t t = 0; t < rank(); ++t) {
        out.coords[t] = (moduli_[t] - a.coords[t]) % moduli_[t];
    }
    return out;
}

GroupElement Group::sub(const GroupElement& a, const GroupElement& b) const { return add(a, neg(b)); }

GroupElement Group::ring_mul(const GroupElement& a, const GroupElement& b) const {
    check(a);
    check(b);
    GroupElement out{std::vector<int>(rank())};
    for (std::size_t t = 0; t < rank(); ++t) {
        out.coords[t] = static_cast<int>(
            (static_cast<long long>(a.coords[t]) * b.coords[t]) % moduli_[t]);
    }
    return out;
}

bool Group::is_ring_unit(const GroupElement& a) const {
    check(a);
    for (std::size_t t = 0; t < rank(); ++t) {
        if (std::gcd(a.coords[t], moduli_[t]) != 1) return false;
    }
    return true;
}

GroupElement Group::ring_inverse(const GroupElement& a) const {
    if (!is_ring_unit(a)) {
        throw Error(ErrorCode::DivisionByZero, to_string(a) + " is not a componentwise unit");
    }
    GroupElement out{std::vector<int>(rank())};
    for (std::size_t t = 0; t < rank(); ++t) {
        for (int x = 1; x < moduli_[t]; ++x) {
            if ((static_cast<long long>(a.coords[t]) * x) % moduli_[t] == 1) {
                out.coords[t] = x;
                break;
            }
        }
    }
    return out;
}

std::size_t Group::index_of(const GroupElement& e) const {
    check(e);
    std::size_t index = 0;
    for (std::size_t t = rank(); t-- > 0;) {
        index = index * static_cast<std::size_t>(moduli_[t]) + static_cast<std::size_t>(e.coords[t]);
    }
    return index;
}

GroupElement Group::element_of(std::size_t index) const {
    if (index >= order_) {
        throw Error(ErrorCode::RangeError,
                    "index " + std::to_string(index) + " outside group of order " + std::to_string(order_));
    }
    GroupElement out{std::vector<int>(rank())};
    for (std::size_t t = 0; t < rank(); ++t) {
        const auto k = static_cast<std::size_t>(moduli_[t]);
        out.coords[t] = static_cast<int>(index % k);
        index /= k;
    }
    return out;
}

std::size_t Group::add_index_slow(std::size_t a, std::size_t b) const {
    std::size_t out = 0;
    std::size_t place = 1;
    for (int k : moduli_) {
        const auto uk = static_cast<std::size_t>(k);
        out += ((a % uk + b % uk) % uk) * place;
        a /= uk;
        b /= uk;
        place *= uk;
    }
    return out;
}

std::size_t Group::add_index(std::size_t a, std::size_t b) const {
    if (add_table_) return (*add_table_)[a * order_ + b];
    return add_index_slow(a, b);
}

std::size_t Group::neg_index(std::size_t a) const {
    std::size_t out = 0;
    std::size_t place = 1;
    for (int k : moduli_) {
        const auto uk = static_cast<std::size_t>(k);
        out += ((uk - a % uk) % uk) * place;
        a /= uk;
        place *= uk;
    }
    return out;
}

std::size_t Group::sub_index(std::size_t a, std::size_t b) const { return add_index(a, neg_index(b)); }

std::complex<double> Group::character(const CharacterIndex& j, const GroupElement& s) const {
    check(j);
    check(s);
    // Accumulate the phase as a fraction of a full turn so that exact
    // rational angles (quarter turns etc.) stay exact before the final polar.
    double turns = 0.0;
    for (std::size_t t = 0; t < rank(); ++t) {
        const long long num = (static_cast<long long>(j.coords[t]) * s.coords[t]) % moduli_[t];
        turns += static_cast<double>(num) / moduli_[t];
    }
    turns -= std::floor(turns);
    return std::polar(1.0, 2.0 * std::numbers::pi * turns);
}

std::complex<double> Group::character_index(std::size_t j, std::size_t s) const {
    return character(CharacterIndex{element_of(j).coords}, element_of(s));
}

std::string Group::describe() const {
    std::ostringstream os;
    for (std::size_t t = 0; t < rank(); ++t) {
        if (t) os << "+";
        os << "Z_" << moduli_[t];
    }
    return os.str();
}

std::string to_string(const GroupElement& e) {
    std::ostringstream os;
    os << "(";
    for (std::size_t t = 0; t < e.coords.size(); ++t) {
        if (t) os << ",";
        os << e.coords[t];
    }
    os << ")";
    return os.str();
}

}  // namespace abelicomp
