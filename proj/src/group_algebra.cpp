#include "abelicomp/group_algebra.hpp"

#include "abelicomp/error.hpp"

namespace abelicomp {

namespace {

void require_same_group(const GroupVector& u, const GroupVector& v) {
    if (!(u.group() == v.group())) {
        throw Error(ErrorCode::ShapeError,
                    "group algebra operands over " + u.group().describe() + " and " + v.group().describe());
    }
}

}  // namespace

GroupVector::GroupVector(Group group) : group_(std::move(group)), coeffs_(group_.order()) {}

GroupVector::GroupVector(Group group, std::vector<BigInt> coeffs)
    : group_(std::move(group)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != group_.order()) {
        throw Error(ErrorCode::ShapeError, "coefficient vector has " + std::to_string(coeffs_.size()) +
                                               " entries, group order is " + std::to_string(group_.order()));
    }
}

BigInt GroupVector::total() const {
    BigInt sum = 0;
    for (const auto& c : coeffs_) sum += c;
    return sum;
}

bool GroupVector::is_zero() const {
    for (const auto& c : coeffs_) {
        if (c != 0) return false;
    }
    return true;
}

GroupVector& GroupVector::operator+=(const GroupVector& other) {
    require_same_group(*this, other);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    return *this;
}

void GroupVector::add_shifted(const GroupVector& other, std::size_t shift) {
    require_same_group(*this, other);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (other.coeffs_[i] != 0) coeffs_[group_.add_index(i, shift)] += other.coeffs_[i];
    }
}

bool GroupVector::operator==(const GroupVector& other) const {
    return group_ == other.group_ && coeffs_ == other.coeffs_;
}

GroupVector ga_zero(const Group& group) { return GroupVector(group); }

GroupVector ga_delta(const Group& group, const GroupElement& e) {
    GroupVector v(group);
    v[group.index_of(e)] = 1;
    return v;
}

GroupVector ga_indicator(const Group& group, std::span<const GroupElement> elements) {
    GroupVector v(group);
    for (const auto& e : elements) v[group.index_of(e)] += 1;
    return v;
}

GroupVector ga_add(const GroupVector& u, const GroupVector& v) {
    GroupVector out = u;
    out += v;
    return out;
}

GroupVector ga_mul(const GroupVector& u, const GroupVector& v) {
    require_same_group(u, v);
    const Group& g = u.group();
    GroupVector out(g);
    for (std::size_t a = 0; a < g.order(); ++a) {
        if (u[a] == 0) continue;
        for (std::size_t b = 0; b < g.order(); ++b) {
            if (v[b] == 0) continue;
            out[g.add_index(a, b)] += u[a] * v[b];
        }
    }
    return out;
}

GroupVector ga_pow(const GroupVector& u, unsigned exponent) {
    GroupVector result = ga_delta(u.group(), u.group().zero());
    GroupVector base = u;
    while (exponent > 0) {
        if (exponent & 1U) result = ga_mul(result, base);
        exponent >>= 1U;
        if (exponent > 0) base = ga_mul(base, base);
    }
    return result;
}

BigInt ga_coeff(const GroupVector& v, const GroupElement& s) { return v[v.group().index_of(s)]; }

GroupVector operator+(const GroupVector& u, const GroupVector& v) { return ga_add(u, v); }

GroupVector operator*(const GroupVector& u, const GroupVector& v) { return ga_mul(u, v); }

}  // namespace abelicomp
