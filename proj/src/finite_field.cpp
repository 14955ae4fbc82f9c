#include "abelicomp/finite_field.hpp"

#include "abelicomp/error.hpp"

namespace abelicomp {

namespace {

using Poly = std::vector<long long>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo monic-or-unit-leading b over Z_p.
Poly poly_mod(Poly a, const Poly& b, long long p) {
    trim(a);
    const std::size_t db = b.size() - 1;
    long long lead_inv = 1;
    for (long long x = 1; x < p; ++x) {
        if ((b.back() * x) % p == 1) {
            lead_inv = x;
            break;
        }
    }
    while (a.size() >= b.size()) {
        const long long factor = (a.back() * lead_inv) % p;
        const std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i) {
            a[shift + i] = ((a[shift + i] - factor * b[i]) % p + p) % p;
        }
        trim(a);
    }
    return a;
}

Poly to_poly(const std::vector<int>& coeffs) { return Poly(coeffs.begin(), coeffs.end()); }

}  // namespace

bool is_prime(long long value) {
    if (value < 2) return false;
    for (long long d = 2; d * d <= value; ++d) {
        if (value % d == 0) return false;
    }
    return true;
}

bool is_irreducible(int p, const std::vector<int>& poly) {
    Poly f = to_poly(poly);
    for (auto& c : f) c = ((c % p) + p) % p;
    trim(f);
    if (f.size() < 2) return false;
    const std::size_t degree = f.size() - 1;
    // Trial division by every monic polynomial of degree 1..degree/2.
    for (std::size_t d = 1; d * 2 <= degree; ++d) {
        std::size_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= static_cast<std::size_t>(p);
        for (std::size_t code = 0; code < count; ++code) {
            Poly g(d + 1, 0);
            std::size_t rest = code;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = static_cast<long long>(rest % static_cast<std::size_t>(p));
                rest /= static_cast<std::size_t>(p);
            }
            g[d] = 1;
            if (poly_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

std::vector<int> smallest_irreducible(int p, int n) {
    std::size_t count = 1;
    for (int i = 0; i < n; ++i) count *= static_cast<std::size_t>(p);
    // Lexicographic order on (c_0, ..., c_{n-1}): c_0 is the most significant digit.
    for (std::size_t code = 0; code < count; ++code) {
        std::vector<int> poly(static_cast<std::size_t>(n) + 1, 0);
        std::size_t rest = code;
        for (int i = n - 1; i >= 0; --i) {
            poly[static_cast<std::size_t>(i)] = static_cast<int>(rest % static_cast<std::size_t>(p));
            rest /= static_cast<std::size_t>(p);
        }
        poly[static_cast<std::size_t>(n)] = 1;
        if (is_irreducible(p, poly)) return poly;
    }
    throw Error(ErrorCode::NotIrreducible, "no irreducible polynomial found");
}

FieldSpec::FieldSpec(int p, int n, std::vector<int> irreducible)
    : p_(p), n_(n), irreducible_(std::move(irreducible)), group_(std::vector<int>(static_cast<std::size_t>(n < 1 ? 1 : n), p < 2 ? 2 : p)) {
    if (!is_prime(p_)) throw Error(ErrorCode::NotPrime, std::to_string(p_) + " is not prime");
    if (n_ < 1) throw Error(ErrorCode::InvalidArgument, "extension degree must be >= 1");
    if (irreducible_.size() != static_cast<std::size_t>(n_) + 1 || irreducible_.back() != 1) {
        throw Error(ErrorCode::NotIrreducible, "irreducible must be monic of degree " + std::to_string(n_));
    }
    for (int c : irreducible_) {
        if (c < 0 || c >= p_) throw Error(ErrorCode::NotIrreducible, "coefficient outside Z_p");
    }
    if (!is_irreducible(p_, irreducible_)) {
        throw Error(ErrorCode::NotIrreducible, "supplied polynomial is reducible over Z_p");
    }
}

FieldSpec make_field(int p, int n, std::optional<std::vector<int>> irreducible) {
    if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "extension degree must be >= 1");
    if (!irreducible) irreducible = smallest_irreducible(p, n);
    return FieldSpec(p, n, std::move(*irreducible));
}

GroupElement FieldSpec::one() const { return constant(1); }

GroupElement FieldSpec::constant(long long c) const {
    GroupElement e = zero();
    e.coords[0] = static_cast<int>(((c % p_) + p_) % p_);
    return e;
}

GroupElement FieldSpec::mul(const GroupElement& a, const GroupElement& b) const {
    group_.check(a);
    group_.check(b);
    Poly product(static_cast<std::size_t>(2 * n_), 0);
    for (int i = 0; i < n_; ++i) {
        if (a.coords[static_cast<std::size_t>(i)] == 0) continue;
        for (int j = 0; j < n_; ++j) {
            product[static_cast<std::size_t>(i + j)] +=
                static_cast<long long>(a.coords[static_cast<std::size_t>(i)]) * b.coords[static_cast<std::size_t>(j)];
        }
    }
    for (auto& c : product) c %= p_;
    Poly rem = poly_mod(std::move(product), to_poly(irreducible_), p_);
    GroupElement out = zero();
    for (std::size_t i = 0; i < rem.size(); ++i) out.coords[i] = static_cast<int>(rem[i]);
    return out;
}

GroupElement FieldSpec::pow(const GroupElement& a, unsigned long long k) const {
    GroupElement result = one();
    GroupElement base = a;
    while (k > 0) {
        if (k & 1ULL) result = mul(result, base);
        k >>= 1ULL;
        if (k > 0) base = mul(base, base);
    }
    return result;
}

GroupElement FieldSpec::inv(const GroupElement& a) const {
    if (group_.is_zero(a)) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    return pow(a, q() - 2);
}

std::vector<std::uint32_t> FieldSpec::mul_table() const {
    const std::size_t order = q();
    std::vector<GroupElement> elements;
    elements.reserve(order);
    for (std::size_t i = 0; i < order; ++i) elements.push_back(group_.element_of(i));
    std::vector<std::uint32_t> table(order * order);
    for (std::size_t i = 0; i < order; ++i) {
        for (std::size_t j = i; j < order; ++j) {
            const auto k = static_cast<std::uint32_t>(group_.index_of(mul(elements[i], elements[j])));
            table[i * order + j] = k;
            table[j * order + i] = k;
        }
    }
    return table;
}

GroupElement fmul(const FieldSpec& field, const GroupElement& a, const GroupElement& b) { return field.mul(a, b); }

GroupElement finv(const FieldSpec& field, const GroupElement& a) { return field.inv(a); }

GroupElement fpow(const FieldSpec& field, const GroupElement& a, unsigned long long k) { return field.pow(a, k); }

std::set<GroupElement> power_set(const FieldSpec& field, unsigned long long k, const GroupElement& a,
                                 bool include_zero) {
    const Group& g = field.additive_group();
    std::set<GroupElement> out;
    for (std::size_t i = 1; i < g.order(); ++i) {
        out.insert(field.mul(a, field.pow(g.element_of(i), k)));
    }
    if (include_zero) out.insert(field.zero());
    return out;
}

}  // namespace abelicomp
