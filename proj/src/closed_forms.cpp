#include "abelicomp/closed_forms.hpp"

#include <cmath>
#include <numeric>

#include "abelicomp/error.hpp"

namespace abelicomp {

namespace {

BigInt power(const BigInt& base, unsigned long exponent) {
    BigInt out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
    return out;
}

// Exact integer σ-th root, if any.
std::optional<BigInt> exact_root(const BigInt& value, int sigma) {
    BigInt root;
    if (mpz_root(root.get_mpz_t(), value.get_mpz_t(), static_cast<unsigned long>(sigma)) != 0) return root;
    return std::nullopt;
}

void fill_floats(AsymptoticEstimate& est) {
    if (est.A_exact) est.A = est.A_exact->get_d();
    if (est.B_exact) est.B = est.B_exact->get_d();
}

void require(bool condition, const std::string& what) {
    if (!condition) throw Error(ErrorCode::HypothesisViolated, what);
}

}  // namespace

std::string to_string(EstimateSource source) {
    switch (source) {
    case EstimateSource::Corollary1: return "corollary1";
    case EstimateSource::Corollary2: return "corollary2";
    case EstimateSource::Theorem3: return "theorem3";
    case EstimateSource::Spectral: return "spectral";
    }
    return "unknown";
}

BigInt falling_factorial(long long x, long long k) {
    require(k >= 0 && x >= k, "falling factorial needs x >= k >= 0 (x = " + std::to_string(x) +
                                  ", k = " + std::to_string(k) + ")");
    BigInt out = 1;
    for (long long i = 0; i < k; ++i) out *= BigInt(static_cast<long>(x - i));
    return out;
}

BigInt unrestricted_count(const Group& group, unsigned m, const GroupElement& s) {
    const BigInt n = static_cast<unsigned long>(group.order());
    const BigInt sign = (m % 2 == 0) ? 1 : -1;
    BigInt numerator = power(n - 1, m);
    if (group.is_zero(s)) {
        numerator += sign * (n - 1);
    } else {
        numerator -= sign;
    }
    return numerator / n;
}

BigInt weak_unrestricted_count(const Group& group, unsigned m) {
    if (m < 1) throw Error(ErrorCode::InvalidArgument, "weak unrestricted count needs m >= 1");
    return power(BigInt(static_cast<unsigned long>(group.order())), m - 1);
}

AsymptoticEstimate corollary1_constants(const BigInt& H, const BigInt& J, const BigInt& K, int sigma, int b,
                                        std::size_t order) {
    if (sigma < 1 || b < 0 || b >= sigma) throw Error(ErrorCode::InvalidArgument, "need 0 <= b < sigma");
    if (K <= 1) throw Error(ErrorCode::NotGrowing, "outdegree K = " + K.get_str() + " gives no growth");
    if (H < 1 || J < 1) throw Error(ErrorCode::InvalidArgument, "H and J must be positive");
    AsymptoticEstimate est;
    est.b = b;
    est.source = EstimateSource::Corollary1;
    const BigInt size = static_cast<unsigned long>(order);
    if (auto root = exact_root(K, sigma)) {
        est.B_exact = *root;
        // K^{1+b/σ} = K · B^b
        Rational a(H * J, size * K * power(*root, static_cast<unsigned long>(b)));
        a.canonicalize();
        est.A_exact = a;
        fill_floats(est);
    } else {
        est.B = std::pow(K.get_d(), 1.0 / sigma);
        est.A = BigInt(H * J).get_d() / (size.get_d() * std::pow(K.get_d(), 1.0 + static_cast<double>(b) / sigma));
    }
    return est;
}

AsymptoticEstimate corollary2_constants(int item, std::size_t order, int d, int b) {
    require(d >= 1, "d must be >= 1");
    const auto n = static_cast<long long>(order);
    const BigInt size = static_cast<unsigned long>(order);
    AsymptoticEstimate est;
    est.source = EstimateSource::Corollary2;
    est.item = item;
    est.b = b;
    Rational a;
    switch (item) {
    case 1:
        require(n >= d + 2, "item 1 needs |G| >= d+2");
        a = Rational(falling_factorial(n, d), size * power(BigInt(static_cast<long>(n - d)), static_cast<unsigned long>(d)));
        est.B_exact = BigInt(static_cast<long>(n - d));
        break;
    case 2:
        require(n >= d + 3, "item 2 needs |G| >= d+3");
        a = Rational(falling_factorial(n - 1, d),
                     size * power(BigInt(static_cast<long>(n - 1 - d)), static_cast<unsigned long>(d)));
        est.B_exact = BigInt(static_cast<long>(n - 1 - d));
        break;
    case 3:
        require(n >= d + 2, "item 3 needs |G| >= d+2");
        a = Rational(falling_factorial(n - 1, d),
                     size * power(BigInt(static_cast<long>(n - d)), static_cast<unsigned long>(d)));
        est.B_exact = BigInt(static_cast<long>(n - d));
        break;
    case 4:
        require(n >= 3 && d >= 2, "item 4 needs |G| >= 3 and d >= 2");
        a = Rational(power(size, static_cast<unsigned long>(d - 2)),
                     power(BigInt(static_cast<long>(n - 1)), static_cast<unsigned long>(d - 1)));
        est.B_exact = BigInt(static_cast<long>(n - 1));
        break;
    case 5:
        require(n >= 4 && d >= 2, "item 5 needs q >= 4 and d >= 2");
        a = Rational(power(BigInt(static_cast<long>(n - 1)), static_cast<unsigned long>(d - 1)),
                     size * power(BigInt(static_cast<long>(n - 2)), static_cast<unsigned long>(d - 1)));
        est.B_exact = BigInt(static_cast<long>(n - 2));
        break;
    default:
        throw Error(ErrorCode::InvalidArgument, "closed-form item must be 1..5");
    }
    a.canonicalize();
    est.A_exact = a;
    fill_floats(est);
    return est;
}

AsymptoticEstimate theorem3_constants(std::size_t order, int d) {
    const auto n = static_cast<long long>(order);
    require(d >= 1, "d must be >= 1");
    require(n >= d + 2, "locally d-Mullen asymptotics need |G| >= d+2");
    AsymptoticEstimate est;
    est.source = EstimateSource::Theorem3;
    Rational a(falling_factorial(n - 1, d),
               BigInt(static_cast<unsigned long>(order)) * power(BigInt(static_cast<long>(n - d)), static_cast<unsigned long>(d)));
    a.canonicalize();
    est.A_exact = a;
    est.B_exact = BigInt(static_cast<long>(n - d));
    fill_floats(est);
    return est;
}

bool gcd_condition(const std::set<int>& subset) {
    if (subset.empty()) return false;
    int g = 0;
    const int first = *subset.begin();
    for (int x : subset) g = std::gcd(g, x - first);
    return g == 1;
}

Rational theorem1_main_term(const Group& group, const std::vector<std::set<GroupElement>>& subsets) {
    BigInt product = 1;
    for (const auto& s : subsets) product *= static_cast<unsigned long>(s.size());
    Rational out(product, BigInt(static_cast<unsigned long>(group.order())));
    out.canonicalize();
    return out;
}

}  // namespace abelicomp
