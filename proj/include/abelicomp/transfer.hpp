#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <vector>

#include "abelicomp/group_algebra.hpp"
#include "abelicomp/restriction.hpp"

namespace abelicomp {

/// Transfer matrix over Z[G] with start and finish vectors.
///
/// T(u,v) = δ_{|v|} when u → v, α(v) = δ_{|v|} on start arcs and β_b(u) sums
/// δ_{|t|} over terminal arcs (u, t) with |t| = b. The matrix is never stored
/// densely: every nonzero entry is a single delta, so a row-vector step is a
/// sum over predecessors followed by one translation.
class TransferSystem {
public:
    explicit TransferSystem(RestrictionDigraph digraph);

    const RestrictionDigraph& digraph() const noexcept { return *digraph_; }
    const Group& group() const noexcept { return digraph_->group(); }
    int span() const noexcept { return digraph_->span(); }

    GroupVector entry(std::size_t u, std::size_t v) const;
    const std::vector<GroupVector>& alpha() const noexcept { return alpha_; }
    bool has_beta(int b) const;
    const std::vector<GroupVector>& beta(int b) const;

    /// x ↦ x·T
    std::vector<GroupVector> step(const std::vector<GroupVector>& x) const;
    /// x·β_b as a Z[G] scalar.
    GroupVector finish(const std::vector<GroupVector>& x, int b) const;

    /// 0-1 adjacency of D_R, i.e. T evaluated at the trivial character.
    std::vector<std::vector<int>> at_trivial_character() const;

private:
    std::shared_ptr<const RestrictionDigraph> digraph_;
    std::vector<GroupVector> alpha_;
    std::vector<std::vector<GroupVector>> beta_;
    std::vector<char> has_beta_;
};

TransferSystem build_transfer(const RestrictionDigraph& digraph);

/// Exact number of m-part compositions of s in the class of the digraph.
BigInt count(const RestrictionDigraph& digraph, unsigned m, const GroupElement& s);
/// Counts for every s at once.
GroupVector count_all(const RestrictionDigraph& digraph, unsigned m);
GroupVector count_all(const TransferSystem& system, unsigned m);
/// Counts for every m in [0, max_m] in one sweep; nullopt where β_b is absent.
std::vector<std::optional<GroupVector>> count_sweep(const TransferSystem& system, unsigned max_m);

/// Ĉ_m evaluated at every character χ_j (indexed by Group::index_of(j)) in complex doubles.
std::vector<std::complex<double>> evaluate_at_characters(const TransferSystem& system, unsigned m);

struct MultisectionResult {
    double estimate = 0.0;
    BigInt exact;
    bool agree = false;
};

/// Character-sum evaluation of c_m(s) compared against the exact count.
/// Refuses (PrecisionRefused) when the exact count is >= 2^50.
MultisectionResult multisection_crosscheck(const RestrictionDigraph& digraph, unsigned m, const GroupElement& s);
std::vector<MultisectionResult> multisection_crosscheck_all(const TransferSystem& system, unsigned m);

}  // namespace abelicomp
