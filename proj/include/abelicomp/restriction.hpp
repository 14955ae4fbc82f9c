#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "abelicomp/finite_field.hpp"
#include "abelicomp/group.hpp"
#include "abelicomp/group_algebra.hpp"

namespace abelicomp {

using Part = std::uint32_t;              ///< group element by index
using IndexSeq = std::vector<Part>;      ///< composition by element indices
using PartSeq = std::vector<GroupElement>;

enum class PartsMode { Weak, Nonzero };

enum class RuleKind {
    SumNonzero,    ///< every run of exactly `length` consecutive parts has nonzero sum
    AllDistinct,   ///< parts at distance < `length` differ (so short sequences too)
    ProductNeOne,  ///< every run of exactly `length` consecutive parts has field product ≠ 1
};

struct WindowRule {
    int length = 1;
    RuleKind kind = RuleKind::SumNonzero;

    bool operator==(const WindowRule&) const = default;
};

/// A locally restricted class described by window predicates.
struct ClassSpec {
    PartsMode parts = PartsMode::Weak;
    std::vector<WindowRule> rules;
    /// The first min(first_nonzero, m) parts must be nonzero.
    int first_nonzero = 0;
    /// Required by ProductNeOne; its additive group must be the ambient group.
    std::optional<FieldSpec> field;
    std::string label;

    int max_window() const;
    /// Span used when building the digraph: max(1, w_max - 1, first_nonzero).
    int natural_span() const;
};

/// Throws InvalidArgument / ShapeError when the spec cannot be used over `group`.
void validate_class(const Group& group, const ClassSpec& spec);

/// Locally d-Mullen: every run of 1..d consecutive parts has nonzero sum.
ClassSpec mullen_class(int d);
/// d-Carlitz: no repeated part among any d+1 consecutive parts.
ClassSpec carlitz_class(int d, bool weak, bool first_d_nonzero = false);
/// The sum of any d consecutive parts is nonzero.
ClassSpec window_sum_class(int d, bool weak);
/// Compositions over F_q where the product of any d consecutive parts is not 1.
ClassSpec product_ne_one_class(const FieldSpec& field, int d);

/// Incremental evaluation of a ClassSpec on index sequences.
class WindowChecker {
public:
    WindowChecker(const Group& group, const ClassSpec& spec);

    bool part_allowed(Part part) const;
    /// Checks every rule instance whose last position is `pos` (first-block rule excluded).
    bool ok_at(const IndexSeq& seq, std::size_t pos) const;
    bool first_block_ok(const IndexSeq& seq) const;
    /// Whole-sequence membership test.
    bool accepts(const IndexSeq& seq) const;

private:
    Group group_;
    ClassSpec spec_;
    std::vector<std::uint32_t> field_mul_;
    std::size_t field_one_ = 0;
};

struct TerminalArc {
    std::size_t from = 0;
    IndexSeq tail;

    bool operator==(const TerminalArc&) const = default;
};

/// The local-restriction digraph: source ε_s, recurrent σ-tuples R, terminal
/// sequences of length < σ. Immutable once constructed.
class RestrictionDigraph {
public:
    RestrictionDigraph(Group group, int span, std::vector<IndexSeq> recurrent, std::vector<std::size_t> start,
                       std::vector<std::pair<std::size_t, std::size_t>> arcs,
                       std::vector<std::vector<TerminalArc>> terminal,
                       std::optional<ClassSpec> predicate = std::nullopt);

    const Group& group() const noexcept { return group_; }
    int span() const noexcept { return span_; }
    std::size_t size() const noexcept { return recurrent_.size(); }
    const std::vector<IndexSeq>& recurrent() const noexcept { return recurrent_; }
    const std::vector<std::size_t>& start() const noexcept { return start_; }
    const std::vector<std::size_t>& successors(std::size_t u) const { return succ_[u]; }
    const std::vector<std::size_t>& predecessors(std::size_t v) const { return pred_[v]; }
    /// Terminal arcs into Seq_b, b in [0, span).
    const std::vector<TerminalArc>& terminal(int b) const;
    std::size_t arc_count() const noexcept { return arc_count_; }
    bool has_arc(std::size_t u, std::size_t v) const;

    /// Index of the size |u| of recurrent vertex u, computed in G.
    std::size_t weight(std::size_t u) const { return weight_[u]; }
    PartSeq parts(std::size_t u) const;
    std::optional<std::size_t> find(const IndexSeq& vertex) const;

    const std::optional<ClassSpec>& predicate() const noexcept { return predicate_; }

private:
    Group group_;
    int span_;
    std::vector<IndexSeq> recurrent_;
    std::vector<std::size_t> start_;
    std::vector<std::vector<std::size_t>> succ_;
    std::vector<std::vector<std::size_t>> pred_;
    std::vector<std::vector<TerminalArc>> terminal_;
    std::vector<std::size_t> weight_;
    std::size_t arc_count_ = 0;
    std::optional<ClassSpec> predicate_;
};

RestrictionDigraph build_class(const Group& group, const ClassSpec& spec);
/// As build_class with an explicit span σ ≥ natural_span(); larger spans
/// describe the same class with bigger blocks.
RestrictionDigraph build_class_with_span(const Group& group, const ClassSpec& spec, int span);

RestrictionDigraph build_mullen(const Group& group, int d);
RestrictionDigraph build_carlitz(const Group& group, int d, bool weak, bool first_d_nonzero = false);
RestrictionDigraph build_window_sum(const Group& group, int d, bool weak);
RestrictionDigraph build_window_product_ne_one(const FieldSpec& field, int d);

/// Counts by direct predicate enumeration (used for m < σ, where no walk exists).
GroupVector enumerate_class_counts(const Group& group, const ClassSpec& spec, unsigned m);

/// Strong connectivity of D_R (graph-theoretic; a single vertex counts).
bool is_strongly_connected(const RestrictionDigraph& d);
/// Strongly connected with at least two recurrent vertices.
bool satisfies_condition3(const RestrictionDigraph& d);
/// gcd of all directed cycle lengths in D_R; 0 when D_R is acyclic.
long long cycle_gcd(const RestrictionDigraph& d);

/// Walks u → w_1 → ... → w_{ℓ-1} → v witnessing aperiodicity in one coordinate.
struct CoordinateWitness {
    std::size_t coordinate = 0;
    std::size_t length = 0;  ///< ℓ, number of arcs
    std::size_t u = 0;
    std::size_t v = 0;
    /// Intermediate vertices of each walk (ℓ-1 entries per walk).
    std::vector<std::vector<std::size_t>> walks;
};

struct Condition2Result {
    bool found = false;  ///< false means Unknown, never "fails"
    std::vector<CoordinateWitness> witnesses;  ///< one per coordinate when found
    std::size_t walks_examined = 0;
};

Condition2Result check_condition2(const RestrictionDigraph& d, std::size_t l_max,
                                  std::size_t walk_budget = 2'000'000);
/// Independent validation of a witness against the definition.
bool verify_condition2_witness(const RestrictionDigraph& d, const CoordinateWitness& witness);

}  // namespace abelicomp
