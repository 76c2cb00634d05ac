#pragma once

#include "skewform/altform.hpp"
#include "skewform/diagrams.hpp"

#include <optional>
#include <string>
#include <vector>

namespace skewform {

/*
 * Named verification procedures for the trace identities, vanishing
 * theorems, free-basis certifications and relation ideals of the
 * classical families. Everything here is exhaustive over basis subsets
 * and exact; random evaluation exists only as an advisory pre-check and
 * never decides a verdict.
 */

struct Budgets {
    std::size_t max_dim = 24;
    std::size_t max_entries = 2'000'000;
    std::size_t max_columns = 50'000;
    bool force = false;

    std::size_t effective_dim() const { return force ? 1'000 : max_dim; }
};

// The k!-term signed permutation sum. Independent oracle for the wedge
// powers of the generic element; guarded at k <= 8.
RatMatrix standard_poly_direct(const std::vector<RatMatrix>& xs);

struct TraceGenerator {
    SpacePtr space;
    std::size_t index = 0;   // h
    std::size_t degree = 0;  // 2h+1, 4h+1 or 4h+3 depending on the family
    AltForm form;            // trace of the matching wedge power, nonzero
};

struct RelationTerm {
    Rational coeff;
    std::vector<std::size_t> gens;  // generator indices, in written order
    std::size_t t_power = 0;
};

struct RelationExpr {
    std::vector<RelationTerm> terms;
    std::size_t declared_degree = 0;

    bool homogeneous(const std::vector<TraceGenerator>& gens) const;
};

enum class Verdict { holds, fails, skipped_budget };

std::string verdict_name(Verdict v);

struct Witness {
    std::vector<std::size_t> subset;
    std::size_t entry_row = 0, entry_col = 0;
    std::string value;
};

struct CheckReport {
    std::string name;
    std::string family;
    std::size_t size_param = 0;  // n for sympl/orth families, m for full
    Verdict verdict = Verdict::holds;
    std::optional<Witness> witness;
    double timing_ms = 0.0;
    std::string config_hash;
    std::string detail;
    bool advisory = false;

    bool holds() const { return verdict == Verdict::holds; }
};

// Shared state for one family at one size: the space, the memoized
// wedge powers and the trace generators.
class Workspace {
public:
    Workspace(Family family, Budgets budgets = {});

    const Family& family() const { return family_; }
    const Budgets& budgets() const { return budgets_; }
    const SpacePtr& space() const { return space_; }
    PowerCache& powers() { return powers_; }
    std::size_t size_param() const;

    // T_h for the family, index-ordered; built (and verified nonzero)
    // on first use.
    const std::vector<TraceGenerator>& generators();

    // Highest wedge power appearing in the family's module basis.
    std::size_t top_basis_power() const;

private:
    Family family_;
    Budgets budgets_;
    SpacePtr space_;
    PowerCache powers_;
    std::vector<TraceGenerator> gens_;
    bool gens_built_ = false;
};

CheckReport check_vanishing_power(Workspace& ws, std::size_t k);
CheckReport check_trace_vanishing(Workspace& ws, std::size_t degree);

// evaluate(X^k, .) against the permutation-sum oracle on every basis
// subset for k <= max_k, plus the product rule X^a ^ X^b = X^{a+b}.
CheckReport check_power_oracle(Workspace& ws, std::size_t max_k);

const std::vector<TraceGenerator>& invariant_generators(Workspace& ws);

// All 2^r wedge products of distinct generators are independent and
// their degree profile matches the diagram-side invariant dimensions.
CheckReport certify_exterior_invariants(Workspace& ws);

// Free-basis certification: stacked coefficient vectors of (subalgebra
// monomial) ^ X^j have full rank in every degree and the degree profile
// matches the diagram-side module dimensions.
CheckReport certify_basis(Workspace& ws);

// Involution parity of every basis power X^j, coefficient-wise.
CheckReport check_basis_parity(Workspace& ws);

// Image of a formal element of A[t] under t -> X. Scalar coefficients
// are embedded with the identity matrix. Throws if the expression is
// not homogeneous or indexes a missing generator.
AltForm apply_pi(Workspace& ws, const RelationExpr& expr);

// The relation generator as printed in the classical sources. For
// orth_plus this expression is degree-inhomogeneous; derive_relation is
// authoritative there.
RelationExpr printed_relation(Workspace& ws);

struct DeriveResult {
    RelationExpr derived;
    bool unique = false;
    bool solved = false;              // false: inconsistent system
    bool printed_homogeneous = true;
    bool matches_printed = false;
    std::string coefficients;         // human-readable solved relation
};

DeriveResult derive_relation(Workspace& ws);

CheckReport verify_relation(Workspace& ws);
CheckReport report_derive_relation(Workspace& ws);

// Multiplication-by-t consequences of the relation ideals: top-power
// vanishing per family and the shifted-relation instances on the
// symplectic Lie algebra.
CheckReport derived_consequence_checks(Workspace& ws);

}  // namespace skewform
