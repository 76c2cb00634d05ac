#pragma once

#include "skewform/altform.hpp"
#include "skewform/identities.hpp"
#include "skewform/linalg.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace skewform {

/*
 * Brute-force ground truth: dimensions of the equivariant spaces are
 * recomputed as common kernels of the infinitesimal action on each
 * exterior-power block. Nothing here shares logic with the diagram
 * counts or the basis certifications; agreement between the two routes
 * is what the cross-checks certify.
 */

enum class TargetKind { trivial, p_space, k_adjoint, full_matrix };

// Action of one generator on a based space, column-compressed:
// g . e_j = sum_i cols[j][i] e_i.
struct ActionMatrix {
    std::size_t dim = 0;
    std::vector<SparseVec> cols;
};

struct PairSpec {
    std::string label;
    SpacePtr p_space;
    std::vector<RatMatrix> k_generators;    // torus-graded generators first
    std::size_t torus_prefix = 0;           // commuting grading set at the front
    std::vector<ActionMatrix> p_actions;    // one per generator
    TargetKind target = TargetKind::trivial;
    std::size_t target_dim = 1;
    std::vector<ActionMatrix> target_actions;  // empty for trivial target
    SpacePtr target_space;                     // basis of the target when it has one
    std::size_t max_columns = 50'000;
};

// Symmetric-pair action on a matrix family: k is sp(m) or so(m) acting
// by commutator on the family space and on the target. Verifies at
// construction that the action closes on every carrier.
PairSpec make_matrix_pair(const Family& family, TargetKind target, const Budgets& budgets = {});

// The sphere pair: so(2n-1) acting on column vectors C^{2n-1}; targets
// are the trivial module, the vectors themselves or the adjoint.
PairSpec make_sphere_pair(std::size_t n, TargetKind target, const Budgets& budgets = {});

// The operator of one generator on degree-k forms with values in the
// target: negative dual derivation on the form slots plus the target
// action. Columns are indexed by (subset in colex order, target index).
SparseOperator action_operator(const PairSpec& pair, std::size_t gen, std::size_t degree);

// Number of columns of that operator.
std::size_t block_columns(const PairSpec& pair, std::size_t degree);

// Kernel dimension of the joint action in one degree; nullopt when the
// block exceeds the column budget (the oracle never approximates).
std::optional<std::size_t> invariant_dimension(const PairSpec& pair, std::size_t degree);

struct OracleTable {
    std::map<std::size_t, std::size_t> dims;  // degree -> kernel dimension
    std::vector<std::size_t> skipped;         // degrees over budget
};

OracleTable invariant_table(const PairSpec& pair);

// Coefficient vector of a form in the pair's (subset, target-basis)
// indexing, suitable for feeding to the action operators.
std::vector<Rational> pair_coefficient_vector(const PairSpec& pair, const AltForm& form);

bool annihilated_by_all(const PairSpec& pair, const AltForm& form);

// The explicit sphere covariants: two adjoint-valued and two
// vector-valued forms built from the determinant bracket and the dot
// product.
struct Covariant4 {
    AltForm omega1;  // degree 2n-3, adjoint-valued
    AltForm omega2;  // degree 2,    adjoint-valued
    AltForm theta1;  // degree 2n-2, vector-valued
    AltForm theta2;  // degree 1,    vector-valued
};

Covariant4 sphere_covariants(std::size_t n, const Budgets& budgets = {});

// Top-degree scalar form on C^{2n-1} with coefficient 1 on the full
// subset (the determinant).
AltForm determinant_invariant(std::size_t n);

}  // namespace skewform
