#pragma once

#include "skewform/matrix.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace skewform {

enum class FamilyKind {
    full,         // all m x m matrices
    sympl_plus,   // fixed by the symplectic transposition (m = 2n)
    sympl_minus,  // anti-fixed: the symplectic Lie algebra (m = 2n)
    orth_plus,    // symmetric under ordinary transposition
    orth_minus,   // antisymmetric: the orthogonal Lie algebra
    coords,       // column vectors C^m (carrier space for the sphere pair)
};

struct Family {
    FamilyKind kind;
    std::size_t m;  // ambient matrix size (or vector dimension for coords)

    // Half-size parameter: n with m = 2n for symplectic, m = 2n+1 for
    // the odd orthogonal structure theory.
    std::size_t half() const;
    bool is_plus() const { return kind == FamilyKind::sympl_plus || kind == FamilyKind::orth_plus; }
    bool is_symplectic() const { return kind == FamilyKind::sympl_plus || kind == FamilyKind::sympl_minus; }
    bool is_orthogonal() const { return kind == FamilyKind::orth_plus || kind == FamilyKind::orth_minus; }

    std::string name() const;  // "sympl-plus" etc., the CLI spelling
};

Family family_from_name(const std::string& name, std::size_t m);

/*
 * A named matrix subspace with a fixed ordered basis. The basis order
 * drives the subset indexing of every alternating form built on the
 * space, so it is part of the contract:
 *   full       E_ij, (i,j) lexicographic
 *   orth_minus E_ij - E_ji, i<j lexicographic
 *   orth_plus  pairs (i,j), i<=j lexicographic; E_ii on the diagonal,
 *              E_ij + E_ji off it
 *   sympl_*    the orth-type bases transported along A -> A J^{-1}
 *              (plus from orth_minus, minus from orth_plus)
 * All basis matrices have integer entries.
 */
struct MatrixSpaceSpec {
    Family family;
    std::size_t ambient = 0;             // m (value shape of generic elements)
    std::vector<RatMatrix> basis;
    std::string label;                    // e.g. "sympl-plus(2)"

    // Odd-orthogonal structure theorems need odd m; even m is accepted
    // for kernel computations only and flagged here.
    bool structure_supported = true;

    std::size_t dim() const { return basis.size(); }
};

using SpacePtr = std::shared_ptr<const MatrixSpaceSpec>;

// -J A^t J, the involution fixing M+ and negating M-. Throws on odd size.
RatMatrix symplectic_transpose(const RatMatrix& a);

// Block matrix (0 I; -I 0) of even size m.
RatMatrix symplectic_J(std::size_t m);

SpacePtr make_space(const Family& family, bool force = false, std::size_t max_dim = 24);

struct LieAlgebraSpec {
    std::string kind;  // "sp", "so", "gl"
    std::size_t m = 0;
    std::vector<RatMatrix> generators;
};

// Basis of sp(m) (m even), so(m) or gl(m) as matrices, in the canonical
// order of the matching space family.
LieAlgebraSpec lie_generators(const std::string& kind, std::size_t m);

RatMatrix ad_action(const RatMatrix& g, const RatMatrix& a);

Rational trace(const RatMatrix& a);
RatMatrix project_traceless(const RatMatrix& a);

// Does a satisfy the family's defining involution equation?
bool family_member(const Family& family, const RatMatrix& a);

// Coordinates of a in the space's basis, or nullopt if a is outside the
// span. Exact: the expansion is recomposed and compared entrywise.
std::optional<std::vector<Rational>> expand_in_basis(const MatrixSpaceSpec& space, const RatMatrix& a);

}  // namespace skewform
