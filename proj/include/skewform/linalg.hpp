#pragma once

#include "skewform/matrix.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace skewform {

/*
 * Exact rational linear algebra. Elimination is fraction-free
 * (Bareiss): rows are scaled to integers and every division along the
 * way is exact, which keeps intermediate growth at determinant size.
 * Pivoting is deterministic (first nonzero in row order), so ranks,
 * kernels and solutions are bit-reproducible.
 */

std::size_t rank(const RatMatrix& m);

// Basis of { x : M x = 0 }; each vector has length m.cols().
// dim = cols - rank, always.
std::vector<std::vector<Rational>> nullspace(const RatMatrix& m);

struct SolveResult {
    std::vector<Rational> x;
    bool unique = false;
};

// One exact solution of A x = b when consistent, with a uniqueness flag.
// Throws on dimension mismatch; returns nullopt when inconsistent.
std::optional<SolveResult> solve(const RatMatrix& a, const std::vector<Rational>& b);

/*
 * Sparse operator in triple form. Carrier for the Lie-algebra actions
 * on exterior-power bases, which are >95% zero. Triples are sorted by
 * (row, col) and duplicate positions are merged at construction.
 */
class SparseOperator {
public:
    struct Triple {
        std::size_t row, col;
        Rational value;
    };

    SparseOperator() : domain_(0), codomain_(0) {}
    SparseOperator(std::size_t codomain_dim, std::size_t domain_dim)
        : domain_(domain_dim), codomain_(codomain_dim) {}

    std::size_t domain_dim() const { return domain_; }
    std::size_t codomain_dim() const { return codomain_; }
    const std::vector<Triple>& triples() const { return triples_; }

    // Accumulates into (row, col); zeros are dropped by finalize().
    void add(std::size_t row, std::size_t col, const Rational& v);
    void finalize();
    bool finalized() const { return finalized_; }

    std::vector<Rational> apply(const std::vector<Rational>& x) const;

private:
    std::size_t domain_, codomain_;
    std::vector<Triple> triples_;
    bool finalized_ = true;
};

using SparseVec = std::vector<std::pair<std::size_t, Rational>>;  // sorted by index

struct KernelBasis {
    std::size_t ambient_dim = 0;
    std::vector<SparseVec> vectors;

    std::size_t dim() const { return vectors.size(); }
};

// Kernel of a sparse operator, computed per connected component of the
// column graph (columns linked through shared rows are independent of
// the rest). Tall components fall back to the Gram matrix M^t M, whose
// kernel over the rationals equals ker M.
KernelBasis nullspace(const SparseOperator& op);

std::size_t rank(const SparseOperator& op);

// Columns restricted to a subspace: result column j is op applied to
// basis vector j.
SparseOperator restrict_to(const SparseOperator& op, const KernelBasis& basis);

// outer . inner: expresses inner's coefficient vectors in the ambient
// space of outer.
KernelBasis compose(const KernelBasis& outer, const KernelBasis& inner);

SparseOperator vstack(const std::vector<const SparseOperator*>& ops);

// Common kernel of a family of operators on the same space. The first
// `stacked_prefix` operators (a commuting, weight-grading set when the
// caller has one) are intersected in a single component-wise pass;
// the rest are folded in one at a time on the shrinking subspace.
KernelBasis joint_kernel(const std::vector<SparseOperator>& ops, std::size_t stacked_prefix = 0);

// Same, with operators produced on demand so only a couple are alive at
// a time.
KernelBasis joint_kernel_lazy(std::size_t count,
                              const std::function<SparseOperator(std::size_t)>& make,
                              std::size_t stacked_prefix = 0);

RatMatrix to_dense(const SparseOperator& op);

}  // namespace skewform
