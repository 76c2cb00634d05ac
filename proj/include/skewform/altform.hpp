#pragma once

#include "skewform/spaces.hpp"

#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace skewform {

// Degree-k alternating multilinear maps on a based space, stored as a
// sparse table from k-element subsets of the basis (bitmask keys) to
// coefficients. Scalar-valued forms carry 1x1 coefficient blocks so
// that scalar and matrix values share one code path. Absent keys are
// zero; tables are pruned after every operation, so is_zero() is just
// emptiness.
class AltForm {
public:
    using Mask = std::uint32_t;
    using Table = std::map<Mask, RatMatrix>;

    AltForm() = default;
    AltForm(SpacePtr space, std::size_t degree, std::size_t value_rows, std::size_t value_cols)
        : space_(std::move(space)), degree_(degree), vrows_(value_rows), vcols_(value_cols) {}

    static AltForm zero(SpacePtr space, std::size_t degree, std::size_t value_rows,
                        std::size_t value_cols) {
        return AltForm(std::move(space), degree, value_rows, value_cols);
    }

    const SpacePtr& space() const { return space_; }
    std::size_t degree() const { return degree_; }
    std::size_t value_rows() const { return vrows_; }
    std::size_t value_cols() const { return vcols_; }
    bool scalar_valued() const { return vrows_ == 1 && vcols_ == 1; }
    const Table& table() const { return table_; }

    bool is_zero() const { return table_.empty(); }

    // Accumulate into a coefficient; drops the key if the sum vanishes.
    void accumulate(Mask key, const RatMatrix& coeff);
    const RatMatrix* coeff(Mask key) const;

    // Takes ownership of a fully built table, pruning zero entries;
    // node moves only, no coefficient copies.
    void adopt_table(Table&& table);

    bool same_shape(const AltForm& o) const {
        return degree_ == o.degree_ && vrows_ == o.vrows_ && vcols_ == o.vcols_ &&
               space_->label == o.space_->label;
    }

    friend bool operator==(const AltForm& a, const AltForm& b) {
        return a.same_shape(b) && a.table_ == b.table_;
    }
    friend bool operator!=(const AltForm& a, const AltForm& b) { return !(a == b); }

private:
    SpacePtr space_;
    std::size_t degree_ = 0;
    std::size_t vrows_ = 1, vcols_ = 1;
    Table table_;
};

struct EvalTuple {
    // One coordinate vector (in the space's basis) per form argument.
    std::vector<std::vector<Rational>> vectors;
};

// Thrown when an operation would exceed the configured table budget.
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// sign of the (S1, S2) shuffle: parity of pairs a in S1, b in S2 with a > b.
int shuffle_sign(AltForm::Mask s1, AltForm::Mask s2);

// All masks with k bits among d, ascending.
std::vector<AltForm::Mask> subset_masks(std::size_t d, std::size_t k);
std::vector<std::size_t> mask_indices(AltForm::Mask m);

// The identity map of the space as a degree-1 matrix-valued form: the
// coefficient at {i} is the i-th basis matrix.
AltForm generic_element(const SpacePtr& space);

// Exterior product with the shuffle normalization. Coefficients of the
// left factor multiply on the left; scalar blocks act by scaling.
// wedge() may parallelize the coefficient accumulation; wedge_serial is
// the reference implementation, and the two agree exactly (rational
// arithmetic has no rounding, so the reduction order is immaterial).
AltForm wedge_serial(const AltForm& g, const AltForm& h);
AltForm wedge(const AltForm& g, const AltForm& h);

AltForm add(const AltForm& a, const AltForm& b);
AltForm scalar_multiply(const Rational& s, const AltForm& a);

// Entrywise trace of a square-matrix-valued form.
AltForm trace_form(const AltForm& f);

// Multilinear evaluation: sum over k-subsets of det(coordinate minor)
// times the coefficient. Alternating by construction.
RatMatrix evaluate(const AltForm& f, const EvalTuple& tuple);

// Deterministic flattening over (subset ascending, entry row-major).
// Same-length vectors for equal (space, degree, value shape).
std::vector<Rational> coefficient_vector(const AltForm& f);

/*
 * Wedge powers of the generic element, memoized per space: X^k is built
 * as X^{k-1} ^ X, so every lower power is reused by the trace
 * generators and relation checks. power(0) is the empty-subset form
 * with identity coefficient. A cumulative table-size estimate guards
 * against runaway spaces; force callers pass a larger budget.
 */
class PowerCache {
public:
    explicit PowerCache(SpacePtr space, std::size_t max_table_entries = 2'000'000)
        : space_(std::move(space)), budget_(max_table_entries) {}

    const SpacePtr& space() const { return space_; }
    std::size_t budget() const { return budget_; }

    // Estimated entries needed for all powers up to k.
    static std::size_t estimate_entries(const MatrixSpaceSpec& space, std::size_t k);

    const AltForm& power(std::size_t k);

private:
    SpacePtr space_;
    std::size_t budget_;
    std::vector<AltForm> powers_;
    std::mutex mu_;
};

}  // namespace skewform
