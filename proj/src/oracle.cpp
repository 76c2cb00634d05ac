#include "skewform/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace skewform {

namespace {

bool is_diagonal(const RatMatrix& m) {
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (r != c && !m.at(r, c).is_zero())
                return false;
    return true;
}

bool is_rotation_pair(const RatMatrix& m, std::size_t a, std::size_t b) {
    RatMatrix r(m.rows(), m.cols());
    r.at(a, b) = 1;
    r.at(b, a) = -1;
    return m == r;
}

// Generators reordered so a commuting grading set leads: the diagonal
// Cartan elements for sp, the disjoint rotations for so. The joint
// kernel does not depend on the order; the prefix just makes the first
// intersection cheap (diagonal or small-block operators).
std::pair<std::vector<RatMatrix>, std::size_t> graded_generator_order(const std::string& kind,
                                                                      std::size_t m) {
    std::vector<RatMatrix> gens = lie_generators(kind, m).generators;
    std::vector<RatMatrix> head, tail;
    if (kind == "sp") {
        for (auto& g : gens)
            (is_diagonal(g) ? head : tail).push_back(g);
    } else if (kind == "so") {
        std::vector<bool> taken(gens.size(), false);
        for (std::size_t t = 0; 2 * t + 1 < m; ++t)
            for (std::size_t i = 0; i < gens.size(); ++i)
                if (!taken[i] && is_rotation_pair(gens[i], 2 * t, 2 * t + 1)) {
                    head.push_back(gens[i]);
                    taken[i] = true;
                }
        for (std::size_t i = 0; i < gens.size(); ++i)
            if (!taken[i])
                tail.push_back(gens[i]);
    } else {
        tail = gens;
    }
    const std::size_t prefix = head.size();
    head.insert(head.end(), tail.begin(), tail.end());
    return {std::move(head), prefix};
}

ActionMatrix expand_action(const MatrixSpaceSpec& carrier,
                           const std::function<RatMatrix(const RatMatrix&)>& act) {
    ActionMatrix am;
    am.dim = carrier.dim();
    am.cols.resize(am.dim);
    for (std::size_t j = 0; j < am.dim; ++j) {
        RatMatrix image = act(carrier.basis[j]);
        auto coords = expand_in_basis(carrier, image);
        if (!coords)
            throw std::logic_error("action does not close on " + carrier.label);
        for (std::size_t i = 0; i < coords->size(); ++i)
            if (!(*coords)[i].is_zero())
                am.cols[j].emplace_back(i, (*coords)[i]);
    }
    return am;
}

std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n)
        return 0;
    k = std::min(k, n - k);
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

// Colex rank of a subset given as a bitmask; matches the ascending
// numeric order produced by subset_masks.
std::size_t colex_rank(AltForm::Mask mask) {
    std::size_t rank = 0, i = 1;
    for (auto idx : mask_indices(mask))
        rank += binomial(idx, i++);
    return rank;
}

}  // namespace

PairSpec make_matrix_pair(const Family& family, TargetKind target, const Budgets& budgets) {
    PairSpec pair;
    pair.p_space = make_space(family, budgets.force, budgets.effective_dim());
    pair.max_columns = budgets.max_columns;

    const std::string kind = family.is_symplectic() ? "sp" : family.is_orthogonal() ? "so" : "gl";
    auto [gens, prefix] = graded_generator_order(kind, family.m);
    pair.k_generators = std::move(gens);
    pair.torus_prefix = prefix;
    pair.label = kind + "(" + std::to_string(family.m) + ")/" + pair.p_space->label;
    pair.target = target;

    for (const auto& g : pair.k_generators)
        pair.p_actions.push_back(
            expand_action(*pair.p_space, [&](const RatMatrix& v) { return ad_action(g, v); }));

    auto set_matrix_target = [&](const Family& tf) {
        pair.target_space = make_space(tf, true);
        pair.target_dim = pair.target_space->dim();
        for (const auto& g : pair.k_generators)
            pair.target_actions.push_back(expand_action(
                *pair.target_space, [&](const RatMatrix& v) { return ad_action(g, v); }));
    };
    switch (target) {
        case TargetKind::trivial:
            pair.target_dim = 1;
            break;
        case TargetKind::p_space:
            set_matrix_target(family);
            break;
        case TargetKind::k_adjoint:
            set_matrix_target({family.is_symplectic() ? FamilyKind::sympl_minus
                                                      : FamilyKind::orth_minus,
                               family.m});
            break;
        case TargetKind::full_matrix:
            set_matrix_target({FamilyKind::full, family.m});
            break;
    }
    return pair;
}

PairSpec make_sphere_pair(std::size_t n, TargetKind target, const Budgets& budgets) {
    if (n < 2)
        throw std::invalid_argument("make_sphere_pair: need n >= 2");
    const std::size_t d = 2 * n - 1;
    PairSpec pair;
    pair.p_space = make_space({FamilyKind::coords, d}, budgets.force, budgets.effective_dim());
    pair.max_columns = budgets.max_columns;
    auto [gens, prefix] = graded_generator_order("so", d);
    pair.k_generators = std::move(gens);
    pair.torus_prefix = prefix;
    pair.label = "so(" + std::to_string(d) + ")/C^" + std::to_string(d);
    pair.target = target;

    for (const auto& g : pair.k_generators)
        pair.p_actions.push_back(
            expand_action(*pair.p_space, [&](const RatMatrix& v) { return g * v; }));

    switch (target) {
        case TargetKind::trivial:
            pair.target_dim = 1;
            break;
        case TargetKind::p_space:
            pair.target_space = pair.p_space;
            pair.target_dim = d;
            for (const auto& g : pair.k_generators)
                pair.target_actions.push_back(
                    expand_action(*pair.p_space, [&](const RatMatrix& v) { return g * v; }));
            break;
        case TargetKind::k_adjoint:
            pair.target_space = make_space({FamilyKind::orth_minus, d}, true);
            pair.target_dim = pair.target_space->dim();
            for (const auto& g : pair.k_generators)
                pair.target_actions.push_back(expand_action(
                    *pair.target_space, [&](const RatMatrix& v) { return ad_action(g, v); }));
            break;
        case TargetKind::full_matrix:
            throw std::invalid_argument("sphere pair: full matrix target is not meaningful");
    }
    return pair;
}

std::size_t block_columns(const PairSpec& pair, std::size_t degree) {
    return binomial(pair.p_space->dim(), degree) * pair.target_dim;
}

SparseOperator action_operator(const PairSpec& pair, std::size_t gen, std::size_t degree) {
    const std::size_t d = pair.p_space->dim();
    if (degree > d)
        throw std::invalid_argument("action_operator: degree above the space dimension");
    const std::size_t u_dim = pair.target_dim;
    const std::size_t cols = binomial(d, degree) * u_dim;
    SparseOperator op(cols, cols);

    const ActionMatrix& act = pair.p_actions.at(gen);
    const ActionMatrix* tact =
        pair.target_actions.empty() ? nullptr : &pair.target_actions.at(gen);

    for (AltForm::Mask mask : subset_masks(d, degree)) {
        const std::size_t row_block = colex_rank(mask) * u_dim;
        // Dual derivation: -(sum over slots of the action on that slot).
        for (auto t : mask_indices(mask)) {
            for (const auto& [b, c] : act.cols[t]) {
                if (b == t) {
                    for (std::size_t u = 0; u < u_dim; ++u)
                        op.add(row_block + u, row_block + u, -c);
                    continue;
                }
                const AltForm::Mask without = mask & ~(AltForm::Mask{1} << t);
                if (without & (AltForm::Mask{1} << b))
                    continue;  // repeated slot
                const AltForm::Mask src = without | (AltForm::Mask{1} << b);
                const AltForm::Mask lo = AltForm::Mask{1} << std::min(b, t);
                const AltForm::Mask hi = AltForm::Mask{1} << std::max(b, t);
                const int between = std::popcount(without & (hi - 1) & ~(lo * 2 - 1));
                const Rational w = (between % 2 == 0) ? -c : c;
                const std::size_t col_block = colex_rank(src) * u_dim;
                for (std::size_t u = 0; u < u_dim; ++u)
                    op.add(row_block + u, col_block + u, w);
            }
        }
        // Target action.
        if (tact != nullptr)
            for (std::size_t u = 0; u < u_dim; ++u)
                for (const auto& [i, c] : tact->cols[u])
                    op.add(row_block + i, row_block + u, c);
    }
    op.finalize();
    return op;
}

std::optional<std::size_t> invariant_dimension(const PairSpec& pair, std::size_t degree) {
    if (block_columns(pair, degree) > pair.max_columns)
        return std::nullopt;
    KernelBasis k = joint_kernel_lazy(
        pair.k_generators.size(),
        [&](std::size_t g) { return action_operator(pair, g, degree); }, pair.torus_prefix);
    return k.dim();
}

OracleTable invariant_table(const PairSpec& pair) {
    OracleTable table;
    for (std::size_t k = 0; k <= pair.p_space->dim(); ++k) {
        auto dim = invariant_dimension(pair, k);
        if (dim)
            table.dims[k] = *dim;
        else
            table.skipped.push_back(k);
    }
    return table;
}

std::vector<Rational> pair_coefficient_vector(const PairSpec& pair, const AltForm& form) {
    const std::size_t d = pair.p_space->dim();
    const std::size_t u_dim = pair.target_dim;
    std::vector<Rational> vec(binomial(d, form.degree()) * u_dim);
    for (const auto& [mask, coeff] : form.table()) {
        const std::size_t base = colex_rank(mask) * u_dim;
        if (pair.target == TargetKind::trivial) {
            vec[base] = coeff.at(0, 0);
            continue;
        }
        auto coords = expand_in_basis(*pair.target_space, coeff);
        if (!coords)
            throw std::invalid_argument("pair_coefficient_vector: value outside the target");
        for (std::size_t u = 0; u < u_dim; ++u)
            vec[base + u] = (*coords)[u];
    }
    return vec;
}

bool annihilated_by_all(const PairSpec& pair, const AltForm& form) {
    std::vector<Rational> vec = pair_coefficient_vector(pair, form);
    for (std::size_t g = 0; g < pair.k_generators.size(); ++g) {
        SparseOperator op = action_operator(pair, g, form.degree());
        for (const auto& y : op.apply(vec))
            if (!y.is_zero())
                return false;
    }
    return true;
}

namespace {

int permutation_sign_of(std::vector<std::size_t> perm) {
    int sign = 1;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j])
                sign = -sign;
    return sign;
}

// epsilon(S asc, rest asc): sign of the full-index permutation.
int complement_sign(AltForm::Mask mask, std::size_t d) {
    std::vector<std::size_t> perm = mask_indices(mask);
    for (std::size_t i = 0; i < d; ++i)
        if (!(mask & (AltForm::Mask{1} << i)))
            perm.push_back(i);
    return permutation_sign_of(std::move(perm));
}

RatMatrix skew_pair_matrix(std::size_t d, std::size_t i, std::size_t j) {
    RatMatrix m(d, d);
    m.at(i, j) = 1;
    m.at(j, i) = -1;
    return m;
}

}  // namespace

Covariant4 sphere_covariants(std::size_t n, const Budgets& budgets) {
    if (n < 2)
        throw std::invalid_argument("sphere_covariants: need n >= 2");
    const std::size_t d = 2 * n - 1;
    SpacePtr v = make_space({FamilyKind::coords, d}, budgets.force, budgets.effective_dim());

    Covariant4 cov{
        AltForm(v, 2 * n - 3, d, d),
        AltForm(v, 2, d, d),
        AltForm(v, 2 * n - 2, d, 1),
        AltForm(v, 1, d, 1),
    };

    // omega1: bracket of the arguments with a dual pair of slots, valued
    // in the skew matrices. The coefficient at S is the signed
    // complement pair.
    for (AltForm::Mask mask : subset_masks(d, 2 * n - 3)) {
        auto rest = mask_indices(~mask & ((AltForm::Mask{1} << d) - 1));
        const std::size_t i = rest[0], j = rest[1];
        const int sign = complement_sign(mask, d);
        RatMatrix valm = skew_pair_matrix(d, i, j);
        cov.omega1.accumulate(mask, sign > 0 ? valm : -valm);
    }

    // omega2: (u, w) -> u ^ w as a skew matrix.
    for (AltForm::Mask mask : subset_masks(d, 2)) {
        auto ij = mask_indices(mask);
        cov.omega2.accumulate(mask, skew_pair_matrix(d, ij[0], ij[1]));
    }

    // theta1: determinant against one free slot.
    for (AltForm::Mask mask : subset_masks(d, 2 * n - 2)) {
        auto rest = mask_indices(~mask & ((AltForm::Mask{1} << d) - 1));
        const std::size_t i = rest[0];
        const int sign = complement_sign(mask, d);
        RatMatrix e(d, 1);
        e.at(i, 0) = Rational(sign);
        cov.theta1.accumulate(mask, e);
    }

    // theta2: the identity covariant from the dot product.
    cov.theta2 = generic_element(v);

    return cov;
}

AltForm determinant_invariant(std::size_t n) {
    const std::size_t d = 2 * n - 1;
    SpacePtr v = make_space({FamilyKind::coords, d});
    AltForm p(v, d, 1, 1);
    p.accumulate((AltForm::Mask{1} << d) - 1, RatMatrix::scalar1x1(Rational(1)));
    return p;
}

}  // namespace skewform
