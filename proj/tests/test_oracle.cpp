#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "skewform/diagrams.hpp"
#include "skewform/linalg.hpp"
#include "skewform/oracle.hpp"

using namespace skewform;

namespace {

void check_against_diagrams(const Family& f, TargetKind target, CountKind kind) {
    PairSpec pair = make_matrix_pair(f, target);
    OracleTable t = invariant_table(pair);
    auto want = kind == CountKind::invariants ? invariant_dims(f) : covariant_dims(f);
    for (const auto& [deg, dim] : t.dims) {
        const std::size_t expect = want.count(deg) ? want.at(deg) : 0;
        CHECK(dim == expect);
    }
    for (const auto& [deg, expect] : want)
        if (std::find(t.skipped.begin(), t.skipped.end(), deg) == t.skipped.end())
            CHECK(t.dims.at(deg) == expect);
}

}  // namespace

TEST_CASE("degree-0 trivial-target operator is zero") {
    PairSpec pair = make_matrix_pair({FamilyKind::sympl_plus, 4}, TargetKind::trivial);
    for (std::size_t g = 0; g < pair.k_generators.size(); ++g)
        CHECK(action_operator(pair, g, 0).triples().empty());
}

TEST_CASE("degree-1 sphere operators are the generators themselves") {
    PairSpec pair = make_sphere_pair(2, TargetKind::trivial);
    for (std::size_t g = 0; g < pair.k_generators.size(); ++g) {
        RatMatrix op = to_dense(action_operator(pair, g, 1));
        CHECK(op == -pair.k_generators[g].transpose());
    }
}

TEST_CASE("action operators satisfy the bracket relation") {
    PairSpec pair = make_matrix_pair({FamilyKind::sympl_plus, 4}, TargetKind::p_space);
    SpacePtr span = make_space({FamilyKind::sympl_minus, 4});
    for (std::size_t degree : {std::size_t{1}, std::size_t{2}}) {
        for (auto [gi, gj] : {std::pair<std::size_t, std::size_t>{0, 4},
                              std::pair<std::size_t, std::size_t>{1, 7},
                              std::pair<std::size_t, std::size_t>{2, 9}}) {
            RatMatrix bracket = commutator(pair.k_generators[gi], pair.k_generators[gj]);
            auto coords = expand_in_basis(*span, bracket);
            REQUIRE(coords);
            // op([g,h]) as a combination of the generator operators
            RatMatrix lhs(block_columns(pair, degree), block_columns(pair, degree));
            for (std::size_t g = 0; g < pair.k_generators.size(); ++g) {
                // pair generators are reordered, so match by matrix
                auto pos = expand_in_basis(*span, pair.k_generators[g]);
                REQUIRE(pos);
                Rational c;
                for (std::size_t i = 0; i < coords->size(); ++i)
                    c += (*coords)[i] * (*pos)[i];
                // accumulate c * op_g  (dense, spaces are small here)
                if (!c.is_zero()) {
                    RatMatrix og = to_dense(action_operator(pair, g, degree));
                    lhs += c * og;
                }
            }
            RatMatrix oi = to_dense(action_operator(pair, gi, degree));
            RatMatrix oj = to_dense(action_operator(pair, gj, degree));
            CHECK(lhs == commutator(oi, oj));
        }
    }
}

TEST_CASE("invariant dimensions match the diagram counts, small families") {
    check_against_diagrams({FamilyKind::sympl_plus, 4}, TargetKind::trivial,
                           CountKind::invariants);
    check_against_diagrams({FamilyKind::sympl_plus, 4}, TargetKind::full_matrix,
                           CountKind::covariants);
    check_against_diagrams({FamilyKind::sympl_minus, 2}, TargetKind::full_matrix,
                           CountKind::covariants);
    check_against_diagrams({FamilyKind::orth_minus, 3}, TargetKind::trivial,
                           CountKind::invariants);
    check_against_diagrams({FamilyKind::orth_minus, 3}, TargetKind::full_matrix,
                           CountKind::covariants);
    check_against_diagrams({FamilyKind::orth_plus, 3}, TargetKind::full_matrix,
                           CountKind::covariants);
}

TEST_CASE("column budget skips instead of approximating") {
    Budgets tiny;
    tiny.max_columns = 10;
    PairSpec pair = make_matrix_pair({FamilyKind::sympl_plus, 4}, TargetKind::trivial, tiny);
    CHECK_FALSE(invariant_dimension(pair, 3).has_value());
    OracleTable t = invariant_table(pair);
    CHECK(!t.skipped.empty());
}

TEST_CASE("sphere covariants at n = 2") {
    Covariant4 cov = sphere_covariants(2);
    CHECK(cov.omega1.degree() == 1);
    CHECK(cov.omega2.degree() == 2);
    CHECK(cov.theta1.degree() == 2);
    CHECK(cov.theta2.degree() == 1);

    PairSpec adj = make_sphere_pair(2, TargetKind::k_adjoint);
    PairSpec vec = make_sphere_pair(2, TargetKind::p_space);
    CHECK(annihilated_by_all(adj, cov.omega1));
    CHECK(annihilated_by_all(adj, cov.omega2));
    CHECK(annihilated_by_all(vec, cov.theta1));
    CHECK(annihilated_by_all(vec, cov.theta2));

    // theta2 is the identity covariant
    CHECK(cov.theta2.table().size() == 3);

    // the four span 2 + 2 dimensions
    OracleTable ta = invariant_table(adj);
    std::size_t total = 0;
    for (auto& [deg, dim] : ta.dims)
        total += dim;
    CHECK(total == 2);
    CHECK(ta.dims.at(1) == 1);
    CHECK(ta.dims.at(2) == 1);
    OracleTable tv = invariant_table(vec);
    total = 0;
    for (auto& [deg, dim] : tv.dims)
        total += dim;
    CHECK(total == 2);

    // joint rank 4: the four live in distinct (degree, target) blocks,
    // so it reduces to each coefficient vector being nonzero
    auto nonzero = [](const std::vector<Rational>& v) {
        for (const auto& x : v)
            if (!x.is_zero())
                return true;
        return false;
    };
    CHECK(nonzero(pair_coefficient_vector(adj, cov.omega1)));
    CHECK(nonzero(pair_coefficient_vector(adj, cov.omega2)));
    CHECK(nonzero(pair_coefficient_vector(vec, cov.theta1)));
    CHECK(nonzero(pair_coefficient_vector(vec, cov.theta2)));
}

TEST_CASE("sphere covariants at n = 3") {
    Covariant4 cov = sphere_covariants(3);
    CHECK(cov.omega1.degree() == 3);
    CHECK(cov.theta1.degree() == 4);
    PairSpec adj = make_sphere_pair(3, TargetKind::k_adjoint);
    PairSpec vec = make_sphere_pair(3, TargetKind::p_space);
    CHECK(annihilated_by_all(adj, cov.omega1));
    CHECK(annihilated_by_all(adj, cov.omega2));
    CHECK(annihilated_by_all(vec, cov.theta1));
    CHECK(annihilated_by_all(vec, cov.theta2));
    OracleTable ta = invariant_table(adj);
    std::size_t total = 0;
    for (auto& [deg, dim] : ta.dims)
        total += dim;
    CHECK(total == 2);
}

TEST_CASE("determinant invariant") {
    AltForm p = determinant_invariant(2);
    CHECK(p.degree() == 3);
    CHECK(p.table().size() == 1);
    CHECK(wedge(p, p).is_zero());
    PairSpec triv = make_sphere_pair(2, TargetKind::trivial);
    CHECK(annihilated_by_all(triv, p));
}

TEST_CASE("sphere pair needs n >= 2") {
    CHECK_THROWS(make_sphere_pair(1, TargetKind::trivial));
    CHECK_THROWS(sphere_covariants(1));
}

TEST_CASE("even orthogonal sizes run through the kernel oracle only") {
    PairSpec pair = make_matrix_pair({FamilyKind::orth_minus, 4}, TargetKind::trivial);
    OracleTable t = invariant_table(pair);
    std::size_t total = 0;
    for (auto& [deg, dim] : t.dims)
        total += dim;
    // so(4) splits into two commuting factors; each contributes its own
    // top invariant alongside 1 and the full volume form.
    CHECK(total == 4);
    CHECK(t.dims.at(3) == 2);
}
