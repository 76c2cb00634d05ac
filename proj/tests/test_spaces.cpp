#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "skewform/linalg.hpp"
#include "skewform/spaces.hpp"

using namespace skewform;

namespace {

// Deterministic small-integer matrix for involution identities.
RatMatrix pseudo_random(std::size_t m, unsigned seed) {
    RatMatrix a(m, m);
    unsigned long long s = seed;
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c) {
            s = s * 6364136223846793005ull + 1442695040888963407ull;
            a.at(r, c) = Rational(static_cast<long>((s >> 33) % 9) - 4);
        }
    return a;
}

RatMatrix stack_flat(const std::vector<RatMatrix>& mats) {
    const std::size_t m2 = mats.front().rows() * mats.front().cols();
    RatMatrix s(mats.size(), m2);
    for (std::size_t i = 0; i < mats.size(); ++i)
        for (std::size_t k = 0; k < m2; ++k)
            s.at(i, k) = mats[i].entries()[k];
    return s;
}

}  // namespace

TEST_CASE("symplectic transpose block formula") {
    // M = (A B; C D) |-> (D^t -B^t; -C^t A^t)
    RatMatrix m = pseudo_random(4, 7);
    RatMatrix s = symplectic_transpose(m);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            CHECK(s.at(i, j) == m.at(j + 2, i + 2));        // D^t
            CHECK(s.at(i, j + 2) == -m.at(j, i + 2));       // -B^t
            CHECK(s.at(i + 2, j) == -m.at(j + 2, i));       // -C^t
            CHECK(s.at(i + 2, j + 2) == m.at(j, i));        // A^t
        }
    CHECK(symplectic_transpose(RatMatrix::identity(4)) == RatMatrix::identity(4));
    CHECK(symplectic_transpose(s) == m);
    CHECK_THROWS(symplectic_transpose(RatMatrix::identity(3)));
}

TEST_CASE("transpose antihomomorphism and trace invariance") {
    RatMatrix a = pseudo_random(4, 3), b = pseudo_random(4, 11);
    CHECK(symplectic_transpose(a * b) ==
          symplectic_transpose(b) * symplectic_transpose(a));
    CHECK(trace(symplectic_transpose(a)) == trace(a));
    RatMatrix j = symplectic_J(4);
    CHECK(j * j == -RatMatrix::identity(4));
}

TEST_CASE("family dimensions") {
    CHECK(make_space({FamilyKind::sympl_plus, 4})->dim() == 6);
    CHECK(make_space({FamilyKind::sympl_minus, 4})->dim() == 10);
    CHECK(make_space({FamilyKind::orth_minus, 5})->dim() == 10);
    CHECK(make_space({FamilyKind::orth_plus, 5})->dim() == 15);
    CHECK(make_space({FamilyKind::full, 3})->dim() == 9);
    CHECK(make_space({FamilyKind::sympl_minus, 2})->dim() == 3);
    CHECK_THROWS(make_space({FamilyKind::sympl_plus, 5}));
    // Guardrail: orth_plus(7) has dim 28 > 24.
    CHECK_THROWS(make_space({FamilyKind::orth_plus, 7}));
    CHECK(make_space({FamilyKind::orth_plus, 7}, true)->dim() == 28);
}

TEST_CASE("bases satisfy the involution equations and are independent") {
    for (Family f : {Family{FamilyKind::sympl_plus, 4}, Family{FamilyKind::sympl_minus, 4},
                     Family{FamilyKind::orth_plus, 5}, Family{FamilyKind::orth_minus, 5}}) {
        SpacePtr s = make_space(f);
        for (const auto& b : s->basis)
            CHECK(family_member(f, b));
        CHECK(rank(stack_flat(s->basis)) == s->dim());
    }
}

TEST_CASE("sympl_plus basis maps to skew matrices under A -> AJ") {
    SpacePtr s = make_space({FamilyKind::sympl_plus, 4});
    RatMatrix j = symplectic_J(4);
    for (const auto& b : s->basis) {
        RatMatrix w = b * j;
        CHECK(w.transpose() == -w);
    }
}

TEST_CASE("full space splits into the two symplectic eigenspaces") {
    SpacePtr plus = make_space({FamilyKind::sympl_plus, 4});
    SpacePtr minus = make_space({FamilyKind::sympl_minus, 4});
    std::vector<RatMatrix> both = plus->basis;
    both.insert(both.end(), minus->basis.begin(), minus->basis.end());
    CHECK(both.size() == 16);
    CHECK(rank(stack_flat(both)) == 16);
}

TEST_CASE("sympl_minus(1) spans sl(2)") {
    SpacePtr s = make_space({FamilyKind::sympl_minus, 2});
    CHECK(s->dim() == 3);
    for (const auto& b : s->basis)
        CHECK(trace(b).is_zero());
    CHECK(rank(stack_flat(s->basis)) == 3);
}

TEST_CASE("lie generators close under bracket") {
    auto sp4 = lie_generators("sp", 4);
    CHECK(sp4.generators.size() == 10);
    SpacePtr span = make_space({FamilyKind::sympl_minus, 4});
    for (const auto& g : sp4.generators)
        for (const auto& h : sp4.generators)
            CHECK(expand_in_basis(*span, commutator(g, h)).has_value());

    auto so3 = lie_generators("so", 3);
    CHECK(so3.generators.size() == 3);
    for (const auto& g : so3.generators)
        CHECK(g.transpose() == -g);

    auto sp2 = lie_generators("sp", 2);
    CHECK(sp2.generators.size() == 3);
    CHECK_THROWS(lie_generators("su", 3));
}

TEST_CASE("ad action preserves the family and kills traces") {
    SpacePtr plus = make_space({FamilyKind::sympl_plus, 4});
    auto sp4 = lie_generators("sp", 4);
    for (const auto& g : sp4.generators)
        for (const auto& a : plus->basis) {
            RatMatrix r = ad_action(g, a);
            CHECK(family_member({FamilyKind::sympl_plus, 4}, r));
            CHECK(trace(r).is_zero());
        }
    RatMatrix d1(3, 3), d2(3, 3);
    d1.at(0, 0) = 1;
    d1.at(2, 2) = 5;
    d2.at(1, 1) = 7;
    CHECK(ad_action(d1, d2).is_zero());
    CHECK_THROWS(ad_action(d1, RatMatrix::identity(4)));
}

TEST_CASE("traceless projection") {
    RatMatrix a = pseudo_random(3, 5);
    RatMatrix p = project_traceless(a);
    CHECK(trace(p).is_zero());
    CHECK(project_traceless(p) == p);
    CHECK(project_traceless(RatMatrix::identity(3)).is_zero());
}

TEST_CASE("even orthogonal sizes are flagged") {
    SpacePtr s = make_space({FamilyKind::orth_minus, 4});
    CHECK(s->dim() == 6);
    CHECK_FALSE(s->structure_supported);
    CHECK(make_space({FamilyKind::orth_minus, 5})->structure_supported);
    CHECK_THROWS(make_space({FamilyKind::full, 1}));
}

TEST_CASE("expand_in_basis detects non-members") {
    SpacePtr minus = make_space({FamilyKind::orth_minus, 3});
    CHECK(expand_in_basis(*minus, minus->basis[0] - minus->basis[2]).has_value());
    CHECK_FALSE(expand_in_basis(*minus, RatMatrix::identity(3)).has_value());
}
