#include "skewform/spaces.hpp"

#include "skewform/linalg.hpp"

#include <stdexcept>

namespace skewform {

std::size_t Family::half() const {
    if (is_symplectic())
        return m / 2;
    if (is_orthogonal())
        return (m - 1) / 2;
    return m;
}

std::string Family::name() const {
    switch (kind) {
        case FamilyKind::full: return "full";
        case FamilyKind::sympl_plus: return "sympl-plus";
        case FamilyKind::sympl_minus: return "sympl-minus";
        case FamilyKind::orth_plus: return "orth-plus";
        case FamilyKind::orth_minus: return "orth-minus";
        case FamilyKind::coords: return "coords";
    }
    return "?";
}

Family family_from_name(const std::string& name, std::size_t m) {
    if (name == "full") return {FamilyKind::full, m};
    if (name == "sympl-plus") return {FamilyKind::sympl_plus, m};
    if (name == "sympl-minus") return {FamilyKind::sympl_minus, m};
    if (name == "orth-plus") return {FamilyKind::orth_plus, m};
    if (name == "orth-minus") return {FamilyKind::orth_minus, m};
    throw std::invalid_argument("unknown family '" + name + "'");
}

RatMatrix symplectic_J(std::size_t m) {
    if (m % 2 != 0)
        throw std::invalid_argument("symplectic_J: size must be even");
    const std::size_t n = m / 2;
    RatMatrix j(m, m);
    for (std::size_t i = 0; i < n; ++i) {
        j.at(i, n + i) = 1;
        j.at(n + i, i) = -1;
    }
    return j;
}

RatMatrix symplectic_transpose(const RatMatrix& a) {
    if (!a.is_square() || a.rows() % 2 != 0)
        throw std::invalid_argument("symplectic_transpose: even square matrix required");
    const RatMatrix j = symplectic_J(a.rows());
    return -(j * a.transpose() * j);
}

namespace {

std::vector<RatMatrix> full_basis(std::size_t m) {
    std::vector<RatMatrix> b;
    b.reserve(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            b.push_back(RatMatrix::elementary(m, i, j));
    return b;
}

std::vector<RatMatrix> orth_minus_basis(std::size_t m) {
    std::vector<RatMatrix> b;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            RatMatrix a(m, m);
            a.at(i, j) = 1;
            a.at(j, i) = -1;
            b.push_back(std::move(a));
        }
    return b;
}

std::vector<RatMatrix> orth_plus_basis(std::size_t m) {
    std::vector<RatMatrix> b;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            RatMatrix a(m, m);
            if (i == j) {
                a.at(i, i) = 1;
            } else {
                a.at(i, j) = 1;
                a.at(j, i) = 1;
            }
            b.push_back(std::move(a));
        }
    return b;
}

// A -> A J^{-1} carries skew matrices onto M+ and symmetric ones onto
// M-; transporting the orth bases keeps integer entries and an order
// aligned with the orthogonal case.
std::vector<RatMatrix> sympl_basis(std::size_t m, bool plus) {
    RatMatrix jinv = -symplectic_J(m);  // J^2 = -1
    std::vector<RatMatrix> src = plus ? orth_minus_basis(m) : orth_plus_basis(m);
    std::vector<RatMatrix> b;
    b.reserve(src.size());
    for (const auto& w : src)
        b.push_back(w * jinv);
    return b;
}

std::vector<RatMatrix> coords_basis(std::size_t m) {
    std::vector<RatMatrix> b;
    for (std::size_t i = 0; i < m; ++i) {
        RatMatrix e(m, 1);
        e.at(i, 0) = 1;
        b.push_back(std::move(e));
    }
    return b;
}

}  // namespace

bool family_member(const Family& family, const RatMatrix& a) {
    switch (family.kind) {
        case FamilyKind::full:
            return a.is_square() && a.rows() == family.m;
        case FamilyKind::sympl_plus:
            return symplectic_transpose(a) == a;
        case FamilyKind::sympl_minus:
            return symplectic_transpose(a) == -a;
        case FamilyKind::orth_plus:
            return a.transpose() == a;
        case FamilyKind::orth_minus:
            return a.transpose() == -a;
        case FamilyKind::coords:
            return a.cols() == 1 && a.rows() == family.m;
    }
    return false;
}

SpacePtr make_space(const Family& family, bool force, std::size_t max_dim) {
    if (family.is_symplectic() && family.m % 2 != 0)
        throw std::invalid_argument("symplectic family needs even ambient size, got m=" +
                                    std::to_string(family.m));
    // 1x1 matrix coefficients are indistinguishable from scalars in the
    // form calculus, and every family is degenerate there anyway.
    if (family.kind != FamilyKind::coords && family.m < 2)
        throw std::invalid_argument("matrix families need ambient size >= 2");

    auto spec = std::make_shared<MatrixSpaceSpec>();
    spec->family = family;
    spec->ambient = family.m;
    spec->label = family.name() + "(" + std::to_string(family.m) + ")";
    switch (family.kind) {
        case FamilyKind::full: spec->basis = full_basis(family.m); break;
        case FamilyKind::sympl_plus: spec->basis = sympl_basis(family.m, true); break;
        case FamilyKind::sympl_minus: spec->basis = sympl_basis(family.m, false); break;
        case FamilyKind::orth_plus: spec->basis = orth_plus_basis(family.m); break;
        case FamilyKind::orth_minus: spec->basis = orth_minus_basis(family.m); break;
        case FamilyKind::coords: spec->basis = coords_basis(family.m); break;
    }
    if (family.is_orthogonal() && family.m % 2 == 0)
        spec->structure_supported = false;

    if (spec->dim() > max_dim && !force)
        throw std::invalid_argument("space " + spec->label + " has dimension " +
                                    std::to_string(spec->dim()) + " > " + std::to_string(max_dim) +
                                    " (pass force to lift the guardrail)");
    return spec;
}

LieAlgebraSpec lie_generators(const std::string& kind, std::size_t m) {
    LieAlgebraSpec spec;
    spec.kind = kind;
    spec.m = m;
    if (kind == "sp") {
        spec.generators = make_space({FamilyKind::sympl_minus, m}, true)->basis;
    } else if (kind == "so") {
        spec.generators = make_space({FamilyKind::orth_minus, m}, true)->basis;
    } else if (kind == "gl") {
        spec.generators = make_space({FamilyKind::full, m}, true)->basis;
    } else {
        throw std::invalid_argument("lie_generators: unknown kind '" + kind + "'");
    }
    return spec;
}

RatMatrix ad_action(const RatMatrix& g, const RatMatrix& a) {
    if (g.rows() != a.rows() || g.cols() != a.cols() || !g.is_square())
        throw std::invalid_argument("ad_action: size mismatch");
    return commutator(g, a);
}

Rational trace(const RatMatrix& a) {
    return a.trace();
}

RatMatrix project_traceless(const RatMatrix& a) {
    if (!a.is_square())
        throw std::invalid_argument("project_traceless: matrix not square");
    RatMatrix r = a;
    Rational t = a.trace() / Rational(static_cast<long>(a.rows()));
    for (std::size_t i = 0; i < a.rows(); ++i)
        r.at(i, i) -= t;
    return r;
}

std::optional<std::vector<Rational>> expand_in_basis(const MatrixSpaceSpec& space, const RatMatrix& a) {
    // The canonical bases have pairwise disjoint supports, so the
    // coordinate is an entrywise dot product; the recomposition check
    // catches anything outside the span.
    std::vector<Rational> coords(space.dim());
    for (std::size_t i = 0; i < space.dim(); ++i) {
        const RatMatrix& b = space.basis[i];
        Rational dot, norm;
        for (std::size_t r = 0; r < b.rows(); ++r)
            for (std::size_t c = 0; c < b.cols(); ++c) {
                const Rational& v = b.at(r, c);
                if (v.is_zero())
                    continue;
                dot += v * a.at(r, c);
                norm += v * v;
            }
        coords[i] = dot / norm;
    }
    RatMatrix recomposed(a.rows(), a.cols());
    for (std::size_t i = 0; i < space.dim(); ++i)
        if (!coords[i].is_zero())
            recomposed += coords[i] * space.basis[i];
    if (recomposed != a)
        return std::nullopt;
    return coords;
}

}  // namespace skewform
