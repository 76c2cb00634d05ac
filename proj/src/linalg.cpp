#include "skewform/linalg.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace skewform {

namespace {

using IntRow = std::vector<Int>;
using IntMat = std::vector<IntRow>;

// Clears denominators row by row; row scaling changes neither the rank
// nor the kernel.
IntMat to_integer_rows(const RatMatrix& m) {
    IntMat a(m.rows(), IntRow(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Int l = 1;
        for (std::size_t c = 0; c < m.cols(); ++c)
            l = lcm(l, m.at(r, c).den());
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const Rational& v = m.at(r, c);
            a[r][c] = v.num() * (l / v.den());
        }
    }
    return a;
}

void divexact(Int& x, const Int& d) {
    mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
}

// Fraction-free row echelon form. Returns the rank; pivot_cols gets the
// pivot column of each echelon row. Pivot choice: first row with a
// nonzero entry in the leftmost unfinished column.
std::size_t bareiss_echelon(IntMat& a, std::vector<std::size_t>& pivot_cols) {
    const std::size_t nr = a.size();
    const std::size_t nc = nr ? a[0].size() : 0;
    Int prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < nc && r < nr; ++c) {
        std::size_t p = r;
        while (p < nr && sgn(a[p][c]) == 0)
            ++p;
        if (p == nr)
            continue;
        if (p != r)
            std::swap(a[p], a[r]);
        for (std::size_t i = r + 1; i < nr; ++i) {
            if (sgn(a[i][c]) == 0 && a[r][c] == prev)
                continue;  // row unchanged by the update
            for (std::size_t j = c + 1; j < nc; ++j) {
                a[i][j] = a[r][c] * a[i][j] - a[i][c] * a[r][j];
                divexact(a[i][j], prev);
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        pivot_cols.push_back(c);
        ++r;
    }
    return r;
}

// Kernel basis from an echelon form: one vector per free column, found
// by exact back substitution.
std::vector<std::vector<Rational>> kernel_from_echelon(const IntMat& a,
                                                       const std::vector<std::size_t>& pivot_cols,
                                                       std::size_t nc) {
    std::vector<bool> is_pivot(nc, false);
    for (auto c : pivot_cols)
        is_pivot[c] = true;

    std::vector<std::vector<Rational>> basis;
    for (std::size_t f = 0; f < nc; ++f) {
        if (is_pivot[f])
            continue;
        std::vector<Rational> x(nc);
        x[f] = 1;
        for (std::size_t ri = pivot_cols.size(); ri-- > 0;) {
            const std::size_t pc = pivot_cols[ri];
            if (pc > f)
                continue;  // echelon row touches only columns >= pc
            Rational s;
            for (std::size_t j = pc + 1; j < nc; ++j) {
                if (sgn(a[ri][j]) != 0 && !x[j].is_zero())
                    s += Rational(a[ri][j]) * x[j];
            }
            x[pc] = -s / Rational(a[ri][pc]);
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

std::vector<std::vector<Rational>> nullspace_int(IntMat a) {
    const std::size_t nc = a.empty() ? 0 : a[0].size();
    std::vector<std::size_t> pivot_cols;
    bareiss_echelon(a, pivot_cols);
    return kernel_from_echelon(a, pivot_cols, nc);
}

}  // namespace

std::size_t rank(const RatMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0)
        return 0;
    IntMat a = to_integer_rows(m);
    std::vector<std::size_t> pivot_cols;
    return bareiss_echelon(a, pivot_cols);
}

std::vector<std::vector<Rational>> nullspace(const RatMatrix& m) {
    if (m.cols() == 0)
        return {};
    if (m.rows() == 0) {
        std::vector<std::vector<Rational>> basis;
        for (std::size_t f = 0; f < m.cols(); ++f) {
            std::vector<Rational> x(m.cols());
            x[f] = 1;
            basis.push_back(std::move(x));
        }
        return basis;
    }
    return nullspace_int(to_integer_rows(m));
}

std::optional<SolveResult> solve(const RatMatrix& a, const std::vector<Rational>& b) {
    if (b.size() != a.rows())
        throw std::invalid_argument("solve: dimension mismatch between A and b");
    const std::size_t nc = a.cols();

    RatMatrix aug(a.rows(), nc + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < nc; ++c)
            aug.at(r, c) = a.at(r, c);
        aug.at(r, nc) = b[r];
    }
    IntMat m = to_integer_rows(aug);
    std::vector<std::size_t> pivot_cols;
    bareiss_echelon(m, pivot_cols);

    for (auto c : pivot_cols)
        if (c == nc)
            return std::nullopt;  // pivot in the b column: inconsistent

    SolveResult res;
    res.x.assign(nc, Rational());
    res.unique = pivot_cols.size() == nc;
    for (std::size_t ri = pivot_cols.size(); ri-- > 0;) {
        const std::size_t pc = pivot_cols[ri];
        Rational s = Rational(m[ri][nc]);
        for (std::size_t j = pc + 1; j < nc; ++j)
            if (sgn(m[ri][j]) != 0 && !res.x[j].is_zero())
                s -= Rational(m[ri][j]) * res.x[j];
        res.x[pc] = s / Rational(m[ri][pc]);
    }
    return res;
}

void SparseOperator::add(std::size_t row, std::size_t col, const Rational& v) {
    if (row >= codomain_ || col >= domain_)
        throw std::out_of_range("SparseOperator::add: index out of range");
    if (v.is_zero())
        return;
    triples_.push_back({row, col, v});
    finalized_ = false;
}

void SparseOperator::finalize() {
    std::sort(triples_.begin(), triples_.end(), [](const Triple& a, const Triple& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    std::vector<Triple> merged;
    merged.reserve(triples_.size());
    for (auto& t : triples_) {
        if (!merged.empty() && merged.back().row == t.row && merged.back().col == t.col)
            merged.back().value += t.value;
        else
            merged.push_back(std::move(t));
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const Triple& t) { return t.value.is_zero(); }),
                 merged.end());
    triples_ = std::move(merged);
    finalized_ = true;
}

std::vector<Rational> SparseOperator::apply(const std::vector<Rational>& x) const {
    if (x.size() != domain_)
        throw std::invalid_argument("SparseOperator::apply: dimension mismatch");
    std::vector<Rational> y(codomain_);
    for (const auto& t : triples_)
        if (!x[t.col].is_zero())
            y[t.row] += t.value * x[t.col];
    return y;
}

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), std::size_t{0});
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }
};

struct Component {
    std::vector<std::size_t> cols;  // ascending global column ids
    std::vector<std::size_t> rows;  // ascending global row ids
};

// Columns sharing a row belong to one block; a kernel vector decomposes
// along blocks, so each is solved independently.
std::vector<Component> column_components(const SparseOperator& op) {
    std::map<std::size_t, std::vector<std::size_t>> row_cols;
    for (const auto& t : op.triples())
        row_cols[t.row].push_back(t.col);

    UnionFind uf(op.domain_dim());
    for (auto& [row, cols] : row_cols)
        for (std::size_t i = 1; i < cols.size(); ++i)
            uf.unite(cols[0], cols[i]);

    std::map<std::size_t, Component> by_root;
    std::vector<bool> seen(op.domain_dim(), false);
    for (const auto& t : op.triples()) {
        if (!seen[t.col]) {
            seen[t.col] = true;
            by_root[uf.find(t.col)].cols.push_back(t.col);
        }
    }
    for (auto& [row, cols] : row_cols)
        by_root[uf.find(cols[0])].rows.push_back(row);

    std::vector<Component> comps;
    comps.reserve(by_root.size());
    for (auto& [root, comp] : by_root) {
        std::sort(comp.cols.begin(), comp.cols.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

IntMat integer_rows_of_component(const std::vector<const SparseOperator::Triple*>& triples,
                                 const Component& comp,
                                 const std::vector<std::size_t>& col_pos) {
    std::map<std::size_t, std::size_t> row_pos;
    for (std::size_t i = 0; i < comp.rows.size(); ++i)
        row_pos[comp.rows[i]] = i;

    RatMatrix sub(comp.rows.size(), comp.cols.size());
    for (const auto* t : triples)
        sub.at(row_pos.at(t->row), col_pos[t->col]) += t->value;
    return to_integer_rows(sub);
}

// ker(M^t M) = ker(M) over the rationals; squaring turns a tall sparse
// block into a small dense one.
IntMat gram(const IntMat& a) {
    const std::size_t nc = a.empty() ? 0 : a[0].size();
    IntMat g(nc, IntRow(nc));
    for (const auto& row : a) {
        std::vector<std::size_t> nz;
        for (std::size_t c = 0; c < nc; ++c)
            if (sgn(row[c]) != 0)
                nz.push_back(c);
        for (auto i : nz)
            for (auto j : nz)
                if (j >= i)
                    g[i][j] += row[i] * row[j];
    }
    for (std::size_t i = 0; i < nc; ++i)
        for (std::size_t j = 0; j < i; ++j)
            g[i][j] = g[j][i];
    return g;
}

std::vector<std::vector<Rational>> component_kernel(IntMat sub) {
    const std::size_t nr = sub.size();
    const std::size_t nc = nr ? sub[0].size() : 0;
    if (nr > 2 * nc && nc > 48)
        return nullspace_int(gram(sub));
    return nullspace_int(std::move(sub));
}

// Scales to integer entries with content 1; a kernel basis only matters
// up to column scaling and this keeps later arithmetic small.
void normalize_vector(SparseVec& v) {
    Int l = 1;
    for (const auto& [idx, val] : v)
        l = lcm(l, val.den());
    Int g = 0;
    for (auto& [idx, val] : v) {
        val *= Rational(l);
        g = gcd(g, val.num());
    }
    if (g > 1)
        for (auto& [idx, val] : v)
            val /= Rational(g);
}

}  // namespace

KernelBasis nullspace(const SparseOperator& op) {
    KernelBasis basis;
    basis.ambient_dim = op.domain_dim();

    std::vector<Component> comps = column_components(op);

    std::vector<bool> touched(op.domain_dim(), false);
    for (const auto& t : op.triples())
        touched[t.col] = true;

    std::vector<std::size_t> col_pos(op.domain_dim(), 0);
    std::vector<std::size_t> col_comp(op.domain_dim(), 0);
    for (std::size_t ci = 0; ci < comps.size(); ++ci)
        for (std::size_t i = 0; i < comps[ci].cols.size(); ++i) {
            col_pos[comps[ci].cols[i]] = i;
            col_comp[comps[ci].cols[i]] = ci;
        }
    std::vector<std::vector<const SparseOperator::Triple*>> comp_triples(comps.size());
    for (const auto& t : op.triples())
        comp_triples[col_comp[t.col]].push_back(&t);

    std::vector<std::vector<SparseVec>> per_comp(comps.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
        const Component& comp = comps[ci];
        IntMat sub = integer_rows_of_component(comp_triples[ci], comp, col_pos);
        auto local = component_kernel(std::move(sub));
        std::vector<SparseVec> out;
        out.reserve(local.size());
        for (const auto& x : local) {
            SparseVec v;
            for (std::size_t i = 0; i < x.size(); ++i)
                if (!x[i].is_zero())
                    v.emplace_back(comp.cols[i], x[i]);
            normalize_vector(v);
            out.push_back(std::move(v));
        }
        per_comp[ci] = std::move(out);
    }

    // Merge in component order, then append untouched columns (free).
    for (auto& vecs : per_comp)
        for (auto& v : vecs)
            basis.vectors.push_back(std::move(v));
    for (std::size_t c = 0; c < op.domain_dim(); ++c)
        if (!touched[c])
            basis.vectors.push_back({{c, Rational(1)}});

    std::sort(basis.vectors.begin(), basis.vectors.end(),
              [](const SparseVec& a, const SparseVec& b) { return a.front().first < b.front().first; });
    return basis;
}

std::size_t rank(const SparseOperator& op) {
    return op.domain_dim() - nullspace(op).dim();
}

SparseOperator restrict_to(const SparseOperator& op, const KernelBasis& basis) {
    if (basis.ambient_dim != op.domain_dim())
        throw std::invalid_argument("restrict_to: dimension mismatch");

    // Column view of op.
    std::vector<std::vector<std::pair<std::size_t, const Rational*>>> cols(op.domain_dim());
    for (const auto& t : op.triples())
        cols[t.col].emplace_back(t.row, &t.value);

    SparseOperator res(op.codomain_dim(), basis.dim());
    for (std::size_t j = 0; j < basis.dim(); ++j) {
        std::map<std::size_t, Rational> acc;
        for (const auto& [idx, val] : basis.vectors[j])
            for (const auto& [row, w] : cols[idx])
                acc[row] += *w * val;
        for (const auto& [row, v] : acc)
            if (!v.is_zero())
                res.add(row, j, v);
    }
    res.finalize();
    return res;
}

KernelBasis compose(const KernelBasis& outer, const KernelBasis& inner) {
    if (inner.ambient_dim != outer.dim())
        throw std::invalid_argument("compose: dimension mismatch");
    KernelBasis res;
    res.ambient_dim = outer.ambient_dim;
    for (const auto& w : inner.vectors) {
        std::map<std::size_t, Rational> acc;
        for (const auto& [j, c] : w)
            for (const auto& [idx, val] : outer.vectors[j])
                acc[idx] += c * val;
        SparseVec v;
        for (const auto& [idx, val] : acc)
            if (!val.is_zero())
                v.emplace_back(idx, val);
        normalize_vector(v);
        res.vectors.push_back(std::move(v));
    }
    return res;
}

SparseOperator vstack(const std::vector<const SparseOperator*>& ops) {
    if (ops.empty())
        return {};
    const std::size_t dom = ops.front()->domain_dim();
    std::size_t rows = 0;
    for (const auto* op : ops) {
        if (op->domain_dim() != dom)
            throw std::invalid_argument("vstack: domain mismatch");
        rows += op->codomain_dim();
    }
    SparseOperator res(rows, dom);
    std::size_t offset = 0;
    for (const auto* op : ops) {
        for (const auto& t : op->triples())
            res.add(offset + t.row, t.col, t.value);
        offset += op->codomain_dim();
    }
    res.finalize();
    return res;
}

KernelBasis joint_kernel_lazy(std::size_t count,
                              const std::function<SparseOperator(std::size_t)>& make,
                              std::size_t stacked_prefix) {
    KernelBasis basis;
    if (count == 0)
        return basis;

    std::size_t i = 0;
    if (stacked_prefix > 1) {
        std::vector<SparseOperator> head;
        std::vector<const SparseOperator*> ptrs;
        for (; i < std::min(stacked_prefix, count); ++i)
            head.push_back(make(i));
        for (const auto& op : head)
            ptrs.push_back(&op);
        basis = nullspace(vstack(ptrs));
    } else {
        SparseOperator op = make(i++);
        basis = nullspace(op);
    }
    for (; i < count && basis.dim() > 0; ++i) {
        SparseOperator op = make(i);
        SparseOperator m = restrict_to(op, basis);
        basis = compose(basis, nullspace(m));
    }
    return basis;
}

KernelBasis joint_kernel(const std::vector<SparseOperator>& ops, std::size_t stacked_prefix) {
    return joint_kernel_lazy(
        ops.size(), [&](std::size_t i) { return ops[i]; }, stacked_prefix);
}

RatMatrix to_dense(const SparseOperator& op) {
    RatMatrix m(op.codomain_dim(), op.domain_dim());
    for (const auto& t : op.triples())
        m.at(t.row, t.col) += t.value;
    return m;
}

}  // namespace skewform
