#include "skewform/altform.hpp"

#include <algorithm>
#include <bit>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace skewform {

namespace {

// Below this many coefficient products the serial path wins.
constexpr std::size_t kParallelThreshold = 1u << 13;

void require_same_space(const AltForm& a, const AltForm& b, const char* what) {
    if (!a.space() || !b.space() || a.space()->label != b.space()->label)
        throw std::invalid_argument(std::string(what) + ": mismatched spaces");
}

}  // namespace

void AltForm::accumulate(Mask key, const RatMatrix& coeff) {
    if (std::popcount(key) != static_cast<int>(degree_))
        throw std::invalid_argument("AltForm::accumulate: key has wrong cardinality");
    if (coeff.rows() != vrows_ || coeff.cols() != vcols_)
        throw std::invalid_argument("AltForm::accumulate: coefficient shape mismatch");
    auto it = table_.find(key);
    if (it == table_.end()) {
        if (!coeff.is_zero())
            table_.emplace(key, coeff);
        return;
    }
    it->second += coeff;
    if (it->second.is_zero())
        table_.erase(it);
}

const RatMatrix* AltForm::coeff(Mask key) const {
    auto it = table_.find(key);
    return it == table_.end() ? nullptr : &it->second;
}

void AltForm::adopt_table(Table&& table) {
    for (auto it = table.begin(); it != table.end();) {
        if (it->second.is_zero()) {
            it = table.erase(it);
            continue;
        }
        if (std::popcount(it->first) != static_cast<int>(degree_) ||
            it->second.rows() != vrows_ || it->second.cols() != vcols_)
            throw std::invalid_argument("adopt_table: entry shape mismatch");
        ++it;
    }
    table_ = std::move(table);
}

int shuffle_sign(AltForm::Mask s1, AltForm::Mask s2) {
    int inversions = 0;
    AltForm::Mask rest = s1;
    while (rest) {
        const int a = std::countr_zero(rest);
        rest &= rest - 1;
        inversions += std::popcount(s2 & ((AltForm::Mask{1} << a) - 1));
    }
    return (inversions & 1) ? -1 : 1;
}

std::vector<AltForm::Mask> subset_masks(std::size_t d, std::size_t k) {
    std::vector<AltForm::Mask> out;
    if (k > d)
        return out;
    if (k == 0)
        return {0};
    AltForm::Mask m = (AltForm::Mask{1} << k) - 1;
    const AltForm::Mask limit = AltForm::Mask{1} << d;
    while (m < limit) {
        out.push_back(m);
        // Gosper's hack: next mask with the same popcount.
        AltForm::Mask c = m & -m;
        AltForm::Mask r = m + c;
        if (r == 0)
            break;
        m = (((r ^ m) >> 2) / c) | r;
    }
    return out;
}

std::vector<std::size_t> mask_indices(AltForm::Mask m) {
    std::vector<std::size_t> idx;
    while (m) {
        idx.push_back(static_cast<std::size_t>(std::countr_zero(m)));
        m &= m - 1;
    }
    return idx;
}

AltForm generic_element(const SpacePtr& space) {
    AltForm x(space, 1, space->basis.front().rows(), space->basis.front().cols());
    for (std::size_t i = 0; i < space->dim(); ++i)
        x.accumulate(AltForm::Mask{1} << i, space->basis[i]);
    return x;
}

namespace {

std::pair<std::size_t, std::size_t> wedge_value_shape(const AltForm& g, const AltForm& h) {
    if (g.scalar_valued())
        return {h.value_rows(), h.value_cols()};
    if (h.scalar_valued())
        return {g.value_rows(), g.value_cols()};
    if (g.value_cols() != h.value_rows())
        throw std::invalid_argument("wedge: coefficient shapes do not compose");
    return {g.value_rows(), h.value_cols()};
}

using Entry = std::pair<AltForm::Mask, const RatMatrix*>;

void accumulate_pair(AltForm::Table& acc, AltForm::Mask s1, const RatMatrix& c1,
                     AltForm::Mask s2, const RatMatrix& c2, std::size_t vr, std::size_t vc) {
    auto [it, inserted] = acc.try_emplace(s1 | s2, vr, vc);
    addmul_product(it->second, c1, c2, shuffle_sign(s1, s2) < 0);
}

AltForm wedge_impl(const AltForm& g, const AltForm& h, bool parallel) {
    require_same_space(g, h, "wedge");
    const auto [vr, vc] = wedge_value_shape(g, h);
    AltForm out(g.space(), g.degree() + h.degree(), vr, vc);
    if (out.degree() > g.space()->dim())
        return out;  // above the top degree everything is zero

    std::vector<Entry> gs, hs;
    gs.reserve(g.table().size());
    hs.reserve(h.table().size());
    for (const auto& [m, c] : g.table())
        gs.emplace_back(m, &c);
    for (const auto& [m, c] : h.table())
        hs.emplace_back(m, &c);

    AltForm::Table acc;
#ifdef _OPENMP
    if (parallel && omp_get_max_threads() > 1 &&
        gs.size() * hs.size() >= kParallelThreshold) {
        // Every thread scans all pairs but owns a disjoint slice of the
        // target keys, so each coefficient product is computed exactly
        // once and no cross-thread merge of shared keys is needed. The
        // result is the serial table: key sets are disjoint and
        // rational accumulation is exact.
        const int nt = omp_get_max_threads();
        std::vector<AltForm::Table> local(nt);
#pragma omp parallel num_threads(nt)
        {
            const unsigned t = static_cast<unsigned>(omp_get_thread_num());
            AltForm::Table& mine = local[t];
            for (const auto& [s1, c1] : gs)
                for (const auto& [s2, c2] : hs) {
                    if (s1 & s2)
                        continue;
                    const AltForm::Mask key = s1 | s2;
                    if ((key * 0x9E3779B9u >> 16) % nt != t)
                        continue;
                    accumulate_pair(mine, s1, *c1, s2, *c2, vr, vc);
                }
        }
        for (auto& tab : local)
            acc.merge(tab);
    } else
#endif
    {
        (void)parallel;
        for (const auto& [s1, c1] : gs)
            for (const auto& [s2, c2] : hs) {
                if (s1 & s2)
                    continue;
                accumulate_pair(acc, s1, *c1, s2, *c2, vr, vc);
            }
    }

    out.adopt_table(std::move(acc));
    return out;
}

}  // namespace

AltForm wedge_serial(const AltForm& g, const AltForm& h) {
    return wedge_impl(g, h, false);
}

AltForm wedge(const AltForm& g, const AltForm& h) {
    return wedge_impl(g, h, true);
}

AltForm add(const AltForm& a, const AltForm& b) {
    require_same_space(a, b, "add");
    if (!a.same_shape(b))
        throw std::invalid_argument("add: shape mismatch");
    AltForm out = a;
    for (const auto& [mask, coeff] : b.table())
        out.accumulate(mask, coeff);
    return out;
}

AltForm scalar_multiply(const Rational& s, const AltForm& a) {
    AltForm out(a.space(), a.degree(), a.value_rows(), a.value_cols());
    if (s.is_zero())
        return out;
    for (const auto& [mask, coeff] : a.table())
        out.accumulate(mask, s * coeff);
    return out;
}

AltForm trace_form(const AltForm& f) {
    if (f.scalar_valued())
        throw std::invalid_argument("trace_form: scalar input");
    if (f.value_rows() != f.value_cols())
        throw std::invalid_argument("trace_form: coefficients not square");
    AltForm out(f.space(), f.degree(), 1, 1);
    for (const auto& [mask, coeff] : f.table()) {
        Rational t = coeff.trace();
        if (!t.is_zero())
            out.accumulate(mask, RatMatrix::scalar1x1(t));
    }
    return out;
}

RatMatrix evaluate(const AltForm& f, const EvalTuple& tuple) {
    const std::size_t k = f.degree();
    if (tuple.vectors.size() != k)
        throw std::invalid_argument("evaluate: tuple length != degree");
    const std::size_t d = f.space()->dim();
    for (const auto& v : tuple.vectors)
        if (v.size() != d)
            throw std::invalid_argument("evaluate: coordinate vector has wrong length");

    RatMatrix out(f.value_rows(), f.value_cols());
    for (const auto& [mask, coeff] : f.table()) {
        const auto rows = mask_indices(mask);
        // minor[r][j] = coordinate of argument j on basis element rows[r]
        RatMatrix minor(k, k);
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t j = 0; j < k; ++j)
                minor.at(r, j) = tuple.vectors[j][rows[r]];
        // determinant via cofactor-free elimination on a small block
        Rational det = 1;
        {
            RatMatrix m = minor;
            bool singular = false;
            for (std::size_t c = 0; c < k && !singular; ++c) {
                std::size_t p = c;
                while (p < k && m.at(p, c).is_zero())
                    ++p;
                if (p == k) {
                    singular = true;
                    break;
                }
                if (p != c) {
                    for (std::size_t j = c; j < k; ++j)
                        std::swap(m.at(p, j), m.at(c, j));
                    det = -det;
                }
                det *= m.at(c, c);
                for (std::size_t i = c + 1; i < k; ++i) {
                    if (m.at(i, c).is_zero())
                        continue;
                    Rational factor = m.at(i, c) / m.at(c, c);
                    for (std::size_t j = c; j < k; ++j)
                        m.at(i, j) -= factor * m.at(c, j);
                }
            }
            if (singular)
                continue;
        }
        out += det * coeff;
    }
    return out;
}

std::vector<Rational> coefficient_vector(const AltForm& f) {
    const std::size_t d = f.space()->dim();
    const std::size_t block = f.value_rows() * f.value_cols();
    std::vector<Rational> out;
    for (AltForm::Mask mask : subset_masks(d, f.degree())) {
        const RatMatrix* c = f.coeff(mask);
        if (c == nullptr) {
            out.insert(out.end(), block, Rational());
        } else {
            out.insert(out.end(), c->entries().begin(), c->entries().end());
        }
    }
    return out;
}

std::size_t PowerCache::estimate_entries(const MatrixSpaceSpec& space, std::size_t k) {
    const std::size_t d = space.dim();
    const std::size_t m2 = space.ambient * space.ambient;
    std::size_t total = 0;
    double binom = 1.0;
    for (std::size_t j = 0; j <= std::min(k, d); ++j) {
        if (j > 0)
            binom = binom * static_cast<double>(d - j + 1) / static_cast<double>(j);
        double add = binom * static_cast<double>(m2);
        if (add > 1e18 || total > static_cast<std::size_t>(1e18))
            return static_cast<std::size_t>(1e18);
        total += static_cast<std::size_t>(add);
    }
    return total;
}

const AltForm& PowerCache::power(std::size_t k) {
    std::lock_guard<std::mutex> lock(mu_);
    if (powers_.empty()) {
        AltForm one(space_, 0, space_->ambient, space_->ambient);
        one.accumulate(0, RatMatrix::identity(space_->ambient));
        powers_.push_back(std::move(one));
    }
    if (k < powers_.size())
        return powers_[k];
    if (estimate_entries(*space_, k) > budget_)
        throw BudgetExceeded("power: estimated table size for " + space_->label + " at degree " +
                             std::to_string(k) + " exceeds the entry budget");
    const AltForm x = generic_element(space_);
    while (powers_.size() <= k)
        powers_.push_back(wedge(powers_.back(), x));
    return powers_[k];
}

}  // namespace skewform
