#include "skewform/diagrams.hpp"

#include <algorithm>
#include <stdexcept>

namespace skewform {

bool HookSequence::valid(std::size_t dim_v) const {
    const std::size_t min_entry = variant == HookVariant::minus ? 1 : 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (entries[i] < min_entry)
            return false;
        if (entries[i] >= dim_v)
            return false;
        if (i > 0 && entries[i] >= entries[i - 1])
            return false;
    }
    return true;
}

std::size_t HookSequence::degree() const {
    std::size_t deg = 0;
    for (auto a : entries)
        deg += variant == HookVariant::minus ? a : a + 1;
    return deg;
}

bool YoungDiagram::valid() const {
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i] == 0)
            return false;
        if (i > 0 && rows[i] > rows[i - 1])
            return false;
    }
    return true;
}

std::size_t YoungDiagram::boxes() const {
    std::size_t b = 0;
    for (auto r : rows)
        b += r;
    return b;
}

std::vector<std::size_t> YoungDiagram::columns() const {
    std::vector<std::size_t> cols(rows.empty() ? 0 : rows.front(), 0);
    for (auto r : rows)
        for (std::size_t c = 0; c < r; ++c)
            ++cols[c];
    return cols;
}

bool YoungDiagram::even_rows() const {
    for (auto r : rows)
        if (r % 2 != 0)
            return false;
    return true;
}

bool YoungDiagram::even_columns() const {
    for (auto c : columns())
        if (c % 2 != 0)
            return false;
    return true;
}

YoungDiagram nest_hooks(const HookSequence& seq) {
    // Frobenius coordinates: arm a_i in both variants, leg a_i - 1
    // (minus) or a_i + 1 (plus).
    const std::size_t r = seq.entries.size();
    for (std::size_t i = 0; i < r; ++i) {
        const bool ok = (i == 0 || seq.entries[i] < seq.entries[i - 1]) &&
                        (seq.variant == HookVariant::plus || seq.entries[i] > 0);
        if (!ok)
            throw std::invalid_argument("nest_hooks: malformed hook sequence");
    }
    YoungDiagram d;
    if (r == 0)
        return d;
    std::vector<std::size_t> arm(r), leg(r);
    for (std::size_t i = 0; i < r; ++i) {
        arm[i] = seq.entries[i];
        leg[i] = seq.variant == HookVariant::minus ? seq.entries[i] - 1 : seq.entries[i] + 1;
    }
    std::vector<std::size_t> col_len(r);
    for (std::size_t i = 0; i < r; ++i) {
        d.rows.push_back(arm[i] + i + 1);
        col_len[i] = leg[i] + i + 1;
    }
    for (std::size_t row = r + 1; row <= col_len[0]; ++row) {
        std::size_t len = 0;
        while (len < r && col_len[len] >= row)
            ++len;
        d.rows.push_back(len);
    }
    return d;
}

namespace {

std::vector<YoungDiagram> one_box_additions(const YoungDiagram& d, std::size_t bound) {
    std::vector<YoungDiagram> out;
    for (std::size_t i = 0; i <= d.rows.size(); ++i) {
        const std::size_t cur = i < d.rows.size() ? d.rows[i] : 0;
        if (cur + 1 > bound)
            continue;
        if (i > 0 && d.rows[i - 1] < cur + 1)
            continue;
        YoungDiagram e = d;
        if (i < e.rows.size())
            ++e.rows[i];
        else
            e.rows.push_back(1);
        out.push_back(std::move(e));
    }
    return out;
}

std::size_t odd_count(const std::vector<std::size_t>& lens) {
    std::size_t odd = 0;
    for (auto l : lens)
        if (l % 2 != 0)
            ++odd;
    return odd;
}

}  // namespace

std::vector<DiagramWithMult> pieri_add_boxes(const YoungDiagram& d, std::size_t count,
                                             std::size_t bound) {
    if (count != 1 && count != 2)
        throw std::invalid_argument("pieri_add_boxes: count must be 1 or 2");
    std::map<YoungDiagram, std::size_t> acc;
    if (count == 1) {
        for (auto& e : one_box_additions(d, bound))
            ++acc[e];
    } else {
        for (auto& mid : one_box_additions(d, bound))
            for (auto& e : one_box_additions(mid, bound))
                ++acc[e];
    }
    std::vector<DiagramWithMult> out;
    out.reserve(acc.size());
    for (auto& [diag, mult] : acc)
        out.push_back({diag, mult});
    return out;
}

HookVariant hook_variant(const Family& family) {
    switch (family.kind) {
        case FamilyKind::sympl_plus:
        case FamilyKind::orth_minus:
            return HookVariant::minus;  // exterior square of the defining space
        case FamilyKind::sympl_minus:
        case FamilyKind::orth_plus:
            return HookVariant::plus;  // symmetric square
        default:
            throw std::invalid_argument("hook_variant: no plethysm data for family " + family.name());
    }
}

bool invariant_admissible(const Family& family, const YoungDiagram& d) {
    if (family.is_symplectic())
        return d.even_rows();
    if (family.is_orthogonal())
        return d.even_columns();
    throw std::invalid_argument("invariant_admissible: unsupported family " + family.name());
}

void for_each_sequence(const Family& family, const std::function<void(const HookSequence&)>& fn) {
    const HookVariant variant = hook_variant(family);
    const std::size_t dim_v = family.m;
    const std::size_t min_entry = variant == HookVariant::minus ? 1 : 0;

    HookSequence seq;
    seq.variant = variant;
    // Descend through candidate entries; entries are strictly decreasing
    // and bounded by dim_v - 1.
    std::function<void(long)> rec = [&](long next_max) {
        fn(seq);
        for (long a = next_max; a >= static_cast<long>(min_entry); --a) {
            seq.entries.push_back(static_cast<std::size_t>(a));
            rec(a - 1);
            seq.entries.pop_back();
        }
    };
    rec(static_cast<long>(dim_v) - 1);
}

std::size_t invariant_count(const Family& family, std::size_t degree) {
    std::size_t count = 0;
    for_each_sequence(family, [&](const HookSequence& seq) {
        if (seq.degree() == degree && invariant_admissible(family, nest_hooks(seq)))
            ++count;
    });
    return count;
}

std::map<std::size_t, std::size_t> invariant_dims(const Family& family) {
    std::map<std::size_t, std::size_t> dims;
    for_each_sequence(family, [&](const HookSequence& seq) {
        if (invariant_admissible(family, nest_hooks(seq)))
            ++dims[seq.degree()];
    });
    return dims;
}

std::size_t invariant_total(const Family& family) {
    std::size_t total = 0;
    for (auto& [deg, c] : invariant_dims(family))
        total += c;
    return total;
}

std::map<std::size_t, std::size_t> covariant_dims(const Family& family) {
    const std::size_t bound = family.m;
    const bool symplectic = family.is_symplectic();
    std::map<std::size_t, std::size_t> dims;
    for_each_sequence(family, [&](const HookSequence& seq) {
        const YoungDiagram d = nest_hooks(seq);
        // Two boxes flip the parity of at most two lengths.
        const std::size_t odd = symplectic ? odd_count(d.rows) : odd_count(d.columns());
        if (odd > 2)
            return;
        std::size_t paths = 0;
        for (const auto& [target, mult] : pieri_add_boxes(d, 2, bound))
            if (invariant_admissible(family, target))
                paths += mult;
        if (paths > 0)
            dims[seq.degree()] += paths;
    });
    return dims;
}

std::size_t covariant_count(const Family& family) {
    std::size_t total = 0;
    for (auto& [deg, c] : covariant_dims(family))
        total += c;
    return total;
}

std::size_t closed_form(const Family& family, CountKind kind) {
    const std::size_t n = family.half();
    const std::size_t p2n = std::size_t{1} << n;
    switch (family.kind) {
        case FamilyKind::sympl_plus:
            return kind == CountKind::invariants ? p2n : (2 * n - 1) * p2n;
        case FamilyKind::sympl_minus:
            return kind == CountKind::invariants ? p2n : (2 * n) * p2n;
        case FamilyKind::orth_minus:
            return kind == CountKind::invariants ? p2n : n * 2 * p2n;
        case FamilyKind::orth_plus:
            return kind == CountKind::invariants ? 2 * p2n : (2 * n + 1) * 2 * p2n;
        default:
            throw std::invalid_argument("closed_form: unknown family " + family.name());
    }
}

}  // namespace skewform
